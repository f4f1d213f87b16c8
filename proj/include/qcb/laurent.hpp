#pragma once

#include <gmpxx.h>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace qcb {

using Int = mpz_class;
using Rat = mpq_class;

/// Integer Laurent polynomial in v, stored sparsely as exponent -> coefficient.
/// Canonical form: no zero coefficients are ever stored, so equality is
/// syntactic equality of the maps.
class Laurent {
public:
    Laurent() = default;
    Laurent(long c) { if (c != 0) coeffs_[0] = c; }
    Laurent(const Int& c) { if (c != 0) coeffs_[0] = c; }

    static Laurent monomial(const Int& c, int exp);
    /// v^exp
    static Laurent v(int exp = 1) { return monomial(1, exp); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    const std::map<int, Int>& coeffs() const { return coeffs_; }
    Int coeff(int exp) const;
    int min_exp() const;   // lowest exponent; requires nonzero
    int max_exp() const;   // highest exponent; requires nonzero
    /// Leading coefficient (at max_exp); requires nonzero.
    const Int& leading() const;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    Laurent operator-() const;

    friend Laurent operator+(Laurent a, const Laurent& b) { a += b; return a; }
    friend Laurent operator-(Laurent a, const Laurent& b) { a -= b; return a; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
    friend bool operator<(const Laurent& a, const Laurent& b) { return a.coeffs_ < b.coeffs_; }

    /// The bar involution v -> v^{-1} (negates every exponent).
    Laurent bar() const;
    /// Multiply by v^k.
    Laurent shifted(int k) const;
    /// Exact evaluation at v = +1 or v = -1.
    Int at_sign(int point) const;
    /// gcd of all integer coefficients (positive); 0 for the zero polynomial.
    Int content() const;

    std::string str() const;

private:
    std::map<int, Int> coeffs_;
    void add_term(int exp, const Int& c);
};

/// Exact division in Z[v, v^{-1}]; nullopt when the quotient does not exist
/// with integer coefficients or the remainder is nonzero.
std::optional<Laurent> exact_divide(const Laurent& num, const Laurent& den);

/// gcd in Z[v] up to units, applied after clearing v-powers: the result is a
/// primitive polynomial with positive leading coefficient and min_exp 0.
/// gcd(0, b) = normalized b.
Laurent laurent_poly_gcd(const Laurent& a, const Laurent& b);

/// [n] = (v^n - v^{-n})/(v - v^{-1}) for any integer n ([-n] = -[n]).
Laurent quantum_integer_signed(long n);
/// [n] with the domain check n >= 0 of the public combinatorics entry point.
Laurent quantum_integer(int n);
/// [n]!
Laurent quantum_factorial(int n);
/// Gaussian binomial [n choose k]; exact-division failure is a logic error.
Laurent quantum_binomial(int n, int k);

/// The unique bar-symmetric q with p - q in vZ[v]:
/// q = a_0 + sum_{k>0} a_{-k} (v^k + v^{-k}) where a_j are coefficients of p.
Laurent symmetric_correction(const Laurent& p);

/// Evaluation homomorphism at v = point, point in {+1, -1}.
Int specialize(const Laurent& p, int point);

}  // namespace qcb
