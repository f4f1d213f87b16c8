#pragma once

#include "qcb/laurent.hpp"

#include <vector>

namespace qcb {

/// Rational function in v as a quotient of integer Laurent polynomials.
/// Canonical form: denominator has min_exp 0, positive leading coefficient,
/// the polynomial parts are coprime in Z[v] after clearing v-powers, and the
/// integer contents of numerator and denominator are coprime.  Equality is
/// syntactic on (num, den).
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(long c) : num_(c), den_(1) {}
    RatFun(const Int& c) : num_(c), den_(1) {}
    RatFun(const Rat& q);
    RatFun(Laurent num) : num_(std::move(num)), den_(1) {}
    RatFun(Laurent num, Laurent den);

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);
    RatFun operator-() const;

    friend RatFun operator+(RatFun a, const RatFun& b) { a += b; return a; }
    friend RatFun operator-(RatFun a, const RatFun& b) { a -= b; return a; }
    friend RatFun operator*(RatFun a, const RatFun& b) { a *= b; return a; }
    friend RatFun operator/(RatFun a, const RatFun& b) { a /= b; return a; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun bar() const { return RatFun(num_.bar(), den_.bar()); }
    RatFun inverse() const;

    /// nullopt unless the denominator is 1.
    std::optional<Laurent> as_laurent() const;
    /// v-adic valuation at v = 0 (min_exp(num) - min_exp(den)); requires nonzero.
    int valuation() const;
    /// Value at v = 0; requires valuation() >= 0 (returns 0 when > 0).
    Rat value_at_zero() const;
    /// Exact value at v = +1/-1; throws if the denominator vanishes there.
    Rat at_sign(int point) const;
    /// Coefficients of the Laurent expansion at v = 0 for exponents lo..hi.
    std::vector<Rat> series_at_zero(int lo, int hi) const;

    std::string str() const;

private:
    struct reduced_tag {};
    RatFun(reduced_tag, Laurent num, Laurent den);
    Laurent num_, den_;
    void normalize();
};

}  // namespace qcb
