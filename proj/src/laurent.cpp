#include "qcb/laurent.hpp"

#include <sstream>
#include <vector>

namespace qcb {

Laurent Laurent::monomial(const Int& c, int exp) {
    Laurent p;
    if (c != 0) p.coeffs_[exp] = c;
    return p;
}

bool Laurent::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
}

Int Laurent::coeff(int exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Int(0) : it->second;
}

int Laurent::min_exp() const {
    if (is_zero()) throw std::logic_error("min_exp of zero polynomial");
    return coeffs_.begin()->first;
}

int Laurent::max_exp() const {
    if (is_zero()) throw std::logic_error("max_exp of zero polynomial");
    return coeffs_.rbegin()->first;
}

const Int& Laurent::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.rbegin()->second;
}

void Laurent::add_term(int exp, const Int& c) {
    if (c == 0) return;
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) {
        coeffs_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_)
            r.add_term(ea + eb, ca * cb);
    return r;
}

Laurent& Laurent::operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
}

Laurent Laurent::operator-() const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

Laurent Laurent::bar() const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
}

Laurent Laurent::shifted(int k) const {
    Laurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
    return r;
}

Int Laurent::at_sign(int point) const {
    if (point != 1 && point != -1) throw std::invalid_argument("specialization point must be +1 or -1");
    Int s = 0;
    for (const auto& [e, c] : coeffs_) {
        if (point == 1 || e % 2 == 0)
            s += c;
        else
            s -= c;
    }
    return s;
}

Int Laurent::content() const {
    Int g = 0;
    for (const auto& [e, c] : coeffs_) {
        (void)e;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

std::string Laurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "v";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::optional<Laurent> exact_divide(const Laurent& num, const Laurent& den) {
    if (den.is_zero()) return std::nullopt;
    if (num.is_zero()) return Laurent();
    // Long division from the top; every quotient coefficient must be integral.
    Laurent rem = num;
    Laurent quot;
    const int dmax = den.max_exp();
    const Int& dlead = den.leading();
    while (!rem.is_zero() && rem.max_exp() - rem.min_exp() >= dmax - den.min_exp()) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading().get_mpz_t(), dlead.get_mpz_t());
        if (r != 0) return std::nullopt;
        Laurent term = Laurent::monomial(q, rem.max_exp() - dmax);
        quot += term;
        rem -= term * den;
        if (!rem.is_zero() && rem.max_exp() > num.max_exp()) return std::nullopt;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot;
}

namespace {

// Dense coefficient vector of p * v^{-min_exp}: index 0 is the constant term.
std::vector<Int> dense_poly(const Laurent& p) {
    std::vector<Int> c(p.max_exp() - p.min_exp() + 1, Int(0));
    for (const auto& [e, v] : p.coeffs()) c[e - p.min_exp()] = v;
    return c;
}

Laurent from_dense(const std::vector<Int>& c) {
    Laurent p;
    for (size_t i = 0; i < c.size(); ++i) p += Laurent::monomial(c[i], (int)i);
    return p;
}

Int vec_content(const std::vector<Int>& c) {
    Int g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

void make_primitive(std::vector<Int>& c) {
    if (c.empty()) return;
    Int g = vec_content(c);
    if (g == 0) { c.clear(); return; }
    if (c.back() < 0) g = -g;
    for (auto& x : c) x /= g;
}

int deg(const std::vector<Int>& c) { return (int)c.size() - 1; }

void trim(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Iterated pseudo-remainder of a by b (b nonzero), with minimal cross-scaling
// and per-step content stripping to keep coefficients small.  Only the gcd up
// to units is needed by the caller, so the scaling is harmless.
std::vector<Int> pseudo_rem(std::vector<Int> a, const std::vector<Int>& b) {
    const Int& lb = b.back();
    for (;;) {
        trim(a);
        if (a.empty() || deg(a) < deg(b)) break;
        Int g;
        mpz_gcd(g.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
        const Int ma = lb / g, mb = a.back() / g;
        const int shift = deg(a) - deg(b);
        if (ma != 1)
            for (auto& x : a) x *= ma;
        for (int j = 0; j < (int)b.size(); ++j) a[j + shift] -= mb * b[j];
        trim(a);
        make_primitive(a);
    }
    return a;
}

}  // namespace

constexpr unsigned long kGcdPrimes[] = {
    2147483629UL, 2147483587UL, 2147483579UL, 2147483563UL, 2147483549UL,
    2147483543UL, 2147483497UL, 2147483489UL, 2147483477UL, 2147483423UL,
    2147483399UL, 2147483353UL, 2147483323UL, 2147483269UL, 2147483249UL,
    2147483237UL, 2147483179UL, 2147483171UL, 2147483137UL, 2147483123UL,
};

unsigned long fp_inv(unsigned long a, unsigned long p) {
    unsigned long r = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) r = (unsigned long)(((__uint128_t)r * base) % p);
        base = (unsigned long)(((__uint128_t)base * base) % p);
        e >>= 1;
    }
    return r;
}

std::vector<unsigned long> fp_image(const std::vector<Int>& v, unsigned long p) {
    std::vector<unsigned long> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = mpz_fdiv_ui(v[i].get_mpz_t(), p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Monic gcd in F_p[x]; inputs nonzero.
std::vector<unsigned long> fp_gcd(std::vector<unsigned long> a, std::vector<unsigned long> b,
                                  unsigned long p) {
    while (!b.empty()) {
        unsigned long inv = fp_inv(b.back(), p);
        while (a.size() >= b.size()) {
            unsigned long f = (unsigned long)(((__uint128_t)a.back() * inv) % p);
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                __uint128_t sub = (__uint128_t)f * b[j] % p;
                a[j + shift] = (a[j + shift] + p - (unsigned long)sub) % p;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    unsigned long inv = fp_inv(a.back(), p);
    for (auto& c : a) c = (unsigned long)(((__uint128_t)c * inv) % p);
    return a;
}

// Modular gcd of primitive polynomials with CRT lifting and trial division;
// nullopt when the prime table is exhausted (caller falls back to the PRS).
std::optional<std::vector<Int>> modular_poly_gcd(const std::vector<Int>& x,
                                                 const std::vector<Int>& y) {
    Int gamma;
    mpz_gcd(gamma.get_mpz_t(), x.back().get_mpz_t(), y.back().get_mpz_t());
    Int modulus = 0;
    std::vector<Int> acc;
    size_t dmin = SIZE_MAX;
    for (unsigned long p : kGcdPrimes) {
        if (mpz_fdiv_ui(x.back().get_mpz_t(), p) == 0) continue;
        if (mpz_fdiv_ui(y.back().get_mpz_t(), p) == 0) continue;
        auto gp = fp_gcd(fp_image(x, p), fp_image(y, p), p);
        if (gp.size() == 1) return std::vector<Int>{Int(1)};  // coprime primitive parts
        if (gp.size() > dmin) continue;  // unlucky prime
        unsigned long gq = mpz_fdiv_ui(gamma.get_mpz_t(), p);
        for (auto& c : gp) c = (unsigned long)(((__uint128_t)c * gq) % p);
        if (gp.size() < dmin) {
            dmin = gp.size();
            acc.assign(gp.size(), Int(0));
            for (size_t i = 0; i < gp.size(); ++i) acc[i] = gp[i];
            modulus = p;
        } else {
            Int next_mod = modulus * (unsigned long)p;
            unsigned long minv = fp_inv(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
            for (size_t i = 0; i < acc.size(); ++i) {
                unsigned long ai = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
                unsigned long diff = (gp[i] + p - ai) % p;
                unsigned long t = (unsigned long)(((__uint128_t)diff * minv) % p);
                acc[i] += modulus * t;
                acc[i] %= next_mod;
            }
            modulus = next_mod;
        }
        // Symmetric lift and primitive part.
        std::vector<Int> cand(acc.size());
        Int half = modulus / 2;
        for (size_t i = 0; i < acc.size(); ++i) {
            cand[i] = acc[i] % modulus;
            if (cand[i] < 0) cand[i] += modulus;
            if (cand[i] > half) cand[i] -= modulus;
        }
        while (!cand.empty() && cand.back() == 0) cand.pop_back();
        if (cand.empty()) continue;
        make_primitive(cand);
        // Trial division certifies the candidate.
        Laurent cl = from_dense(cand);
        if (exact_divide(from_dense(x), cl) && exact_divide(from_dense(y), cl)) return cand;
    }
    return std::nullopt;
}

// Degree-0 certificate for the polynomial part of the gcd: gcd degree can
// only drop modulo a prime that does not divide either leading coefficient,
// so a constant gcd mod p proves the Z[v] gcd is a constant.
bool constant_gcd_mod_p(const std::vector<Int>& x, const std::vector<Int>& y) {
    for (unsigned long p : {2147483629UL, 2147483587UL, 2147483579UL}) {
        if (mpz_fdiv_ui(x.back().get_mpz_t(), p) == 0) continue;
        if (mpz_fdiv_ui(y.back().get_mpz_t(), p) == 0) continue;
        auto red = [p](const std::vector<Int>& v) {
            std::vector<unsigned long> r(v.size());
            for (size_t i = 0; i < v.size(); ++i) {
                unsigned long m = mpz_fdiv_ui(v[i].get_mpz_t(), p);
                r[i] = m;
            }
            while (!r.empty() && r.back() == 0) r.pop_back();
            return r;
        };
        std::vector<unsigned long> a = red(x), b = red(y);
        while (!b.empty()) {
            // a mod b in F_p
            unsigned long inv = 1, base = b.back(), e = p - 2;
            while (e) {  // modular inverse by binary powering
                if (e & 1) inv = (unsigned long)(((__uint128_t)inv * base) % p);
                base = (unsigned long)(((__uint128_t)base * base) % p);
                e >>= 1;
            }
            while (a.size() >= b.size()) {
                unsigned long f = (unsigned long)(((__uint128_t)a.back() * inv) % p);
                size_t shift = a.size() - b.size();
                for (size_t j = 0; j < b.size(); ++j) {
                    __uint128_t sub = (__uint128_t)f * b[j] % p;
                    a[j + shift] = (a[j + shift] + p - (unsigned long)sub) % p;
                }
                while (!a.empty() && a.back() == 0) a.pop_back();
                if (a.empty()) break;
            }
            std::swap(a, b);
        }
        return a.size() <= 1;  // nonzero constant (a cannot be empty: gcd != 0)
    }
    return false;  // all primes divided a leading coefficient; fall back
}

Laurent laurent_poly_gcd(const Laurent& a, const Laurent& b) {
    if (a.is_zero() && b.is_zero()) return Laurent();
    auto abs_normalized = [](const Laurent& p) {
        auto c = dense_poly(p);
        if (!c.empty() && c.back() < 0)
            for (auto& x : c) x = -x;
        return from_dense(c);
    };
    if (a.is_zero()) return abs_normalized(b);
    if (b.is_zero()) return abs_normalized(a);
    Int c;
    mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    std::vector<Int> x = dense_poly(a), y = dense_poly(b);
    if (constant_gcd_mod_p(x, y)) return Laurent(c);
    make_primitive(x);
    make_primitive(y);
    if (deg(x) >= 12 && deg(y) >= 12) {
        if (auto g = modular_poly_gcd(x, y)) return from_dense(*g) * Laurent(c);
    }
    if (deg(x) < deg(y)) std::swap(x, y);
    while (!y.empty()) {
        std::vector<Int> r = pseudo_rem(x, y);
        x = std::move(y);
        y = std::move(r);
        if (!y.empty()) make_primitive(y);
    }
    make_primitive(x);
    // gcd in Z[v] carries the gcd of the integer contents.
    return from_dense(x) * Laurent(c);
}

Laurent quantum_integer_signed(long n) {
    if (n < 0) return -quantum_integer_signed(-n);
    Laurent p;
    for (long e = n - 1; e >= 1 - n; e -= 2) p += Laurent::v((int)e);
    return p;
}

Laurent quantum_integer(int n) {
    if (n < 0) throw std::invalid_argument("quantum integer [n] requires n >= 0");
    return quantum_integer_signed(n);
}

Laurent quantum_factorial(int n) {
    if (n < 0) throw std::invalid_argument("quantum factorial [n]! requires n >= 0");
    Laurent p(1);
    for (int s = 2; s <= n; ++s) p *= quantum_integer(s);
    return p;
}

Laurent quantum_binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("quantum binomial requires 0 <= k <= n");
    auto q = exact_divide(quantum_factorial(n), quantum_factorial(k) * quantum_factorial(n - k));
    if (!q) throw std::logic_error("quantum binomial: exact division failed");
    return *q;
}

Laurent symmetric_correction(const Laurent& p) {
    Laurent q;
    for (const auto& [e, c] : p.coeffs()) {
        if (e == 0)
            q += Laurent::monomial(c, 0);
        else if (e < 0)
            q += Laurent::monomial(c, e) + Laurent::monomial(c, -e);
    }
    return q;
}

Int specialize(const Laurent& p, int point) { return p.at_sign(point); }

}  // namespace qcb
