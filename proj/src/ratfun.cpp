#include "qcb/ratfun.hpp"

#include <sstream>

namespace qcb {

RatFun::RatFun(const Rat& q)
    : num_(Int(q.get_num())), den_(Int(q.get_den())) {
    normalize();
}

RatFun::RatFun(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFun: zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Laurent(1);
        return;
    }
    // Denominator carries no v-power (v is a unit, so shift it into the numerator).
    int m = den_.min_exp();
    num_ = num_.shifted(-m);
    den_ = den_.shifted(-m);
    // Coordinates of module vectors usually reduce to Laurent polynomials;
    // a direct division attempt is far cheaper than the general gcd.
    if (!den_.is_one()) {
        if (auto q = exact_divide(num_, den_)) {
            num_ = std::move(*q);
            den_ = Laurent(1);
            return;
        }
    }
    // Cancel the polynomial gcd (the numerator keeps its own v-power).
    Laurent g = laurent_poly_gcd(num_, den_);
    if (!g.is_one()) {
        auto qn = exact_divide(num_.shifted(-num_.min_exp()), g);
        auto qd = exact_divide(den_, g);
        if (!qn || !qd) throw std::logic_error("RatFun: gcd does not divide");
        num_ = qn->shifted(num_.min_exp());
        den_ = *qd;
        den_ = den_.shifted(-den_.min_exp());
    }
    // Cancel the shared integer content.
    Int c;
    mpz_gcd(c.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
    if (c > 1) {
        num_ = *exact_divide(num_, Laurent(c));
        den_ = *exact_divide(den_, Laurent(c));
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

// Operands are already canonical, so the fraction assembled from cross-reduced
// parts is reduced and only the v-power/sign conventions need fixing.
RatFun::RatFun(reduced_tag, Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) {
        den_ = Laurent(1);
        return;
    }
    int m = den_.min_exp();
    if (m != 0) {
        num_ = num_.shifted(-m);
        den_ = den_.shifted(-m);
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

namespace {

Laurent divide_out(const Laurent& a, const Laurent& g) {
    if (g.is_one()) return a;
    auto q = exact_divide(a, g);
    if (!q) throw std::logic_error("RatFun: gcd does not divide");
    return *q;
}

}  // namespace

RatFun& RatFun::operator+=(const RatFun& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { *this = o; return *this; }
    Laurent g = laurent_poly_gcd(den_, o.den_);
    if (g.is_one()) {
        *this = RatFun(reduced_tag{}, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        return *this;
    }
    Laurent b1 = divide_out(den_, g), d1 = divide_out(o.den_, g);
    Laurent t = num_ * d1 + o.num_ * b1;
    Laurent h = laurent_poly_gcd(t, g);
    *this = RatFun(reduced_tag{}, divide_out(t, h), b1 * d1 * divide_out(g, h));
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) {
    *this += -o;
    return *this;
}

RatFun& RatFun::operator*=(const RatFun& o) {
    if (is_zero() || o.is_zero()) { *this = RatFun(); return *this; }
    Laurent g1 = laurent_poly_gcd(num_, o.den_);
    Laurent g2 = laurent_poly_gcd(o.num_, den_);
    *this = RatFun(reduced_tag{}, divide_out(num_, g1) * divide_out(o.num_, g2),
                   divide_out(den_, g2) * divide_out(o.den_, g1));
    return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) {
    *this *= o.inverse();
    return *this;
}

RatFun RatFun::operator-() const {
    RatFun r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::invalid_argument("RatFun: inverse of zero");
    return RatFun(reduced_tag{}, den_, num_);
}

std::optional<Laurent> RatFun::as_laurent() const {
    if (den_.is_one()) return num_;
    return std::nullopt;
}

int RatFun::valuation() const {
    if (is_zero()) throw std::logic_error("valuation of zero");
    return num_.min_exp() - den_.min_exp();
}

Rat RatFun::value_at_zero() const {
    if (is_zero()) return Rat(0);
    int val = valuation();
    if (val < 0) throw std::logic_error("value_at_zero: pole at v = 0");
    if (val > 0) return Rat(0);
    Rat r(num_.coeff(num_.min_exp()), den_.coeff(den_.min_exp()));
    r.canonicalize();
    return r;
}

Rat RatFun::at_sign(int point) const {
    Int d = den_.at_sign(point);
    if (d == 0) throw std::logic_error("at_sign: denominator vanishes at the point");
    Rat r(num_.at_sign(point), d);
    r.canonicalize();
    return r;
}

std::vector<Rat> RatFun::series_at_zero(int lo, int hi) const {
    std::vector<Rat> out(hi - lo + 1, Rat(0));
    if (is_zero()) return out;
    // num/den = v^val * N/D with N(0), D(0) nonzero; expand N/D as a power
    // series by recursive division.
    int val = valuation();
    Laurent n = num_.shifted(-num_.min_exp());
    Laurent d = den_;  // min_exp 0 by canonical form
    Rat d0(d.coeff(0));
    std::vector<Rat> series;  // coefficients of (N/D)(v), index = power
    int need = hi - val;
    if (need < 0) return out;
    series.resize(need + 1, Rat(0));
    std::vector<Rat> rem(need + 1, Rat(0));
    for (const auto& [e, c] : n.coeffs())
        if (e <= need) rem[e] = Rat(c);
    for (int k = 0; k <= need; ++k) {
        Rat s = rem[k] / d0;
        s.canonicalize();
        series[k] = s;
        if (s == 0) continue;
        for (const auto& [e, c] : d.coeffs()) {
            if (k + e <= need) {
                Rat t = s * Rat(c);
                t.canonicalize();
                rem[k + e] -= t;
            }
        }
    }
    for (int e = lo; e <= hi; ++e) {
        int k = e - val;
        if (k >= 0 && k <= need) out[e - lo] = series[k];
    }
    return out;
}

std::string RatFun::str() const {
    if (den_.is_one()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ")/(" << den_.str() << ")";
    return os.str();
}

}  // namespace qcb
