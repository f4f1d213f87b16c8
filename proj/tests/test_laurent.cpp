#include <doctest.h>

#include "qcb/laurent.hpp"

#include <random>

using namespace qcb;

namespace {

// Independent oracle for Gaussian binomials: the q-Pascal recurrence
// [n,k] = v^k [n-1,k] + v^{k-n} [n-1,k-1], balanced so the result is
// bar-symmetric (matches the product definition).
Laurent binom_oracle(int n, int k) {
    if (k < 0 || k > n) return Laurent();
    if (k == 0 || k == n) return Laurent(1);
    return Laurent::v(k) * binom_oracle(n - 1, k) +
           Laurent::v(k - n) * binom_oracle(n - 1, k - 1);
}

Laurent random_laurent(std::mt19937_64& rng, int terms = 4) {
    std::uniform_int_distribution<int> exp(-5, 5), coef(-9, 9);
    Laurent p;
    for (int t = 0; t < terms; ++t) p += Laurent::monomial(coef(rng), exp(rng));
    return p;
}

}  // namespace

TEST_CASE("quantum integers and factorials") {
    CHECK(quantum_integer(0) == Laurent());
    CHECK(quantum_integer(1) == Laurent(1));
    CHECK(quantum_integer(2) == Laurent::v(1) + Laurent::v(-1));
    CHECK(quantum_factorial(3) == quantum_integer(2) * quantum_integer(3));
    CHECK_THROWS_AS(quantum_integer(-1), std::invalid_argument);
    CHECK_THROWS_AS(quantum_binomial(3, 4), std::invalid_argument);
    CHECK(quantum_integer_signed(-3) == -quantum_integer(3));
}

TEST_CASE("quantum binomial matches the recurrence oracle") {
    // Frozen expansion of [4 choose 2], computed from the oracle.
    Laurent expect = Laurent::v(4) + Laurent::v(2) + Laurent(2) + Laurent::v(-2) + Laurent::v(-4);
    CHECK(binom_oracle(4, 2) == expect);
    CHECK(quantum_binomial(4, 2) == expect);
    for (int n = 0; n <= 9; ++n)
        for (int k = 0; k <= n; ++k) CHECK(quantum_binomial(n, k) == binom_oracle(n, k));
}

TEST_CASE("binomial coefficients are nonnegative up to n = 12") {
    for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto& [e, c] : quantum_binomial(n, k).coeffs()) {
                (void)e;
                CHECK(c > 0);
            }
}

TEST_CASE("bar involution") {
    Laurent p = Laurent::v(2) + Laurent::monomial(3, -1);
    CHECK(p.bar() == Laurent::v(-2) + Laurent::monomial(3, 1));
    CHECK(Laurent(5).bar() == Laurent(5));
    for (int n = 0; n <= 6; ++n) CHECK(quantum_integer(n).bar() == quantum_integer(n));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Laurent a = random_laurent(rng), b = random_laurent(rng);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK(a.bar().bar() == a);
        CHECK((a + b).bar() == a.bar() + b.bar());
    }
}

TEST_CASE("specialization at +-1") {
    Laurent p = Laurent::v(1) + Laurent::v(-1);
    CHECK(specialize(p, -1) == -2);
    CHECK(specialize(p, 1) == 2);
    CHECK(specialize(quantum_binomial(4, 2), 1) == 6);
    for (int n = 1; n <= 7; ++n) {
        Int expect = (n % 2 == 0) ? Int(-n) : Int(n);
        CHECK(specialize(quantum_integer(n), -1) == expect);  // (-1)^{n-1} n
    }
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        Laurent a = random_laurent(rng), b = random_laurent(rng);
        for (int s : {1, -1}) CHECK(specialize(a * b, s) == specialize(a, s) * specialize(b, s));
    }
}

TEST_CASE("symmetric correction") {
    Laurent p = Laurent::v(2) + Laurent::monomial(2, -1);
    CHECK(symmetric_correction(p) == Laurent::monomial(2, 1) + Laurent::monomial(2, -1));
    CHECK(symmetric_correction(Laurent::v(3)) == Laurent());
    Laurent sym = Laurent(4) + Laurent::v(2) + Laurent::v(-2);
    CHECK(symmetric_correction(sym) == sym);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        Laurent p2 = random_laurent(rng);
        Laurent q = symmetric_correction(p2);
        CHECK(q.bar() == q);
        Laurent r = p2 - q;
        if (!r.is_zero()) CHECK(r.min_exp() >= 1);
    }
}

TEST_CASE("exact division") {
    Laurent a = quantum_factorial(4);
    auto q = exact_divide(a, quantum_factorial(2) * quantum_factorial(2));
    REQUIRE(q.has_value());
    CHECK(*q == quantum_binomial(4, 2));
    CHECK(!exact_divide(Laurent::v(1) + Laurent(1), Laurent::v(1) + Laurent(-1)).has_value());
    CHECK(!exact_divide(Laurent(3), Laurent(2)).has_value());
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        Laurent x = random_laurent(rng), y = random_laurent(rng);
        if (y.is_zero()) continue;
        auto d = exact_divide(x * y, y);
        REQUIRE(d.has_value());
        CHECK(*d == x);
    }
}

TEST_CASE("polynomial gcd") {
    Laurent two = quantum_integer(2);
    CHECK(laurent_poly_gcd(two * two, two) == two.shifted(1));  // v^2 + 1
    CHECK(laurent_poly_gcd(Laurent(6), Laurent(4)) == Laurent(2));
    std::mt19937_64 rng(19);
    for (int t = 0; t < 60; ++t) {
        Laurent a = random_laurent(rng, 3), b = random_laurent(rng, 3), c = random_laurent(rng, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        Laurent g = laurent_poly_gcd(a * c, b * c);
        // The common factor divides the gcd (v-powers are units).
        Laurent prim_c = laurent_poly_gcd(c, Laurent());
        CHECK(exact_divide(g, prim_c).has_value());
        CHECK(exact_divide(a * c, g).has_value());
        CHECK(exact_divide(b * c, g).has_value());
    }
}
