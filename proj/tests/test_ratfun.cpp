#include <doctest.h>

#include "qcb/linalg.hpp"

#include <random>

using namespace qcb;

namespace {

RatFun random_ratfun(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> exp(-3, 3), coef(-6, 6);
    Laurent n, d;
    for (int t = 0; t < 3; ++t) n += Laurent::monomial(coef(rng), exp(rng));
    while (d.is_zero())
        for (int t = 0; t < 2; ++t) d += Laurent::monomial(coef(rng), exp(rng));
    return RatFun(n, d);
}

}  // namespace

TEST_CASE("ratfun canonical form") {
    RatFun x(Laurent::monomial(2, 1), Laurent(4));
    CHECK(x == RatFun(Laurent::v(1), Laurent(2)));
    CHECK(x.den() == Laurent(2));
    // 1/v is a unit: denominator must carry no v-power.
    RatFun y(Laurent(1), Laurent::v(1));
    CHECK(y == RatFun(Laurent::v(-1)));
    CHECK(y.den().is_one());
    // Sign normalization of the denominator.
    RatFun z(Laurent(1), Laurent(-2) + Laurent::v(1));
    CHECK(z.den().leading() > 0);
    CHECK_THROWS_AS(RatFun(Laurent(1), Laurent()), std::invalid_argument);
}

TEST_CASE("ratfun field axioms on random elements") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 120; ++t) {
        RatFun a = random_ratfun(rng), b = random_ratfun(rng), c = random_ratfun(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b).bar() == a.bar() * b.bar());
        if (!b.is_zero()) CHECK(a / b * b == a);
        CHECK(a - a == RatFun());
    }
}

TEST_CASE("ratfun valuation and series") {
    RatFun x(Laurent::v(1), quantum_integer(2));  // v/(v + v^{-1}) = v^2/(v^2+1)
    CHECK(x.valuation() == 2);
    CHECK(x.value_at_zero() == 0);
    // Series of v^2/(1+v^2) = v^2 - v^4 + v^6 - ...
    auto s = x.series_at_zero(0, 6);
    CHECK(s[0] == 0);
    CHECK(s[2] == 1);
    CHECK(s[4] == -1);
    CHECK(s[6] == 1);

    RatFun one_over(Laurent(1), Laurent(1) + Laurent::v(1));  // 1/(1+v)
    auto t = one_over.series_at_zero(-2, 3);
    CHECK(t[0] == 0);   // v^{-2}
    CHECK(t[2] == 1);   // v^0
    CHECK(t[3] == -1);  // v^1
    CHECK(t[4] == 1);
    CHECK(t[5] == -1);

    CHECK(RatFun(quantum_integer(3)).at_sign(-1) == 3);
    CHECK(RatFun(Laurent(1), quantum_integer(2)).at_sign(-1) == Rat(-1, 2));
}

TEST_CASE("linear solve: identity, 1x1, and rank report") {
    // identity * x = rhs
    Mat<RatFun> id = Mat<RatFun>::identity(3);
    std::vector<RatFun> rhs{RatFun(1), RatFun(Laurent::v(2)), RatFun(quantum_integer(2))};
    auto r = solve(id, rhs);
    REQUIRE(r.status == SolveResult<RatFun>::Status::unique);
    CHECK(r.solution == rhs);

    // [v] x = [2]  ->  x = 2 v^{-1}
    Mat<RatFun> a(1, 1);
    a(0, 0) = RatFun(Laurent::v(1));
    auto r2 = solve(a, {RatFun(2)});
    REQUIRE(r2.status == SolveResult<RatFun>::Status::unique);
    CHECK(r2.solution[0] == RatFun(Laurent::monomial(2, -1)));

    // rank of [[ [2], 1 ], [ [2]^2, [2] ]] is 1: the second row is [2] times the first.
    Mat<RatFun> b(2, 2);
    RatFun two(quantum_integer(2));
    b(0, 0) = two;
    b(0, 1) = RatFun(1);
    b(1, 0) = two * two;
    b(1, 1) = two;
    CHECK(rank(b) == 1);

    // Inconsistent system is a structured report, not a crash.
    auto r3 = solve(b, {RatFun(0), RatFun(1)});
    CHECK(r3.status == SolveResult<RatFun>::Status::inconsistent);
}

TEST_CASE("random invertible systems reproduce after multiply-back") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 10) {
        Mat<RatFun> a(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = random_ratfun(rng);
        if (rank(a) < 5) continue;
        std::vector<RatFun> b(5);
        for (int i = 0; i < 5; ++i) b[i] = random_ratfun(rng);
        auto r = solve(a, b);
        REQUIRE(r.status == SolveResult<RatFun>::Status::unique);
        CHECK(a.apply(r.solution) == b);
        ++done;
    }
}

TEST_CASE("kernel and inverse") {
    Mat<RatFun> b(2, 2);
    RatFun two(quantum_integer(2));
    b(0, 0) = two;
    b(0, 1) = RatFun(1);
    b(1, 0) = two * two;
    b(1, 1) = two;
    Mat<RatFun> k = kernel_basis(b);
    REQUIRE(k.cols() == 1);
    CHECK((b * k).is_zero());
    CHECK(!inverse(b).has_value());

    Mat<RatFun> c(2, 2);
    c(0, 0) = two;
    c(0, 1) = RatFun(1);
    c(1, 0) = RatFun(1);
    c(1, 1) = two;
    auto inv = inverse(c);
    REQUIRE(inv.has_value());
    CHECK((c * *inv) == Mat<RatFun>::identity(2));
}
