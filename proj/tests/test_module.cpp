#include <doctest.h>

#include "qcb/module.hpp"

#include <random>

using namespace qcb;

namespace {

Quiver sl2q() { return build_quiver({"1"}, {}); }
Quiver a2q() { return build_quiver({"1", "2"}, {{"1", "2"}}); }

}  // namespace

TEST_CASE("raise_word: relation (d) pushed through words") {
    Module m(sl2q(), {2});
    // E (F v) = [2] v
    auto r1 = m.raise_word(0, {0});
    REQUIRE(r1.size() == 1);
    CHECK(r1.at({}) == quantum_integer(2));
    // E v = 0
    CHECK(m.raise_word(0, {}).empty());
    // E (FF v) = ([0] + [2]) Fv = (v + v^{-1}) Fv
    auto r2 = m.raise_word(0, {0, 0});
    REQUIRE(r2.size() == 1);
    CHECK(r2.at({0}) == quantum_integer(2));
}

TEST_CASE("contravariant pairing") {
    Module m(sl2q(), {2});
    CHECK(m.pairing({0}, {0}) == quantum_integer(2));
    CHECK(m.pairing({0, 0}, {0, 0}) == quantum_integer(2) * quantum_integer(2));
    Module ma(a2q(), {1, 1});
    CHECK(ma.pairing({0}, {1}) == Laurent());  // different contents
    CHECK(ma.pairing({}, {}) == Laurent(1));
    // Symmetry and adjointness on random word pairs.
    Module mb(a2q(), {2, 1});
    auto words3 = words_of_content({2, 1});
    for (const auto& x : words3)
        for (const auto& y : words3) CHECK(mb.pairing(x, y) == mb.pairing(y, x));
}

TEST_CASE("weight spaces and dimensions") {
    Module m1(sl2q(), {1});
    CHECK(m1.dim({2}) == 0);  // F^2 kills v for lambda = 1
    Module m2(sl2q(), {2});
    CHECK(m2.dim({1}) == 1);
    CHECK(m2.space({1}).words == std::vector<Word>{{0}});
    Module ma(a2q(), {1, 1});
    CHECK(ma.dim({1, 1}) == 2);
    CHECK(ma.dim({0, 0}) == 1);
    CHECK(ma.dim({2, 1}) == 1);

    // Chosen-basis Gram submatrix is nonsingular and its size equals the
    // full word-Gram rank.
    for (const auto& nu : weights_up_to_height(2, 4)) {
        const WeightSpace& sp = ma.space(nu);
        CHECK(laurent_rank(ma.full_gram(nu)) == sp.dim());
        if (sp.dim() > 0) CHECK(laurent_rank(sp.gram) == sp.dim());
        // The raising-map selection matches the greedy Gram selection.
        CHECK(sp.basis == greedy_principal_basis(ma.full_gram(nu)));
    }
}

TEST_CASE("apply_generator") {
    Module m(sl2q(), {2});
    ModuleVector v = m.highest();
    // K_i v = v^2 v
    CHECK(m.k_scalar({1}, {0}) == RatFun(Laurent::v(2)));
    // E v = 0
    CHECK(m.apply_e(0, v).is_zero());
    // F^{(2)} v has self-pairing [2]^2/([2]!)^2 = 1 in the word Gram.
    ModuleVector f2 = m.apply_f_divided(0, 2, v);
    REQUIRE(f2.coords.size() == 1);
    CHECK(f2.coords[0] == RatFun(1) / RatFun(quantum_factorial(2)));
    // Matrix of F from nu=0 to nu=1 is [1]; EF - FE on nu=1 is [0] = 0.
    Mat<RatFun> f = m.f_mat(0, {0});
    CHECK(f(0, 0) == RatFun(1));
    Mat<RatFun> ef = m.e_mat(0, {2}) * m.f_mat(0, {1});
    Mat<RatFun> fe = m.f_mat(0, {0}) * m.e_mat(0, {1});
    CHECK((ef - fe).is_zero());
}

TEST_CASE("verify_relations on the corpus") {
    SUBCASE("sl2 lambda = 3, height 6") {
        Module m(sl2q(), {3});
        CHECK(verify_relations(m, {3}, 6).all_pass());
    }
    SUBCASE("A2 lambda = rho, height 4") {
        Module m(a2q(), {1, 1});
        CHECK(verify_relations(m, {1, 1}, 4).all_pass());
    }
    SUBCASE("lambda = 0 is the trivial line") {
        Module m(a2q(), {0, 0});
        CHECK(m.dim({0, 0}) == 1);
        CHECK(m.dim({1, 0}) == 0);
        CHECK(m.apply_f(0, m.highest()).is_zero());
        CHECK(verify_relations(m, {0, 0}, 2).all_pass());
    }
    SUBCASE("A1xA1") {
        Quiver q({"1", "2"}, {});
        Module m(q, {2, 1});
        CHECK(verify_relations(m, {2, 1}, 4).all_pass());
    }
    SUBCASE("Kronecker, height 4") {
        Quiver q = build_quiver({"1", "2"}, {{"1", "2"}, {"1", "2"}});
        Module m(q, {1, 1});
        CHECK(verify_relations(m, {1, 1}, 4).all_pass());
    }
}

TEST_CASE("adjointness of E and F on random vectors") {
    Module m(a2q(), {2, 2});
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& nu : weights_up_to_height(2, 3)) {
        int d = m.dim(nu);
        if (d == 0) continue;
        const WeightSpace& sp = m.space(nu);
        for (int i = 0; i < 2; ++i) {
            WeightVector up = nu;
            up[i] += 1;
            if (m.dim(up) == 0) continue;
            const WeightSpace& spu = m.space(up);
            // <F_i x, y> = <x, E_i y> with x, y spanning words.
            for (int xi = 0; xi < d; ++xi)
                for (int yi = 0; yi < m.dim(up); ++yi) {
                    Word fx = sp.words[sp.basis[xi]];
                    fx.insert(fx.begin(), i);
                    Laurent lhs = m.pairing(fx, spu.words[spu.basis[yi]]);
                    Laurent rhs;
                    for (const auto& [w, c] : m.raise_word(i, spu.words[spu.basis[yi]]))
                        rhs += c * m.pairing(sp.words[sp.basis[xi]], w);
                    CHECK(lhs == rhs);
                }
        }
    }
    (void)rng;
    (void)coef;
}

TEST_CASE("tensor spaces") {
    TensorModule tm(sl2q(), {1}, {1});
    // Dimension of every tensor weight space is the convolution of factor dims.
    CHECK(tm.dim({0}) == 1);
    CHECK(tm.dim({1}) == 2);
    CHECK(tm.dim({2}) == 1);
    CHECK(tm.dim({3}) == 0);

    // Delta(F)(v (x) v) = Fv (x) v + v (Kv) (x) Fv: coefficients {1, v}.
    ModuleVector x = tm.apply_f(0, tm.highest());
    const auto& sp = tm.space({1});
    REQUIRE(sp.dim() == 2);
    std::map<int, RatFun> by_nu2;
    for (int s = 0; s < sp.dim(); ++s) by_nu2[sp.slots[s].nu2[0]] = x.coords[s];
    CHECK(by_nu2[1] == RatFun(1));             // F v_2 (x) v_1 from F (x) 1
    CHECK(by_nu2[0] == RatFun(Laurent::v(1)));  // v_2 (x) F v_1 from K (x) F

    SUBCASE("relations hold on tensor spaces") {
        CHECK(verify_relations(tm, {2}, 4).all_pass());
        TensorModule ta(a2q(), {1, 0}, {0, 1});
        CHECK(verify_relations(ta, {1, 1}, 4).all_pass());
    }
}
