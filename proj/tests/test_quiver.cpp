#include <doctest.h>

#include "qcb/quiver.hpp"

#include <random>
#include <set>

using namespace qcb;

namespace {

Quiver a2() { return build_quiver({"1", "2"}, {{"1", "2"}}); }
Quiver a3() { return build_quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}}); }
Quiver kronecker() { return build_quiver({"1", "2"}, {{"1", "2"}, {"1", "2"}}); }

Quiver random_acyclic(std::mt19937_64& rng, int max_vertices) {
    std::uniform_int_distribution<int> nv(2, max_vertices);
    int n = nv(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    // Edges respect a random topological order, so the result is acyclic.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<int, int>> arrows;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int rep = 0; rep < 2; ++rep)
                if (coin(rng) == 0) arrows.emplace_back(order[a], order[b]);
    return Quiver(names, arrows);
}

}  // namespace

TEST_CASE("build_quiver validation") {
    Quiver q = a2();
    CHECK(q.n() == 2);
    CHECK(q.cartan(0, 1) == -1);
    CHECK(kronecker().cartan(0, 1) == -2);
    CHECK_THROWS_WITH_AS(build_quiver({"1", "2"}, {{"1", "1"}}), "loop at vertex 1",
                         std::invalid_argument);
    CHECK_THROWS_AS(build_quiver({"1", "2"}, {{"1", "2"}, {"2", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(build_quiver({"1"}, {{"1", "2"}}), std::invalid_argument);
}

TEST_CASE("euler form") {
    Quiver q = a2();
    CHECK(q.euler_form({1, 0}, {0, 1}) == -1);
    CHECK(q.euler_form({3, 5}, {0, 0}) == 0);
    // Framed A2 with omega = (2,1): <e_1, nu + omega> over Q^(1), nu = (1,1).
    FramedQuiver fq(q, {2, 1});
    WeightVector e1 = {1, 0, 0, 0};
    CHECK(fq.euler_form(e1, fq.extend({1, 1})) == 1 - 1 - 2);

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int t = 0; t < 100; ++t) {
        Quiver r = random_acyclic(rng, 5);
        auto rand_wv = [&] {
            WeightVector w(r.n());
            for (auto& x : w) x = entry(rng);
            return w;
        };
        WeightVector a = rand_wv(), b = rand_wv(), c = rand_wv();
        CHECK(r.euler_form(wv_add(a, b), c) == r.euler_form(a, c) + r.euler_form(b, c));
        CHECK(r.euler_form(a, wv_add(b, c)) == r.euler_form(a, b) + r.euler_form(a, c));
    }
}

TEST_CASE("framing from weight") {
    Quiver q = a2();
    CHECK(framing_from_weight(q, {1, 2}) == WeightVector{1, 2});
    CHECK(framing_from_weight(q, {0, 0}) == WeightVector{0, 0});
    CHECK_THROWS_AS(framing_from_weight(q, {-1, 2}), std::invalid_argument);
    Quiver sl2 = build_quiver({"1"}, {});
    CHECK(framing_from_weight(sl2, {3}) == WeightVector{3});
}

TEST_CASE("sign twists: examples") {
    Quiver a1 = build_quiver({"1"}, {});
    FramedQuiver fq(a1, {2});
    CHECK(sign_twist(fq, 0, 1, {1}, SignKind::psi_minus) == -1);
    CHECK(sign_twist(fq, 0, 1, {1}, SignKind::nakajima_f) == -1);
    CHECK(sign_twist(fq, 0, 1, WeightVector{0}, SignKind::nakajima_e) == 1);
    for (auto kind : {SignKind::psi_minus, SignKind::psi_plus, SignKind::nakajima_f,
                      SignKind::nakajima_e})
        CHECK(sign_twist(fq, 0, 2, {1}, kind) == 1);  // even r
}

TEST_CASE("sign twists: psi equals Nakajima sign on random data") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> entry(0, 5), rr(0, 4);
    for (int t = 0; t < 1000; ++t) {
        Quiver q = random_acyclic(rng, 5);
        auto rand_wv = [&] {
            WeightVector w(q.n());
            for (auto& x : w) x = entry(rng);
            return w;
        };
        WeightVector nu = rand_wv(), w1 = rand_wv();
        std::uniform_int_distribution<int> vi(0, q.n() - 1);
        int i = vi(rng), r = rr(rng);
        bool two_framed = t % 2 == 1;
        FramedQuiver fq = two_framed ? FramedQuiver(q, w1, rand_wv()) : FramedQuiver(q, w1);
        CHECK(sign_twist(fq, i, r, nu, SignKind::psi_minus) ==
              sign_twist(fq, i, r, nu, SignKind::nakajima_f));
        CHECK(sign_twist(fq, i, r, nu, SignKind::psi_plus) ==
              sign_twist(fq, i, r, nu, SignKind::nakajima_e));
    }
}

TEST_CASE("mutation at sources and sinks") {
    Quiver q = a2();
    Quiver rev = build_quiver({"1", "2"}, {{"2", "1"}});
    CHECK(q.mutated(1) == rev);  // sink
    CHECK(q.mutated(0) == rev);  // source
    CHECK_THROWS_AS(a3().mutated(1), std::invalid_argument);

    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        Quiver r = random_acyclic(rng, 5);
        for (int i = 0; i < r.n(); ++i) {
            if (!r.is_source(i) && !r.is_sink(i)) continue;
            CHECK(r.mutated(i).mutated(i) == r);
        }
    }
}

TEST_CASE("source mutation sequence: examples") {
    CHECK(source_mutation_sequence(a2(), 1) == std::vector<int>{0});
    CHECK(source_mutation_sequence(a2(), 0) == std::vector<int>{});
    CHECK(source_mutation_sequence(a3(), 2) == std::vector<int>{0, 1});
}

TEST_CASE("contracting cocharacter: examples") {
    CHECK(contracting_cocharacter(a3(), {0, 1}) == WeightVector{-1, -1, 0});
    CHECK(contracting_cocharacter(a3(), {}) == WeightVector{0, 0, 0});
    CHECK(contracting_cocharacter(a2(), {0}) == WeightVector{-1, 0});
    CHECK_THROWS_AS(contracting_cocharacter(a2(), {1}), std::invalid_argument);
}

TEST_CASE("mutation-to-source and cocharacter postconditions on random orientations") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
        Quiver q = random_acyclic(rng, 6);
        std::uniform_int_distribution<int> vi(0, q.n() - 1);
        int target = vi(rng);
        auto seq = source_mutation_sequence(q, target);
        // Replay mutates only at current sources and ends with target a source.
        Quiver cur = q;
        for (int step : seq) {
            REQUIRE(cur.is_source(step));
            cur = cur.mutated(step);
        }
        CHECK(cur.is_source(target));
        // Cocharacter weights: 1 on reversed arrows, 0 on kept arrows.
        WeightVector c = contracting_cocharacter(q, seq);
        std::multiset<std::pair<int, int>> final_arrows(cur.arrows().begin(), cur.arrows().end());
        for (const auto& [s, tg] : q.arrows()) {
            bool kept = final_arrows.count({s, tg}) > 0;
            long weight = c[tg] - c[s];
            if (kept) {
                CHECK(weight == 0);
                final_arrows.erase(final_arrows.find({s, tg}));
            } else {
                CHECK(weight == 1);
                REQUIRE(final_arrows.count({tg, s}) > 0);
                final_arrows.erase(final_arrows.find({tg, s}));
            }
        }
    }
}

TEST_CASE("quiver parsing: text and json") {
    QuiverSpec s1 = parse_quiver("vertices 1 2\nedge 1 2\nframing1 1 2\nframing1 2 1\n");
    CHECK(s1.q == a2());
    REQUIRE(s1.framing1.has_value());
    CHECK(*s1.framing1 == WeightVector{2, 1});
    QuiverSpec s2 = parse_quiver(
        R"({"vertices": ["1", "2"], "edges": [["1", "2"]], "framing1": {"1": 2, "2": 1}})");
    CHECK(s2.q == s1.q);
    CHECK(*s2.framing1 == *s1.framing1);
    CHECK_THROWS(parse_quiver("vertices 1 2\nedge 1\n"));
    CHECK_THROWS(parse_quiver("edge 1 2\n"));
}
