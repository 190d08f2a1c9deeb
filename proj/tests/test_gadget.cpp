#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "owp/absorber.hpp"
#include "owp/checks.hpp"

using namespace owp;

namespace {
CycleFactor single_cycle(int n) {
    std::vector<Vertex> c(n);
    std::iota(c.begin(), c.end(), 0);
    return CycleFactor(n, {c});
}
} // namespace

TEST_CASE("F-partition class sizes") {
    SUBCASE("C7") {
        auto f = single_cycle(7);
        auto fp = build_f_partition(f);
        CHECK(fp.class_size(fp_y_class(3, 4)) == 1);
        CHECK(fp.class_size(fp_y_class(4, 3)) == 1);
        CHECK(fp.class_size(fp_path_class(3, 2)) == 1);
        CHECK(fp.class_size(fp_path_class(3, 3)) == 1);
        CHECK(fp.class_size(fp_path_class(4, 2)) == 1);
        CHECK(fp.class_size(fp_path_class(4, 3)) == 1);
        CHECK(fp.class_size(fp_path_class(4, 4)) == 1);
        int total = 0;
        for (int cls = 0; cls < kNumClasses; ++cls) total += fp.class_size(cls);
        CHECK(total == 7);
    }
    SUBCASE("C5") {
        auto fp = build_f_partition(single_cycle(5));
        CHECK(fp.class_size(fp_y_class(5, 5)) == 1);
        for (int i = 2; i <= 5; ++i) CHECK(fp.class_size(fp_path_class(5, i)) == 1);
        CHECK(fp.class_size(fp_y_class(3, 3)) == 0);
    }
    SUBCASE("long cycles make every class large") {
        auto fp = build_f_partition(single_cycle(500));
        for (int cls = 0; cls < kNumClasses; ++cls) CHECK(fp.class_size(cls) >= 500 / 200);
    }
}

TEST_CASE("F-homomorphism walks the reduced graph") {
    SUBCASE("C3") {
        auto f = single_cycle(3);
        auto fp = build_f_partition(f);
        auto h = build_f_homomorphism(f, fp);
        CHECK(h.sigma[0] == fp_y_class(3, 3));
        CHECK(h.sigma[1] == fp_path_class(3, 2));
        CHECK(h.sigma[2] == fp_path_class(3, 3));
    }
    SUBCASE("C7 image sequence") {
        auto f = single_cycle(7);
        auto fp = build_f_partition(f);
        auto h = build_f_homomorphism(f, fp);
        std::vector<int> want{fp_y_class(4, 3), fp_path_class(3, 2), fp_path_class(3, 3),
                              fp_y_class(3, 4), fp_path_class(4, 2), fp_path_class(4, 3),
                              fp_path_class(4, 4)};
        for (int v = 0; v < 7; ++v) CHECK(h.sigma[v] == want[v]);
    }
    SUBCASE("class sizes are preserved and the orientation is 1-regular") {
        std::mt19937_64 rng(9);
        for (int it = 0; it < 10; ++it) {
            CycleFactor f = gen::random_cycle_factor(40 + int(rng() % 100), 3, 30, rng);
            auto fp = build_f_partition(f);
            auto h = build_f_homomorphism(f, fp);
            std::map<int, int> pre;
            for (Vertex v = 0; v < f.n; ++v) ++pre[h.sigma[v]];
            for (int cls = 0; cls < kNumClasses; ++cls)
                CHECK(pre[cls] == fp.class_size(cls));
            auto arcs = reduced_arcs_R();
            std::vector<int> din(f.n, 0), dout(f.n, 0);
            for (auto [x, y] : FHomomorphism::oriented_edges(f)) {
                REQUIRE(arcs.count({h.sigma[x], h.sigma[y]}) == 1);
                ++dout[x];
                ++din[y];
            }
            for (Vertex v = 0; v < f.n; ++v) {
                CHECK(din[v] == 1);
                CHECK(dout[v] == 1);
            }
        }
    }
}

TEST_CASE("rewiring permutation structure") {
    SUBCASE("C3 gives a fixed point") {
        auto f = single_cycle(3);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp);
        Vertex y = fp.members[fp_y_class(3, 3)][0];
        CHECK(rw.pi[y] == y);
    }
    SUBCASE("C6 gives a transposition inside X1_{3,3}") {
        auto f = single_cycle(6);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp);
        auto& ys = fp.members[fp_y_class(3, 3)];
        REQUIRE(ys.size() == 2);
        CHECK(rw.pi[ys[0]] == ys[1]);
        CHECK(rw.pi[ys[1]] == ys[0]);
    }
    SUBCASE("C7 swaps X1_{3,4} and X1_{4,3}") {
        auto f = single_cycle(7);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp);
        Vertex a = fp.members[fp_y_class(3, 4)][0];
        Vertex b = fp.members[fp_y_class(4, 3)][0];
        CHECK(rw.pi[a] == b);
        CHECK(rw.pi[b] == a);
    }
    SUBCASE("pi maps X1_{a,b} into the refined classes with first coordinate b") {
        std::mt19937_64 rng(3);
        CycleFactor f = gen::random_cycle_factor(120, 3, 40, rng);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp, 77);
        for (int a = 3; a <= 5; ++a)
            for (int b = 3; b <= 5; ++b)
                for (Vertex y : fp.members[fp_y_class(a, b)]) {
                    auto [bb, c] = fp_decode(rw.class_of[rw.pi[y]]);
                    CHECK(bb == b);
                }
    }
}

TEST_CASE("rewire maps the edge universes into each other") {
    auto f = single_cycle(6);
    auto fp = build_f_partition(f);
    auto rw = build_rewiring(f, fp);

    SUBCASE("empty graph") { CHECK(rewire({}, rw).empty()); }
    SUBCASE("a fixed-point edge is unchanged") {
        auto f3 = single_cycle(3);
        auto fp3 = build_f_partition(f3);
        auto rw3 = build_rewiring(f3, fp3);
        Vertex y = fp3.members[fp_y_class(3, 3)][0];
        Vertex v = fp3.members[fp_path_class(3, 2)][0];
        EdgeList g{Edge(y, v)};
        CHECK(rewire(g, rw3) == g);
    }
    SUBCASE("edges outside the universe are rejected") {
        Vertex u = fp.members[fp_path_class(3, 2)][0];
        Vertex v = fp.members[fp_path_class(3, 2)][1];
        CHECK_THROWS_AS(rewire({Edge(u, v)}, rw), std::invalid_argument);
    }
}

TEST_CASE("merging partite factors recovers F") {
    SUBCASE("C3: the single triangle maps to itself") {
        auto f = single_cycle(3);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp);
        std::mt19937_64 rng(1);
        PartiteFactor h3 = gen::random_partite_factor(fp, 3, rng);
        auto merged = merge_partite_factors(h3, {}, {}, fp, rw);
        CHECK(cycle_type_of(merged) == CycleType({3}));
    }
    SUBCASE("C6: two triangles merge through the transposition") {
        auto f = single_cycle(6);
        auto fp = build_f_partition(f);
        auto rw = build_rewiring(f, fp);
        std::mt19937_64 rng(1);
        for (int it = 0; it < 10; ++it) {
            PartiteFactor h3 = gen::random_partite_factor(fp, 3, rng);
            auto merged = merge_partite_factors(h3, {}, {}, fp, rw);
            CHECK(cycle_type_of(merged) == CycleType({6}));
        }
    }
    SUBCASE("random factors up to n = 300") {
        std::mt19937_64 rng(12);
        for (int it = 0; it < 20; ++it) {
            CycleFactor f = gen::random_cycle_factor(30 + int(rng() % 270), 3, 50, rng);
            auto fp = build_f_partition(f);
            auto rw = build_rewiring(f, fp, rng());
            PartiteFactor h3 = gen::random_partite_factor(fp, 3, rng);
            PartiteFactor h4 = gen::random_partite_factor(fp, 4, rng);
            PartiteFactor h5 = gen::random_partite_factor(fp, 5, rng);
            auto merged = merge_partite_factors(h3, h4, h5, fp, rw);
            CHECK(cycle_type_of(merged) == cycle_type_of(f));
        }
    }
}

TEST_CASE("blown cycles") {
    std::vector<std::vector<Vertex>> classes(4);
    for (int i = 0; i < 4; ++i) {
        classes[i].resize(20);
        std::iota(classes[i].begin(), classes[i].end(), 20 * i);
    }
    SUBCASE("r = 0 gives the empty graph") {
        auto res = build_blown_cycle(classes, 0, 1, BlownCycleMode::MatchingActivation);
        CHECK(res.edges.empty());
    }
    SUBCASE("r = n gives the complete blown cycle") {
        auto res = build_blown_cycle(classes, 20, 1, BlownCycleMode::MatchingActivation);
        CHECK(res.edges.size() == 4u * 20 * 20);
    }
    SUBCASE("every pair is r-regular") {
        for (auto mode : {BlownCycleMode::MatchingActivation, BlownCycleMode::PlantedResolvable}) {
            auto res = build_blown_cycle(classes, 3, 7, mode);
            std::vector<int> deg(80, 0);
            for (const Edge& e : res.edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
            for (int v = 0; v < 80; ++v) CHECK(deg[v] == 6);
        }
    }
    SUBCASE("planted witness partitions the edge set") {
        auto res = build_blown_cycle(classes, 4, 9, BlownCycleMode::PlantedResolvable);
        REQUIRE(res.planted.size() == 4);
        EdgeList all;
        for (const auto& pf : res.planted) {
            CHECK(pf.size() == 20);
            EdgeList es = partite_factor_edges(pf);
            all.insert(all.end(), es.begin(), es.end());
        }
        EdgeList g = res.edges;
        std::sort(all.begin(), all.end());
        std::sort(g.begin(), g.end());
        CHECK(all == g);
    }
    SUBCASE("r beyond the class size is rejected") {
        CHECK_THROWS_AS(build_blown_cycle(classes, 21, 0, BlownCycleMode::MatchingActivation),
                        std::invalid_argument);
    }
}

TEST_CASE("quasirandom regular builder") {
    SUBCASE("even order, small density") {
        std::vector<Vertex> verts(10);
        std::iota(verts.begin(), verts.end(), 0);
        EdgeList es = build_quasirandom_regular(verts, 0.2, 3);
        std::vector<int> deg(10, 0);
        for (const Edge& e : es) {
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int d : deg) CHECK(d == 2);
    }
    SUBCASE("odd order exercises the patch") {
        std::vector<Vertex> verts(201);
        std::iota(verts.begin(), verts.end(), 0);
        EdgeList es = build_quasirandom_regular(verts, 0.3, 5);
        std::vector<int> deg(201, 0);
        for (const Edge& e : es) {
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int d : deg) CHECK(d == 60);
    }
}

TEST_CASE("absorber construction and absorption") {
    SUBCASE("mixed factor C6+C6+C7+C7 at r = 1 is 1-balanced") {
        CycleFactor f(26, {{0, 1, 2, 3, 4, 5},
                           {6, 7, 8, 9, 10, 11},
                           {12, 13, 14, 15, 16, 17, 18},
                           {19, 20, 21, 22, 23, 24, 25}});
        auto fp = build_f_partition(f);
        AbsorberConfig cfg;
        cfg.r = 1;
        cfg.seed = 2;
        auto ab = build_absorber(f, fp, cfg);
        auto bp = balance_profile(ab.edges, fp.partition_R());
        REQUIRE(bp.balanced());
        CHECK(*bp.r == 1);
    }
    SUBCASE("r = 0 gives an empty absorber") {
        CycleFactor f(26, {{0, 1, 2, 3, 4, 5},
                           {6, 7, 8, 9, 10, 11},
                           {12, 13, 14, 15, 16, 17, 18},
                           {19, 20, 21, 22, 23, 24, 25}});
        auto fp = build_f_partition(f);
        AbsorberConfig cfg;
        cfg.r = 0;
        auto ab = build_absorber(f, fp, cfg);
        CHECK(ab.edges.empty());
    }
    SUBCASE("planted mode: unrewiring the planted factors reproduces the absorber") {
        auto f = single_cycle(96);
        auto fp = build_f_partition(f, gen::all_pairs_family(96));
        AbsorberConfig cfg;
        cfg.r = 2;
        cfg.seed = 11;
        auto ab = build_absorber(f, fp, cfg);
        EdgeList all;
        for (int a = 3; a <= 5; ++a)
            for (const auto& pf : ab.planted[a - 3]) {
                EdgeList es = unrewire(partite_factor_edges(pf), ab.rw);
                all.insert(all.end(), es.begin(), es.end());
            }
        EdgeList g = ab.edges;
        std::sort(all.begin(), all.end());
        std::sort(g.begin(), g.end());
        CHECK(all == g);
    }
    SUBCASE("absorbing the empty leftover returns r factors isomorphic to F") {
        auto f = single_cycle(96);
        auto fp = build_f_partition(f, gen::all_pairs_family(96));
        AbsorberConfig cfg;
        cfg.r = 2;
        cfg.seed = 4;
        auto ab = build_absorber(f, fp, cfg);
        auto out = absorb_balanced_leftover(ab, {});
        REQUIRE(out.verdict == Verdict::Found);
        REQUIRE(out.factors.size() == 2);
        for (const auto& g : out.factors) CHECK(cycle_type_of(g) == cycle_type_of(f));
    }
    SUBCASE("unbalanced leftovers are rejected up front") {
        auto f = single_cycle(96);
        auto fp = build_f_partition(f, gen::all_pairs_family(96));
        AbsorberConfig cfg;
        cfg.r = 2;
        cfg.seed = 4;
        auto ab = build_absorber(f, fp, cfg);
        CHECK_THROWS_AS(absorb_balanced_leftover(ab, {ab.edges.front()}), std::invalid_argument);
    }
}
