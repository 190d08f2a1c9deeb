#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "owp/builders.hpp"
#include "owp/classed_graph.hpp"
#include "owp/predicates.hpp"
#include "owp/verify.hpp"

using namespace owp;

TEST_CASE("cycle type is the sorted multiset of lengths") {
    CycleFactor f5(5, {{0, 1, 2, 3, 4}});
    CHECK(cycle_type_of(f5) == CycleType({5}));

    CycleFactor f34(7, {{0, 1, 2}, {3, 4, 5, 6}});
    CHECK(cycle_type_of(f34) == CycleType({3, 4}));
    CHECK(cycle_type_of(f34) == CycleType({4, 3}));

    CHECK_THROWS_AS(CycleFactor(5, {{0, 1, 2}, {2, 3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(CycleFactor(4, {{0, 1}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("cycle type is invariant under relabeling") {
    std::mt19937_64 rng(11);
    CycleFactor f(9, {{0, 4, 2}, {1, 5, 3, 6, 7, 8}});
    std::vector<Vertex> rho(9);
    std::iota(rho.begin(), rho.end(), 0);
    for (int it = 0; it < 50; ++it) {
        std::shuffle(rho.begin(), rho.end(), rng);
        CHECK(cycle_type_of(relabel(f, rho)) == cycle_type_of(f));
    }
}

TEST_CASE("verifier accepts the K5 decomposition into two 5-cycles") {
    // edges of (0 1 2 3 4): 01 12 23 34 40; of (0 2 4 1 3): 02 24 41 13 30
    auto host = HostGraph::complete(5);
    std::vector<CycleFactor> fs{CycleFactor(5, {{0, 1, 2, 3, 4}}),
                                CycleFactor(5, {{0, 2, 4, 1, 3}})};
    FactorSpec spec;
    spec.entries = {{CycleType({5}), 2}};
    auto rep = verify_decomposition(host, fs, spec);
    CHECK(rep.ok);
    // covered edges count equals the host edge count exactly
    int total = 0;
    for (const auto& f : fs) total += int(f.edges().size());
    CHECK(total == host.edges.size());
}

TEST_CASE("verifier accepts the Walecki decomposition of K7") {
    auto host = HostGraph::complete(7);
    std::vector<CycleFactor> fs{CycleFactor(7, {{6, 0, 1, 5, 2, 4, 3}}),
                                CycleFactor(7, {{6, 1, 2, 0, 3, 5, 4}}),
                                CycleFactor(7, {{6, 2, 3, 1, 4, 0, 5}})};
    FactorSpec spec;
    spec.entries = {{CycleType({7}), 3}};
    CHECK(verify_decomposition(host, fs, spec).ok);
}

TEST_CASE("verifier rejects overlap with a witness") {
    auto host = HostGraph::complete(5);
    std::vector<CycleFactor> fs{CycleFactor(5, {{0, 1, 2, 3, 4}}),
                                CycleFactor(5, {{0, 1, 2, 3, 4}})};
    FactorSpec spec;
    spec.entries = {{CycleType({5}), 2}};
    auto rep = verify_decomposition(host, fs, spec);
    CHECK_FALSE(rep.ok);
    CHECK(rep.has_witness);
    CHECK(rep.reason == "edge covered twice");
}

TEST_CASE("balance profile") {
    OrientedPartition p;
    p.num_classes = 3;
    p.class_of = {0, 1, 2};
    p.arcs = {{0, 1}, {1, 2}, {2, 0}};

    SUBCASE("empty graph is 0-regular") {
        auto bp = balance_profile({}, p);
        REQUIRE(bp.balanced());
        CHECK(*bp.r == 0);
    }
    SUBCASE("one full orientation cycle is 1-regular") {
        EdgeList es{Edge(0, 1), Edge(1, 2), Edge(0, 2)};
        auto bp = balance_profile(es, p);
        REQUIRE(bp.balanced());
        CHECK(*bp.r == 1);
    }
    SUBCASE("one extra arc breaks balance with a witness") {
        OrientedPartition q;
        q.num_classes = 3;
        q.class_of = {0, 0, 1, 2};
        q.arcs = {{0, 1}, {1, 2}, {2, 0}};
        EdgeList es{Edge(0, 2), Edge(2, 3), Edge(0, 3), Edge(1, 2)};
        auto bp = balance_profile(es, q);
        CHECK_FALSE(bp.balanced());
        CHECK(bp.witness >= 0);
    }
    SUBCASE("edge between unjoined classes is an error") {
        OrientedPartition q;
        q.num_classes = 3;
        q.class_of = {0, 1, 2};
        q.arcs = {{0, 1}};
        CHECK_THROWS_AS(balance_profile({Edge(1, 2)}, q), std::invalid_argument);
    }
    SUBCASE("balance is preserved under class-preserving relabeling") {
        OrientedPartition q;
        q.num_classes = 3;
        q.class_of = {0, 0, 1, 1, 2, 2};
        q.arcs = {{0, 1}, {1, 2}, {2, 0}};
        EdgeList es{Edge(0, 2), Edge(1, 3), Edge(2, 4), Edge(3, 5), Edge(0, 4), Edge(1, 5)};
        auto bp = balance_profile(es, q);
        REQUIRE(bp.balanced());
        // swap the two vertices inside class 0
        EdgeList es2 = {Edge(1, 2), Edge(0, 3), Edge(2, 4), Edge(3, 5), Edge(1, 4), Edge(0, 5)};
        auto bp2 = balance_profile(es2, q);
        REQUIRE(bp2.balanced());
        CHECK(*bp.r == *bp2.r);
    }
}

TEST_CASE("typicality predicate") {
    SUBCASE("complete graph is typical for D = 1") {
        int n = 24;
        auto host = HostGraph::complete(n);
        std::vector<int> cls(n, 0);
        auto rep = is_typical(n, host.edges.edges(), cls, 1, 0.2, 2, DensityMatrix::uniform(1, 1.0));
        CHECK(rep.ok);
    }
    SUBCASE("an edge against a zero density entry violates typicality") {
        int n = 6;
        std::vector<int> cls{0, 0, 0, 1, 1, 1};
        EdgeList es{Edge(0, 3)};
        DensityMatrix D(2);
        D.set(0, 0, 0.5);
        D.set(1, 1, 0.5);
        D.set(0, 1, 0.0);
        auto rep = is_typical(n, es, cls, 2, 0.3, 1, D);
        CHECK_FALSE(rep.ok);
    }
    SUBCASE("random bipartite slice is typical once eps clears the sampling noise") {
        // the bound is relative, (1 +- eps) |V_i| prod D, so eps must beat
        // the binomial fluctuations of degrees and codegrees at this size
        int n = 1000;
        std::mt19937_64 rng(5);
        std::vector<int> cls(n);
        for (int v = 0; v < n; ++v) cls[v] = v < n / 2 ? 0 : 1;
        double d = 0.5;
        EdgeList es;
        for (int u = 0; u < n / 2; ++u)
            for (int v = n / 2; v < n; ++v)
                if (std::uniform_real_distribution<>(0, 1)(rng) < d) es.emplace_back(u, v);
        DensityMatrix D(2);
        D.set(0, 1, d);
        auto rep = is_typical(n, es, cls, 2, 0.4, 2, D);
        CHECK(rep.ok);
        // and the check is not vacuous: a tight eps at this size fails
        auto tight = is_typical(n, es, cls, 2, 0.02, 2, D);
        CHECK_FALSE(tight.ok);
    }
}

TEST_CASE("quasirandomness predicate") {
    SUBCASE("complete graph") {
        int n = 40;
        auto host = HostGraph::complete(n);
        CHECK(is_quasirandom(n, host.edges.edges(), 2.0 / n, 1.0));
    }
    SUBCASE("empty graph fails the degree bound at d = 0.5") {
        CHECK_FALSE(is_quasirandom(20, {}, 0.1, 0.5));
    }
    SUBCASE("regular builder output is quasirandom") {
        std::vector<Vertex> verts(200);
        std::iota(verts.begin(), verts.end(), 0);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            EdgeList es = build_quasirandom_regular(verts, 0.3, seed);
            CHECK(is_quasirandom(200, es, 0.15, 0.3));
        }
    }
}

namespace {

// place edge-disjoint sigma-copies of a pattern greedily; used to exercise
// the necessary-condition direction of divisibility
struct PlacedUnion {
    EdgeList edges;
    int copies = 0;
};

PlacedUnion place_copies(int n, const std::vector<int>& g_class, int h_order,
                         const EdgeList& h_edges, const std::vector<int>& sigma, int want,
                         std::mt19937_64& rng) {
    PlacedUnion pu;
    EdgeSet used(n);
    std::vector<std::vector<Vertex>> class_members(3);
    for (Vertex v = 0; v < n; ++v) class_members[g_class[v]].push_back(v);
    for (int attempt = 0; attempt < 400 && pu.copies < want; ++attempt) {
        std::vector<Vertex> image(h_order, -1);
        std::vector<char> taken(n, 0);
        bool ok = true;
        for (int x = 0; x < h_order && ok; ++x) {
            auto cand = class_members[sigma[x]];
            std::shuffle(cand.begin(), cand.end(), rng);
            image[x] = -1;
            for (Vertex v : cand)
                if (!taken[v]) {
                    image[x] = v;
                    taken[v] = 1;
                    break;
                }
            ok = image[x] >= 0;
        }
        if (!ok) continue;
        EdgeList mapped;
        for (const Edge& e : h_edges) mapped.emplace_back(image[e.u], image[e.v]);
        bool disjoint = true;
        for (const Edge& e : mapped) disjoint &= !used.has(e);
        if (!disjoint) continue;
        for (const Edge& e : mapped) {
            used.add(e);
            pu.edges.push_back(e);
        }
        ++pu.copies;
    }
    return pu;
}

} // namespace

TEST_CASE("divisibility predicate") {
    SUBCASE("empty graph is divisible with m = 0") {
        std::vector<int> gc{0, 0, 1, 1};
        std::vector<int> sigma{0, 1};
        CHECK(is_divisible(4, {}, gc, 2, 2, {Edge(0, 1)}, sigma));
    }
    SUBCASE("a single sigma-copy is divisible with m = 1") {
        std::vector<int> gc{0, 1, 2};
        std::vector<int> sigma{0, 1, 2};
        EdgeList tri{Edge(0, 1), Edge(1, 2), Edge(0, 2)};
        CHECK(is_divisible(3, tri, gc, 3, 3, tri, sigma));
    }
    SUBCASE("edge count not a multiple of the pattern count") {
        // pattern C4 alternating between the two classes: e_H(P1,P2) = 4
        std::vector<int> sigma{0, 1, 0, 1};
        EdgeList h{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)};
        std::vector<int> gc{0, 0, 1, 1};
        EdgeList g{Edge(0, 2)};
        CHECK_FALSE(is_divisible(4, g, gc, 2, 4, h, sigma));
    }
    SUBCASE("divisibility holds on every generated decomposable instance") {
        std::mt19937_64 rng(7);
        // pattern: path x0-x1-x2 across classes 0,1,2
        EdgeList h{Edge(0, 1), Edge(1, 2)};
        std::vector<int> sigma{0, 1, 2};
        int n = 12;
        std::vector<int> gc(n);
        for (Vertex v = 0; v < n; ++v) gc[v] = v % 3;
        for (int it = 0; it < 30; ++it) {
            int want = 1 + int(rng() % 4);
            PlacedUnion pu = place_copies(n, gc, 3, h, sigma, want, rng);
            if (pu.copies == 0) continue;
            CHECK(is_divisible(n, pu.edges, gc, 3, 3, h, sigma));
        }
    }
}

TEST_CASE("host graph constructors enforce their invariants") {
    auto k6 = HostGraph::complete(6);
    CHECK(k6.edges.size() == 15);
    auto k6pm = HostGraph::complete_minus_pm(6);
    CHECK(k6pm.edges.size() == 12);
    for (auto d : k6pm.edges.degrees()) CHECK(d == 4);
    CHECK_THROWS_AS(HostGraph::complete_minus_pm(5), std::invalid_argument);
    CHECK_THROWS_AS(EdgeSet::from_edges(3, {Edge(0, 1), Edge(0, 1)}), std::invalid_argument);
}
