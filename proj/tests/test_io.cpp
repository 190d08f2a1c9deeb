#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "owp/checks.hpp"
#include "owp/io.hpp"

using namespace owp;

namespace {
Certificate walecki_k7() {
    Certificate c;
    c.n = 7;
    c.host_field = "complete";
    c.spec.entries = {{CycleType({7}), 3}};
    c.factors = {CycleFactor(7, {{6, 0, 1, 5, 2, 4, 3}}), CycleFactor(7, {{6, 1, 2, 0, 3, 5, 4}}),
                 CycleFactor(7, {{6, 2, 3, 1, 4, 0, 5}})};
    return c;
}
} // namespace

TEST_CASE("certificates round trip byte-identically") {
    Certificate c = walecki_k7();
    std::string text = format_certificate(c);
    Certificate back = parse_certificate(text);
    CHECK(format_certificate(back) == text);
    CHECK(back.n == 7);
    CHECK(back.factors.size() == 3);
    CHECK(verify_decomposition(back.load_host(), back.factors, back.spec).ok);
}

TEST_CASE("mutated certificates are rejected with a witness") {
    Certificate c = walecki_k7();
    std::swap(c.factors[0].cycles[0][2], c.factors[0].cycles[0][4]);
    auto rep = verify_decomposition(c.load_host(), c.factors, c.spec);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("truncated certificates fail to parse") {
    std::string text = format_certificate(walecki_k7());
    CHECK_THROWS_AS(parse_certificate(text.substr(0, 20)), parse_error);
    CHECK_THROWS_AS(parse_certificate("OWP/1 cert\nn=7\n"), parse_error);
    CHECK_THROWS_AS(parse_certificate("garbage"), parse_error);
}

TEST_CASE("spec strings") {
    FactorSpec s = parse_spec("3,4x2;7x1");
    CHECK(s.entries.size() == 2);
    CHECK(s.entries[0].first == CycleType({3, 4}));
    CHECK(s.entries[0].second == 2);
    CHECK(format_spec(s) == "3,4x2;7x1");
    CHECK_THROWS_AS(parse_spec(""), parse_error);
    CHECK_THROWS_AS(parse_spec("3,4"), parse_error);
}

TEST_CASE("graph files") {
    auto g = HostGraph::complete_minus_pm(6);
    std::string text = format_graph(g);
    HostGraph back = parse_graph(text);
    CHECK(back.n == 6);
    CHECK(back.edges == g.edges);
    CHECK(format_graph(back) == text);
    CHECK_THROWS_AS(parse_graph("OWP/1 graph\nn=3\n1 0\n"), parse_error);
}

TEST_CASE("factor files") {
    CycleFactor f(7, {{0, 1, 2}, {3, 4, 5, 6}});
    std::string text = format_factor_file(f);
    CycleFactor back = parse_factor_file(text);
    CHECK(back.n == 7);
    CHECK(cycle_type_of(back) == cycle_type_of(f));
    CHECK(format_factor_file(back) == text);
}

TEST_CASE("gadget sidecars reconstruct a working absorber") {
    std::vector<Vertex> cyc(96);
    std::iota(cyc.begin(), cyc.end(), 0);
    CycleFactor f(96, {cyc});
    auto fp = build_f_partition(f, gen::all_pairs_family(96));
    AbsorberConfig cfg;
    cfg.r = 2;
    cfg.seed = 6;
    Absorber ab = build_absorber(f, fp, cfg);

    HostGraph g;
    g.n = fp.n;
    g.kind = HostKind::Custom;
    g.edges = EdgeSet::from_edges(fp.n, ab.edges);
    std::string side = format_gadget_sidecar(ab, f);
    Absorber back = parse_gadget_sidecar(side, g);

    CHECK(back.fp.n == ab.fp.n);
    CHECK(back.r == ab.r);
    CHECK(back.fp.class_of == ab.fp.class_of);
    CHECK(back.rw.pi == ab.rw.pi);
    REQUIRE(back.planted[0].size() == ab.planted[0].size());

    // removing a planted triple from the parsed absorber still absorbs
    EdgeList leftover;
    for (int a = 3; a <= 5; ++a) {
        EdgeList es = unrewire(partite_factor_edges(back.planted[a - 3][0]), back.rw);
        leftover.insert(leftover.end(), es.begin(), es.end());
    }
    auto out = absorb_balanced_leftover(back, leftover);
    CHECK(out.verdict == Verdict::Found);
    CHECK(out.factors.size() == 1);
    CHECK(cycle_type_of(out.factors[0]) == cycle_type_of(f));
}

TEST_CASE("run ledger format") {
    RunLedger l;
    l.command = "solve";
    l.seed = 3;
    l.verdict = "Found";
    l.nodes = 42;
    l.wall_seconds = 0.5;
    l.exit_code = 0;
    std::string text = l.format();
    CHECK(text.find("command=solve\n") != std::string::npos);
    CHECK(text.find("seed=3\n") != std::string::npos);
    CHECK(text.find("verdict=Found\n") != std::string::npos);
    CHECK(text.find("wall_ms=500\n") != std::string::npos);
    CHECK(text.find("exit=0\n") != std::string::npos);
}
