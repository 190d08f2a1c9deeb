// Acceptance suite: runs each criterion at its stated budget and prints one
// pass/fail line per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>

#include "owp/checks.hpp"
#include "owp/io.hpp"
#include "owp/solver.hpp"
#include "oracle.hpp"

using namespace owp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, double seconds, double budget,
            const std::string& detail = "") {
    bool in_budget = seconds <= budget;
    bool pass = ok && in_budget;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << name << " ("
              << seconds << "s of " << budget << "s budget)";
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    if (ok && !in_budget) std::cout << " -- over budget";
    std::cout << "\n";
    if (!pass) ++failures;
}

template <typename F>
double timed(F&& fn) {
    auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Certificate walecki_k5() {
    Certificate c;
    c.n = 5;
    c.host_field = "complete";
    c.spec.entries = {{CycleType({5}), 2}};
    c.factors = {CycleFactor(5, {{0, 1, 2, 3, 4}}), CycleFactor(5, {{0, 2, 4, 1, 3}})};
    return c;
}

Certificate walecki_k7() {
    Certificate c;
    c.n = 7;
    c.host_field = "complete";
    c.spec.entries = {{CycleType({7}), 3}};
    c.factors = {CycleFactor(7, {{6, 0, 1, 5, 2, 4, 3}}), CycleFactor(7, {{6, 1, 2, 0, 3, 5, 4}}),
                 CycleFactor(7, {{6, 2, 3, 1, 4, 0, 5}})};
    return c;
}

// ten deterministic single-edge mutations: swap two vertices inside a cycle,
// which rewires edges while keeping the line parseable
bool mutations_rejected(const Certificate& base, std::string& why) {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 10) {
        Certificate c = base;
        int fi = int(rng() % c.factors.size());
        auto& cyc = c.factors[fi].cycles[0];
        int i = int(rng() % cyc.size());
        int j = int(rng() % cyc.size());
        if (i == j) continue;
        std::swap(cyc[i], cyc[j]);
        // the mutation must change the edge set, otherwise redraw
        if (c.factors[fi].edge_set() == base.factors[fi].edge_set()) continue;
        auto rep = verify_decomposition(c.load_host(), c.factors, c.spec);
        if (rep.ok) {
            why = "mutated certificate accepted";
            return false;
        }
        // the witness must be self-evidencing: a real overlap or a real
        // uncovered host edge
        if (rep.has_witness) {
            if (rep.reason == "edge covered twice") {
                int count = 0;
                for (const auto& f : c.factors)
                    for (const Edge& e : f.edges())
                        if (e == rep.witness) ++count;
                if (count < 2) {
                    why = "overlap witness does not overlap";
                    return false;
                }
            } else if (rep.reason == "host edge not covered") {
                for (const auto& f : c.factors)
                    for (const Edge& e : f.edges())
                        if (e == rep.witness) {
                            why = "uncovered witness is covered";
                            return false;
                        }
            }
        }
        ++done;
    }
    return true;
}

} // namespace

int main() {
    std::cout << "owp acceptance suite\n";

    // 1. golden certificates and their mutations
    {
        bool ok = true;
        std::string why;
        double secs = timed([&] {
            for (auto cert : {walecki_k5(), walecki_k7()}) {
                std::string text = format_certificate(cert);
                Certificate parsed = parse_certificate(text);
                if (format_certificate(parsed) != text) {
                    ok = false;
                    why = "round trip not byte-identical";
                    return;
                }
                auto rep = verify_decomposition(parsed.load_host(), parsed.factors, parsed.spec);
                if (!rep.ok) {
                    ok = false;
                    why = "golden certificate rejected: " + rep.reason;
                    return;
                }
                if (!mutations_rejected(parsed, why)) {
                    ok = false;
                    return;
                }
            }
        });
        report(1, "golden Walecki certificates and 10 mutations each", ok, secs, 1.0, why);
    }

    // 2. exact-solver facts
    {
        std::string why;
        bool ok = true;
        SearchConfig cfg;
        cfg.timeout_seconds = 600;
        double secs = timed([&] {
            auto r1 = solve_factorization(HostGraph::complete(7),
                                          FactorSpec{{{CycleType({3, 4}), 3}}}, cfg);
            auto r2 = solve_factorization(HostGraph::complete(9),
                                          FactorSpec{{{CycleType({3, 3, 3}), 4}}}, cfg);
            auto r3 = solve_factorization(HostGraph::complete(9),
                                          FactorSpec{{{CycleType({4, 5}), 4}}}, cfg);
            if (r1.verdict != Verdict::Found) { ok = false; why = "K7 {3,4}x3 not Found"; }
            else if (r2.verdict != Verdict::Found) { ok = false; why = "K9 {3,3,3}x4 not Found"; }
            else if (r3.verdict != Verdict::Exhausted) { ok = false; why = "K9 {4,5}x4 not Exhausted"; }
        });
        report(2, "solver facts: K7 {3,4}x3, K9 Kirkman, K9 {4,5}x4 exhausted", ok, secs,
               3 * 600.0, why);
    }

    // 3. partition suite up to 5000
    {
        std::string why;
        bool ok = true;
        double secs = timed([&] {
            for (int ell = 3; ell <= 5000 && ok; ++ell) {
                CyclicPartition p = admissible_partition(ell);
                if (p.length() != ell || !is_admissible(p)) {
                    ok = false;
                    why = "bad partition at " + std::to_string(ell);
                }
                if (ell >= 500)
                    for (int a = 3; a <= 5 && ok; ++a)
                        for (int b = 3; b <= 5 && ok; ++b)
                            if (200LL * rich_six(p, a, b) < ell) {
                                ok = false;
                                why = "rich pair window count below l/200 at " +
                                      std::to_string(ell);
                            }
            }
        });
        report(3, "admissible partitions for 3 <= l <= 5000 with rich windows", ok, secs, 5.0,
               why);
    }

    // 4. rewiring suite
    {
        CheckResult res;
        double secs = timed([&] { res = check_rewiring(300, 7, 200, 1000, 100); });
        report(4, "rewiring: 200 factors, round trips, balance, merges", res.ok && res.cases == 200,
               secs, 120.0, res.detail);
    }

    // 5. end-to-end absorption demo
    {
        std::string why;
        bool ok = true;
        double secs = timed([&] {
            std::vector<Vertex> cyc(96);
            std::iota(cyc.begin(), cyc.end(), 0);
            CycleFactor f(96, {cyc});
            auto fam = gen::all_pairs_family(96);
            CyclicPartition p = fam(96);
            if (!is_admissible(p) || p.length() != 96) {
                ok = false;
                why = "demo partition not admissible";
                return;
            }
            FPartition fp = build_f_partition(f, fam);
            for (int a = 3; a <= 5; ++a)
                for (int b = 3; b <= 5; ++b)
                    if (fp.counts.pair(a, b) <= 0) {
                        ok = false;
                        why = "count table not positive on all nine pairs";
                        return;
                    }
            AbsorberConfig cfg;
            cfg.r = 3;
            cfg.mode = BlownCycleMode::PlantedResolvable;
            cfg.seed = 5;
            Absorber ab = build_absorber(f, fp, cfg);
            EdgeList leftover;
            for (int a = 3; a <= 5; ++a) {
                EdgeList es = unrewire(partite_factor_edges(ab.planted[a - 3][0]), ab.rw);
                leftover.insert(leftover.end(), es.begin(), es.end());
            }
            BalanceProfile lb = balance_profile(leftover, fp.partition_R());
            if (!lb.balanced() || *lb.r != 1) {
                ok = false;
                why = "leftover is not 1-balanced";
                return;
            }
            SearchConfig scfg;
            scfg.timeout_seconds = 290;
            AbsorptionOutcome out = absorb_balanced_leftover(ab, leftover, scfg);
            if (out.verdict != Verdict::Found || out.factors.size() != 2) {
                ok = false;
                why = "absorption did not return two factors";
                return;
            }
            EdgeSet host_edges = EdgeSet::from_edges(f.n, ab.edges);
            for (const Edge& e : leftover) host_edges.remove(e);
            HostGraph host;
            host.n = f.n;
            host.kind = HostKind::Custom;
            host.edges = host_edges;
            FactorSpec spec;
            spec.entries = {{cycle_type_of(f), 2}};
            auto rep = verify_decomposition(host, out.factors, spec);
            if (!rep.ok) {
                ok = false;
                why = "absorption output fails verification: " + rep.reason;
            }
        });
        report(5, "planted absorber demo: G - L decomposes into 2 copies of F", ok, secs, 300.0,
               why);
    }

    // 6. atom suite
    {
        CheckResult res;
        double secs = timed([&] { res = check_atoms(500, 13, 500); });
        report(6, "atoms: 500 round trips and 500 rejections", res.ok && res.cases == 1000, secs,
               120.0, res.detail);
    }

    // 7. edge-stack suite
    {
        bool ok = true;
        std::string why;
        double secs = timed([&] {
            for (int n : {24, 48, 120, 240}) {
                CheckResult res = check_edge_stack(n, 29);
                if (!res.ok) {
                    ok = false;
                    why = "n=" + std::to_string(n) + ": " + res.detail;
                    return;
                }
            }
        });
        report(7, "edge stacks: exhaustive window checks, n in {24,48,120,240}", ok, secs, 60.0,
               why);
    }

    // 8. surgery suite
    {
        CheckResult res;
        double secs = timed([&] { res = check_surgery(500, 41, 200); });
        report(8, "surgery: 200 instances, conservation/homomorphism/stops",
               res.ok && res.cases == 200, secs, 120.0, res.detail);
    }

    // 9. allocation suites
    {
        CheckResult a, b, c;
        double secs = timed([&] {
            a = check_simple_alloc(43, 100);
            if (a.ok) b = check_good_matchings(47, 100);
            if (b.ok) c = check_crossing_alloc(53, 100);
        });
        bool ok = a.ok && b.ok && c.ok && a.cases == 100 && b.cases == 100 && c.cases == 100;
        report(9, "allocation: simple-alloc, good matchings, crossing-alloc, 100 each", ok, secs,
               300.0, a.ok ? (b.ok ? c.detail : b.detail) : a.detail);
    }

    // 10. oracle equivalence
    {
        bool ok = true;
        std::string why;
        int checked = 0;
        double secs = timed([&] {
            std::vector<HostGraph> hosts;
            for (int n : {3, 5, 7}) hosts.push_back(HostGraph::complete(n));
            for (int n : {4, 6}) hosts.push_back(HostGraph::complete_minus_pm(n));
            for (const auto& host : hosts)
                for (const auto& spec : testing::all_feasible_specs(host)) {
                    bool oracle = testing::oracle_decomposable(host, spec);
                    bool mine = solve_factorization(host, spec).verdict == Verdict::Found;
                    ++checked;
                    if (oracle != mine) {
                        ok = false;
                        why = "verdict mismatch at n=" + std::to_string(host.n) + " spec " +
                              spec.to_string();
                        return;
                    }
                }
        });
        report(10, "oracle equivalence on all feasible specs, n <= 7 (" +
                       std::to_string(checked) + " instances)",
               ok, secs, 60.0, why);
    }

    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures;
}
