// owp: exact Oberwolfach / Hamilton-Waterloo toolkit. Solves and verifies
// decompositions of complete graphs into prescribed cycle factors, builds
// rewiring gadgets and absorbers, and drives the per-lemma check suites.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "owp/checks.hpp"
#include "owp/io.hpp"
#include "owp/partitions.hpp"
#include "owp/solver.hpp"

using namespace owp;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::Found: return kExitFound;
        case Verdict::Exhausted: return kExitExhausted;
        default: return kExitTimeout;
    }
}

struct SolveArgs {
    int n = 0;
    bool minus_pm = false;
    std::string host_file;
    std::string cycles;
    int multiplicity = 0;
    std::string spec_str;
    double timeout = 600;
    int threads = 0;
    std::uint64_t seed = 0;
    std::string out, ledger;
};

int run_solve(const SolveArgs& a) {
    HostGraph host;
    if (!a.host_file.empty()) {
        host = parse_graph(read_text_file(a.host_file));
        if (a.n && a.n != host.n) throw std::invalid_argument("--n disagrees with the host file");
    } else if (a.minus_pm) {
        host = HostGraph::complete_minus_pm(a.n);
    } else {
        host = HostGraph::complete(a.n);
    }

    FactorSpec spec;
    if (!a.spec_str.empty()) {
        std::string text = a.spec_str;
        if (std::filesystem::exists(text)) {
            // a spec file holds the same syntax on its first non-empty line
            for (const std::string& ln : split_lines(read_text_file(text)))
                if (!ln.empty()) {
                    text = ln;
                    break;
                }
        }
        spec = parse_spec(text);
    } else if (!a.cycles.empty()) {
        std::vector<int> lens;
        std::istringstream ss(a.cycles);
        std::string tok;
        while (std::getline(ss, tok, ',')) lens.push_back(std::stoi(tok));
        CycleType type(lens);
        if (type.order() != host.n)
            throw std::invalid_argument("cycle type " + type.to_string() +
                                        " does not span order " + std::to_string(host.n));
        int mult = a.multiplicity;
        if (mult == 0) {
            long long edges = host.edges.size();
            if (edges % host.n != 0)
                throw std::invalid_argument("host has no full decomposition into 2-factors");
            mult = int(edges / host.n);
        }
        spec.entries = {{type, mult}};
    } else {
        throw std::invalid_argument("one of --cycles or --spec is required");
    }

    SearchConfig cfg;
    cfg.timeout_seconds = a.timeout;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    if (cfg.threads <= 0) {
        const char* env = std::getenv("OWP_THREADS");
        cfg.threads = env ? std::max(1, std::atoi(env)) : 1;
    }

    SearchOutcome out = solve_factorization(host, spec, cfg);
    std::cout << verdict_name(out.verdict) << " nodes=" << out.stats.nodes
              << " wall=" << out.stats.wall_seconds << "s\n";

    if (out.verdict == Verdict::Found && !a.out.empty()) {
        Certificate cert;
        cert.n = host.n;
        cert.host_field = !a.host_file.empty()
                              ? "file:" + a.host_file
                              : (a.minus_pm ? "complete-minus-pm" : "complete");
        cert.spec = spec;
        cert.factors = out.certificate;
        write_text_file(a.out, format_certificate(cert));
        std::cout << "certificate written to " << a.out << "\n";
    }

    RunLedger ledger;
    ledger.command = "solve";
    ledger.seed = a.seed;
    ledger.verdict = verdict_name(out.verdict);
    ledger.nodes = out.stats.nodes;
    ledger.wall_seconds = out.stats.wall_seconds;
    ledger.exit_code = exit_code_for(out.verdict);
    ledger.extra.emplace_back("spec", spec.to_string());
    ledger.extra.emplace_back("threads", std::to_string(cfg.threads));
    std::string lpath = !a.ledger.empty() ? a.ledger : (!a.out.empty() ? a.out + ".ledger" : "owp.ledger");
    write_text_file(lpath, ledger.format());
    return ledger.exit_code;
}

int run_verify(const std::string& path) {
    Certificate cert = parse_certificate(read_text_file(path));
    HostGraph host = cert.load_host();
    VerificationReport rep = verify_decomposition(host, cert.factors, cert.spec);
    if (rep.ok) {
        std::cout << "valid: " << cert.factors.size() << " factors, "
                  << host.edges.size() << " edges covered\n";
        return 0;
    }
    std::cout << "invalid: " << rep.reason;
    if (rep.factor_index >= 0) std::cout << " (factor " << rep.factor_index << ")";
    if (rep.has_witness)
        std::cout << " witness edge (" << rep.witness.u << "," << rep.witness.v << ")";
    std::cout << "\n";
    return 1;
}

int run_partition(int length, bool as_json) {
    CyclicPartition p = admissible_partition(length);
    CountTable tbl = count_table(p);
    if (as_json) {
        nlohmann::json j;
        j["length"] = length;
        j["partition"] = p.parts;
        j["admissible"] = is_admissible(p);
        for (int a = 3; a <= 5; ++a) j["singles"][std::to_string(a)] = tbl.single(a);
        for (int a = 3; a <= 5; ++a)
            for (int b = 3; b <= 5; ++b)
                j["pairs"][std::to_string(a) + std::to_string(b)] = tbl.pair(a, b);
        if (length >= 500)
            for (int a = 3; a <= 5; ++a)
                for (int b = 3; b <= 5; ++b)
                    j["richSix"][std::to_string(a) + std::to_string(b)] = rich_six(p, a, b);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "partition " << p.to_string() << "\n";
        std::cout << "admissible " << (is_admissible(p) ? "yes" : "no") << "\n";
        for (int a = 3; a <= 5; ++a) std::cout << "c(" << a << ")=" << tbl.single(a) << " ";
        std::cout << "\n";
        for (int a = 3; a <= 5; ++a)
            for (int b = 3; b <= 5; ++b)
                if (tbl.pair(a, b)) std::cout << "c(" << a << "," << b << ")=" << tbl.pair(a, b) << " ";
        std::cout << "\n";
    }
    return 0;
}

int run_gadget_build(const std::string& factor_path, int r, const std::string& mode,
                     std::uint64_t seed, const std::string& out_dir) {
    CycleFactor f = parse_factor_file(read_text_file(factor_path));
    // every pair count must be realizable; long single cycles get the
    // all-pairs family so small demos work out of the box
    PartitionFamily fam = f.cycles.size() == 1 && f.n >= 61 && f.n < 500
                              ? gen::all_pairs_family(f.n)
                              : canonical_family();
    FPartition fp = build_f_partition(f, fam);
    AbsorberConfig cfg;
    cfg.r = r;
    cfg.seed = seed;
    if (mode == "planted-resolvable" || mode == "planted")
        cfg.mode = BlownCycleMode::PlantedResolvable;
    else if (mode == "matching-activation" || mode == "matching")
        cfg.mode = BlownCycleMode::MatchingActivation;
    else
        throw std::invalid_argument("mode must be planted-resolvable or matching-activation");
    Absorber ab = build_absorber(f, fp, cfg);

    std::filesystem::create_directories(out_dir);
    HostGraph g;
    g.n = fp.n;
    g.kind = HostKind::Custom;
    g.edges = EdgeSet::from_edges(fp.n, ab.edges);
    write_text_file(out_dir + "/gadget.graph", format_graph(g));
    write_text_file(out_dir + "/gadget.sidecar", format_gadget_sidecar(ab, f));
    std::cout << "gadget written to " << out_dir << " (" << ab.edges.size() << " edges, r=" << ab.r
              << ")\n";
    return 0;
}

int run_gadget_absorb(const std::string& gadget_dir, const std::string& leftover_path,
                      const std::string& out_path, double timeout, std::uint64_t seed) {
    HostGraph g = parse_graph(read_text_file(gadget_dir + "/gadget.graph"));
    Absorber ab = parse_gadget_sidecar(read_text_file(gadget_dir + "/gadget.sidecar"), g);
    HostGraph lg = parse_graph(read_text_file(leftover_path));
    if (lg.n != ab.fp.n) throw std::invalid_argument("leftover order mismatch");

    SearchConfig cfg;
    cfg.timeout_seconds = timeout;
    cfg.seed = seed;
    AbsorptionOutcome out = absorb_balanced_leftover(ab, lg.edges.edges(), cfg);
    std::cout << verdict_name(out.verdict) << " factors=" << out.factors.size() << "\n";

    if (out.verdict == Verdict::Found && !out_path.empty()) {
        std::string text;
        for (const auto& f : out.factors) text += format_factor_line(f) + "\n";
        write_text_file(out_path, text);
        std::cout << "factors written to " << out_path << "\n";
    }
    RunLedger ledger;
    ledger.command = "gadget absorb";
    ledger.seed = seed;
    ledger.verdict = verdict_name(out.verdict);
    ledger.nodes = out.stats.nodes;
    ledger.wall_seconds = out.stats.wall_seconds;
    ledger.exit_code = exit_code_for(out.verdict);
    write_text_file(!out_path.empty() ? out_path + ".ledger" : "owp.ledger", ledger.format());
    return ledger.exit_code;
}

int run_check(const std::string& lemma, int n, std::uint64_t seed) {
    CheckResult res = run_named_check(lemma, n, seed);
    std::cout << lemma << ": " << (res.ok ? "pass" : "FAIL") << " (" << res.cases << " cases)";
    if (!res.ok) std::cout << " " << res.detail;
    std::cout << "\n";
    return res.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"owp: exact cycle-factor decompositions of complete graphs"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "search for a decomposition");
    solve->add_option("--n", sa.n, "order of the complete host");
    solve->add_flag("--minus-pm", sa.minus_pm, "use K_n minus a perfect matching");
    solve->add_option("--host", sa.host_file, "custom host graph file (OWP/1 graph)");
    solve->add_option("--cycles", sa.cycles, "cycle type, e.g. 4,5");
    solve->add_option("--multiplicity", sa.multiplicity, "copies of the cycle type (default: all)");
    solve->add_option("--spec", sa.spec_str, "full spec, e.g. 3,4x2;7x1");
    solve->add_option("--timeout", sa.timeout, "seconds before giving up")->default_val(600.0);
    solve->add_option("--threads", sa.threads, "worker threads (default $OWP_THREADS or 1)");
    solve->add_option("--seed", sa.seed, "search seed")->default_val(0);
    solve->add_option("--out", sa.out, "certificate output path");
    solve->add_option("--ledger", sa.ledger, "run ledger path");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("path", verify_path, "certificate path")->required();

    int part_len = 0;
    bool part_json = false;
    auto* part = app.add_subcommand("partition", "canonical admissible partition of a length");
    part->add_option("--length", part_len, "cycle length")->required();
    part->add_flag("--json", part_json, "JSON output");

    auto* gadget = app.add_subcommand("gadget", "rewiring gadget tooling");
    gadget->require_subcommand(1);
    std::string gb_factor, gb_mode = "planted-resolvable", gb_out = "gadget";
    int gb_r = 1;
    std::uint64_t gb_seed = 0;
    auto* gbuild = gadget->add_subcommand("build", "build an absorber for a factor");
    gbuild->add_option("--factor", gb_factor, "factor file (OWP/1 factor)")->required();
    gbuild->add_option("--r", gb_r, "matchings per class pair")->required();
    gbuild->add_option("--mode", gb_mode, "planted-resolvable | matching-activation");
    gbuild->add_option("--seed", gb_seed, "builder seed")->default_val(0);
    gbuild->add_option("--out", gb_out, "output directory")->default_val("gadget");

    std::string ga_dir, ga_leftover, ga_out;
    double ga_timeout = 600;
    std::uint64_t ga_seed = 0;
    auto* gabsorb = gadget->add_subcommand("absorb", "decompose gadget minus a balanced leftover");
    gabsorb->add_option("--gadget", ga_dir, "gadget directory")->required();
    gabsorb->add_option("--leftover", ga_leftover, "leftover graph file")->required();
    gabsorb->add_option("--out", ga_out, "factor list output path");
    gabsorb->add_option("--timeout", ga_timeout, "seconds before giving up")->default_val(600.0);
    gabsorb->add_option("--seed", ga_seed, "seed")->default_val(0);

    std::string check_lemma;
    int check_n = 0;
    std::uint64_t check_seed = 1;
    auto* check = app.add_subcommand("check", "run a lemma property suite");
    check->add_option("lemma", check_lemma,
                      "rewiring|atoms|edge-stack|surgery|simple-alloc|good-matchings|"
                      "crossing-alloc|absorber")
        ->required();
    check->add_option("--n", check_n, "instance size hint");
    check->add_option("--seed", check_seed, "suite seed")->default_val(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve) return run_solve(sa);
        if (*verify) return run_verify(verify_path);
        if (*part) return run_partition(part_len, part_json);
        if (*gadget) {
            if (*gbuild) return run_gadget_build(gb_factor, gb_r, gb_mode, gb_seed, gb_out);
            if (*gabsorb) return run_gadget_absorb(ga_dir, ga_leftover, ga_out, ga_timeout, ga_seed);
        }
        if (*check) return run_check(check_lemma, check_n, check_seed);
    } catch (const parse_error& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 70;
    }
    return kExitUsage;
}
