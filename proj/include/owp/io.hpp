#ifndef OWP_IO_HPP
#define OWP_IO_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "owp/absorber.hpp"
#include "owp/cycle_factor.hpp"
#include "owp/graph.hpp"
#include "owp/partitions.hpp"

namespace owp {

// All formats are LF-only ASCII text. Writers are canonical: a parsed file
// written back is byte-identical.

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write " + path);
    out << content;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline int parse_header_int(const std::string& line, const std::string& key) {
    if (line.rfind(key + "=", 0) != 0) throw parse_error("expected " + key + "=..., got: " + line);
    try {
        return std::stoi(line.substr(key.size() + 1));
    } catch (...) {
        throw parse_error("bad integer in: " + line);
    }
}

// ---- OWP/1 graph ----------------------------------------------------------

inline std::string format_graph(const HostGraph& g) {
    std::string out = "OWP/1 graph\nn=" + std::to_string(g.n) + "\n";
    for (const Edge& e : g.edges.edges())
        out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

inline HostGraph parse_graph(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 2 || lines[0] != "OWP/1 graph")
        throw parse_error("missing OWP/1 graph header");
    int n = parse_header_int(lines[1], "n");
    EdgeList es;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::istringstream ss(lines[i]);
        int u, v;
        if (!(ss >> u >> v)) throw parse_error("bad edge line: " + lines[i]);
        if (!(u < v)) throw parse_error("edges must be written u v with u < v: " + lines[i]);
        es.emplace_back(u, v);
    }
    return HostGraph::custom(n, es);
}

// ---- factors and certificates ---------------------------------------------

inline std::string format_factor_line(const CycleFactor& f) {
    std::string out;
    for (const auto& c : f.cycles) {
        out += "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += " ";
            out += std::to_string(c[i]);
        }
        out += ")";
    }
    return out;
}

inline CycleFactor parse_factor_line(const std::string& line, int n) {
    CycleFactor f;
    f.n = n;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] != '(') throw parse_error("expected '(' in factor line: " + line);
        std::size_t close = line.find(')', i);
        if (close == std::string::npos) throw parse_error("unbalanced '(' in factor line");
        std::istringstream ss(line.substr(i + 1, close - i - 1));
        std::vector<Vertex> cyc;
        int v;
        while (ss >> v) cyc.push_back(v);
        if (cyc.empty()) throw parse_error("empty cycle in factor line");
        f.cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    f.validate();
    return f;
}

inline std::string format_spec(const FactorSpec& spec) { return spec.to_string(); }

inline FactorSpec parse_spec(const std::string& text) {
    FactorSpec spec;
    std::istringstream entries(text);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
        auto x = entry.rfind('x');
        if (x == std::string::npos) throw parse_error("spec entry needs <type>x<mult>: " + entry);
        std::vector<int> lens;
        std::istringstream lss(entry.substr(0, x));
        std::string tok;
        while (std::getline(lss, tok, ',')) lens.push_back(std::stoi(tok));
        int mult = std::stoi(entry.substr(x + 1));
        spec.entries.emplace_back(CycleType(lens), mult);
    }
    if (spec.entries.empty()) throw parse_error("empty spec");
    return spec;
}

struct Certificate {
    int n = 0;
    std::string host_field; // complete | complete-minus-pm | file:<path>
    FactorSpec spec;
    std::vector<CycleFactor> factors;

    HostGraph load_host() const {
        if (host_field == "complete") return HostGraph::complete(n);
        if (host_field == "complete-minus-pm") return HostGraph::complete_minus_pm(n);
        if (host_field.rfind("file:", 0) == 0) {
            HostGraph g = parse_graph(read_text_file(host_field.substr(5)));
            if (g.n != n) throw parse_error("host file order mismatch");
            return g;
        }
        throw parse_error("unknown host field: " + host_field);
    }
};

inline std::string format_certificate(const Certificate& c) {
    std::string out = "OWP/1 cert\nn=" + std::to_string(c.n) + "\nhost=" + c.host_field +
                      "\nspec=" + format_spec(c.spec) + "\n";
    for (const auto& f : c.factors) out += format_factor_line(f) + "\n";
    return out;
}

inline Certificate parse_certificate(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 4 || lines[0] != "OWP/1 cert") throw parse_error("missing OWP/1 cert header");
    Certificate c;
    c.n = parse_header_int(lines[1], "n");
    if (lines[2].rfind("host=", 0) != 0) throw parse_error("expected host=:" + lines[2]);
    c.host_field = lines[2].substr(5);
    if (lines[3].rfind("spec=", 0) != 0) throw parse_error("expected spec=:" + lines[3]);
    c.spec = parse_spec(lines[3].substr(5));
    for (std::size_t i = 4; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        c.factors.push_back(parse_factor_line(lines[i], c.n));
    }
    return c;
}

struct FactorFile {
    int n = 0;
    CycleFactor factor;
};

inline std::string format_factor_file(const CycleFactor& f) {
    return "OWP/1 factor\nn=" + std::to_string(f.n) + "\n" + format_factor_line(f) + "\n";
}

inline CycleFactor parse_factor_file(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 3 || lines[0] != "OWP/1 factor")
        throw parse_error("missing OWP/1 factor header");
    int n = parse_header_int(lines[1], "n");
    return parse_factor_line(lines[2], n);
}

// ---- gadget sidecar --------------------------------------------------------

inline std::string format_permutation_cycles(const std::vector<Vertex>& pi,
                                             const std::vector<Vertex>& domain) {
    std::vector<char> seen(pi.size(), 0);
    std::string out;
    for (Vertex s : domain) {
        if (seen[s]) continue;
        out += "(";
        Vertex v = s;
        bool first = true;
        while (!seen[v]) {
            seen[v] = 1;
            if (!first) out += " ";
            out += std::to_string(v);
            first = false;
            v = pi[v];
        }
        out += ")";
    }
    return out;
}

inline std::string format_gadget_sidecar(const Absorber& ab, const CycleFactor& f) {
    std::string out = "OWP/1 gadget\nn=" + std::to_string(ab.fp.n) + "\nr=" + std::to_string(ab.r) +
                      "\nmode=";
    out += ab.mode == BlownCycleMode::PlantedResolvable ? "planted-resolvable" : "matching-activation";
    out += "\nfactor " + format_factor_line(f) + "\n";
    for (int cls = 0; cls < kNumClasses; ++cls) {
        out += "class " + fp_class_name(cls) + ":";
        for (Vertex v : ab.fp.members[cls]) out += " " + std::to_string(v);
        out += "\n";
    }
    out += "pi " + format_permutation_cycles(ab.rw.pi, ab.fp.y_vertices()) + "\n";
    for (int a = 3; a <= 5; ++a)
        for (std::size_t k = 0; k < ab.planted[a - 3].size(); ++k) {
            out += "planted " + std::to_string(a) + " " + std::to_string(k) + ": ";
            std::string cyc;
            for (const auto& c : ab.planted[a - 3][k]) {
                cyc += "(";
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (i) cyc += " ";
                    cyc += std::to_string(c[i]);
                }
                cyc += ")";
            }
            out += cyc + "\n";
        }
    return out;
}

inline Absorber parse_gadget_sidecar(const std::string& text, const HostGraph& graph) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "OWP/1 gadget") throw parse_error("missing OWP/1 gadget header");
    Absorber ab;
    ab.fp.n = parse_header_int(lines[1], "n");
    ab.r = parse_header_int(lines[2], "r");
    if (lines[3] == "mode=planted-resolvable") ab.mode = BlownCycleMode::PlantedResolvable;
    else if (lines[3] == "mode=matching-activation") ab.mode = BlownCycleMode::MatchingActivation;
    else throw parse_error("unknown mode line: " + lines[3]);

    ab.fp.class_of.assign(ab.fp.n, -1);
    ab.rw.n = ab.fp.n;
    ab.rw.pi.resize(ab.fp.n);
    ab.rw.pi_inv.resize(ab.fp.n);
    for (Vertex v = 0; v < ab.fp.n; ++v) ab.rw.pi[v] = ab.rw.pi_inv[v] = v;

    std::map<std::string, int> name_to_class;
    for (int cls = 0; cls < kNumClasses; ++cls) name_to_class[fp_class_name(cls)] = cls;

    for (std::size_t i = 4; i < lines.size(); ++i) {
        const std::string& ln = lines[i];
        if (ln.empty() || ln.rfind("factor ", 0) == 0) continue;
        if (ln.rfind("class ", 0) == 0) {
            auto colon = ln.find(':');
            if (colon == std::string::npos) throw parse_error("bad class line: " + ln);
            std::string name = ln.substr(6, colon - 6);
            auto it = name_to_class.find(name);
            if (it == name_to_class.end()) throw parse_error("unknown class " + name);
            std::istringstream ss(ln.substr(colon + 1));
            Vertex v;
            while (ss >> v) {
                ab.fp.members[it->second].push_back(v);
                ab.fp.class_of[v] = it->second;
            }
        } else if (ln.rfind("pi ", 0) == 0) {
            std::size_t p = 3;
            while (p < ln.size()) {
                if (ln[p] != '(') throw parse_error("bad pi line");
                std::size_t close = ln.find(')', p);
                std::istringstream ss(ln.substr(p + 1, close - p - 1));
                std::vector<Vertex> cyc;
                Vertex v;
                while (ss >> v) cyc.push_back(v);
                for (std::size_t k = 0; k < cyc.size(); ++k) {
                    ab.rw.pi[cyc[k]] = cyc[(k + 1) % cyc.size()];
                    ab.rw.pi_inv[cyc[(k + 1) % cyc.size()]] = cyc[k];
                }
                ab.rw.blocks.push_back(std::move(cyc));
                p = close + 1;
            }
        } else if (ln.rfind("planted ", 0) == 0) {
            std::istringstream hd(ln.substr(8));
            int a;
            std::size_t k;
            char colon;
            if (!(hd >> a >> k >> colon)) throw parse_error("bad planted line: " + ln);
            std::string rest;
            std::getline(hd, rest);
            PartiteFactor pf;
            std::size_t p = 0;
            while (p < rest.size()) {
                if (rest[p] == ' ') { ++p; continue; }
                if (rest[p] != '(') throw parse_error("bad planted cycles: " + rest);
                std::size_t close = rest.find(')', p);
                std::istringstream ss(rest.substr(p + 1, close - p - 1));
                PartiteCycle cyc;
                Vertex v;
                while (ss >> v) cyc.push_back(v);
                pf.push_back(std::move(cyc));
                p = close + 1;
            }
            if (ab.planted[a - 3].size() <= k) ab.planted[a - 3].resize(k + 1);
            ab.planted[a - 3][k] = std::move(pf);
        } else {
            throw parse_error("unknown gadget line: " + ln);
        }
    }
    for (Vertex v = 0; v < ab.fp.n; ++v)
        if (ab.fp.class_of[v] < 0) throw parse_error("vertex not covered by classes");
    ab.rw.class_of = ab.fp.class_of;
    ab.edges = graph.edges.edges();
    return ab;
}

// ---- run ledger -------------------------------------------------------------

struct RunLedger {
    std::string command;
    std::uint64_t seed = 0;
    std::string verdict;
    std::uint64_t nodes = 0;
    double wall_seconds = 0;
    int exit_code = 0;
    std::vector<std::pair<std::string, std::string>> extra;

    std::string format() const {
        std::string out;
        out += "command=" + command + "\n";
        out += "seed=" + std::to_string(seed) + "\n";
        out += "verdict=" + verdict + "\n";
        out += "nodes=" + std::to_string(nodes) + "\n";
        out += "wall_ms=" + std::to_string((long long)(wall_seconds * 1000)) + "\n";
        for (const auto& [k, v] : extra) out += k + "=" + v + "\n";
        out += "exit=" + std::to_string(exit_code) + "\n";
        return out;
    }
};

} // namespace owp

#endif
