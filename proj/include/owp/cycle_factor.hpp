#ifndef OWP_CYCLE_FACTOR_HPP
#define OWP_CYCLE_FACTOR_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "owp/graph.hpp"

namespace owp {

// Isomorphism invariant of a 2-regular graph: the sorted multiset of its
// cycle lengths. Two cycle factors are isomorphic iff their types agree.
struct CycleType {
    std::vector<int> lengths; // sorted ascending, each >= 3

    CycleType() = default;
    explicit CycleType(std::vector<int> ls) : lengths(std::move(ls)) {
        std::sort(lengths.begin(), lengths.end());
        for (int l : lengths)
            if (l < 3) throw std::invalid_argument("cycle length < 3");
    }

    int order() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }
    bool operator==(const CycleType& o) const { return lengths == o.lengths; }
    bool operator!=(const CycleType& o) const { return !(*this == o); }
    bool operator<(const CycleType& o) const { return lengths < o.lengths; }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(lengths[i]);
        }
        return s;
    }
};

// Spanning 2-regular graph, given as vertex-disjoint cyclic vertex sequences.
struct CycleFactor {
    int n = 0;
    std::vector<std::vector<Vertex>> cycles;

    CycleFactor() = default;
    CycleFactor(int order, std::vector<std::vector<Vertex>> cs)
        : n(order), cycles(std::move(cs)) {
        validate();
    }

    void validate() const {
        std::vector<char> seen(n, 0);
        int covered = 0;
        for (const auto& c : cycles) {
            if (c.size() < 3)
                throw std::invalid_argument("cycle of length " + std::to_string(c.size()));
            for (Vertex v : c) {
                if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
                if (seen[v]) throw std::invalid_argument("repeated vertex " + std::to_string(v));
                seen[v] = 1;
                ++covered;
            }
        }
        if (covered != n) throw std::invalid_argument("factor does not span all vertices");
    }

    EdgeList edges() const {
        EdgeList out;
        out.reserve(n);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i)
                out.emplace_back(c[i], c[(i + 1) % c.size()]);
        return out;
    }

    EdgeSet edge_set() const { return EdgeSet::from_edges(n, edges()); }
};

inline CycleType cycle_type_of(const CycleFactor& f) {
    f.validate();
    std::vector<int> ls;
    ls.reserve(f.cycles.size());
    for (const auto& c : f.cycles) ls.push_back(int(c.size()));
    return CycleType(std::move(ls));
}

// Relabel vertices; used by the invariance property tests.
inline CycleFactor relabel(const CycleFactor& f, const std::vector<Vertex>& rho) {
    CycleFactor g;
    g.n = f.n;
    for (const auto& c : f.cycles) {
        std::vector<Vertex> cc;
        cc.reserve(c.size());
        for (Vertex v : c) cc.push_back(rho[v]);
        g.cycles.push_back(std::move(cc));
    }
    g.validate();
    return g;
}

// Requested decomposition: cycle types with multiplicities.
struct FactorSpec {
    std::vector<std::pair<CycleType, int>> entries;

    int factor_total() const {
        int t = 0;
        for (const auto& e : entries) t += e.second;
        return t;
    }

    void validate(int n) const {
        if (entries.empty()) throw std::invalid_argument("empty factor spec");
        for (const auto& e : entries) {
            if (e.second < 1) throw std::invalid_argument("multiplicity < 1");
            if (e.first.order() != n)
                throw std::invalid_argument("cycle type " + e.first.to_string() +
                                            " does not span order " + std::to_string(n));
        }
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ';';
            s += entries[i].first.to_string();
            s += 'x';
            s += std::to_string(entries[i].second);
        }
        return s;
    }
};

} // namespace owp

#endif
