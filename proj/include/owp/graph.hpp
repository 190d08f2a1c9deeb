#ifndef OWP_GRAPH_HPP
#define OWP_GRAPH_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "owp/bitset.hpp"

namespace owp {

using Vertex = int;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    Vertex u, v; // normalized u < v

    Edge() : u(0), v(0) {}
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("loop edge " + std::to_string(a));
    }
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

using EdgeList = std::vector<Edge>;

// rank of pair (u,v), u<v, in the lexicographic order of all pairs of [n]
inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int edge_index(int n, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline Edge edge_of_index(int n, int idx) {
    int u = 0;
    while (idx >= n - 1 - u) { idx -= n - 1 - u; ++u; }
    return Edge(u, u + 1 + idx);
}

// Edge set of an n-vertex simple graph, bit per (u<v) pair.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int n) : n_(n), bits_(pair_count(n)) {}

    int order() const { return n_; }
    int size() const { return bits_.count(); }
    bool empty() const { return bits_.empty(); }

    bool has(Vertex u, Vertex v) const { return bits_.test(edge_index(n_, u, v)); }
    bool has(const Edge& e) const { return has(e.u, e.v); }
    void add(Vertex u, Vertex v) { bits_.set(edge_index(n_, u, v)); }
    void add(const Edge& e) { add(e.u, e.v); }
    void remove(Vertex u, Vertex v) { bits_.reset(edge_index(n_, u, v)); }
    void remove(const Edge& e) { remove(e.u, e.v); }

    bool intersects(const EdgeSet& o) const { return bits_.intersects(o.bits_); }
    bool contains(const EdgeSet& o) const { return bits_.contains(o.bits_); }
    EdgeSet& operator|=(const EdgeSet& o) { bits_ |= o.bits_; return *this; }
    EdgeSet& operator-=(const EdgeSet& o) { bits_ -= o.bits_; return *this; }
    bool operator==(const EdgeSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }

    EdgeList edges() const {
        EdgeList out;
        out.reserve(size());
        bits_.for_each([&](int i) { out.push_back(edge_of_index(n_, i)); });
        return out;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(n_, 0);
        bits_.for_each([&](int i) {
            Edge e = edge_of_index(n_, i);
            ++d[e.u];
            ++d[e.v];
        });
        return d;
    }

    static EdgeSet from_edges(int n, const EdgeList& es) {
        EdgeSet s(n);
        for (const Edge& e : es) {
            if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
            if (s.has(e)) throw std::invalid_argument("duplicate edge");
            s.add(e);
        }
        return s;
    }

private:
    int n_ = 0;
    DynBitset bits_;
};

enum class HostKind { Complete, CompleteMinusPerfectMatching, Custom };

// Host graph of a decomposition instance.
struct HostGraph {
    int n = 0;
    HostKind kind = HostKind::Custom;
    EdgeSet edges;

    static HostGraph complete(int n) {
        HostGraph h;
        h.n = n;
        h.kind = HostKind::Complete;
        h.edges = EdgeSet(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) h.edges.add(u, v);
        return h;
    }

    // K_n minus the matching (0,1)(2,3)...; n must be even
    static HostGraph complete_minus_pm(int n) {
        if (n % 2 != 0)
            throw std::invalid_argument("complete-minus-perfect-matching needs even order");
        HostGraph h = complete(n);
        h.kind = HostKind::CompleteMinusPerfectMatching;
        for (int u = 0; u < n; u += 2) h.edges.remove(u, u + 1);
        return h;
    }

    static HostGraph custom(int n, const EdgeList& es) {
        HostGraph h;
        h.n = n;
        h.kind = HostKind::Custom;
        h.edges = EdgeSet::from_edges(n, es);
        return h;
    }
};

// Adjacency bitsets, the workhorse of the predicates and searches.
class AdjacencyView {
public:
    AdjacencyView(int n, const EdgeList& es) : n_(n), rows_(n, DynBitset(n)) {
        for (const Edge& e : es) {
            rows_[e.u].set(e.v);
            rows_[e.v].set(e.u);
        }
    }
    explicit AdjacencyView(const EdgeSet& s) : AdjacencyView(s.order(), s.edges()) {}

    int order() const { return n_; }
    const DynBitset& neighbours(Vertex v) const { return rows_[v]; }
    bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(v); }
    int degree(Vertex v) const { return rows_[v].count(); }

private:
    int n_;
    std::vector<DynBitset> rows_;
};

} // namespace owp

#endif
