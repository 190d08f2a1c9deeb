#ifndef OWP_PREDICATES_HPP
#define OWP_PREDICATES_HPP

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "owp/graph.hpp"

namespace owp {

// Symmetric density matrix over class labels, entries in [0,1].
struct DensityMatrix {
    int t = 0;
    std::vector<double> d; // row-major t*t

    DensityMatrix() = default;
    explicit DensityMatrix(int classes, double fill = 0.0) : t(classes), d(classes * classes, fill) {}

    double& at(int i, int j) { return d[i * t + j]; }
    double at(int i, int j) const { return d[i * t + j]; }

    void set(int i, int j, double val) {
        at(i, j) = val;
        at(j, i) = val;
    }

    static DensityMatrix uniform(int classes, double val) { return DensityMatrix(classes, val); }
};

struct TypicalityReport {
    bool ok = true;
    std::vector<Vertex> worst_set; // the violating S
    int worst_class = -1;
    double observed = 0, expected = 0;
};

// (eps,s,D)-typicality: for every vertex set S with |S| <= s and every class
// i, the common neighbourhood within V_i has size (1 +- eps) |V_i| prod D.
// Cost grows as n^s; s is capped at 3.
inline TypicalityReport is_typical(int n, const EdgeList& edges, const std::vector<int>& class_of,
                                   int num_classes, double eps, int s, const DensityMatrix& D) {
    if (s < 0 || s > 3) throw std::invalid_argument("typicality check supports 0 <= s <= 3");
    if (D.t != num_classes) throw std::invalid_argument("density matrix size mismatch");
    AdjacencyView adj(n, edges);

    std::vector<DynBitset> class_bits(num_classes, DynBitset(n));
    std::vector<int> class_size(num_classes, 0);
    for (Vertex v = 0; v < n; ++v) {
        class_bits[class_of[v]].set(v);
        ++class_size[class_of[v]];
    }

    TypicalityReport rep;
    double worst_excess = 0;

    auto check_set = [&](const std::vector<Vertex>& S) {
        DynBitset common(n);
        for (int i = 0; i < n; ++i) common.set(i);
        for (Vertex v : S) common &= adj.neighbours(v);
        for (int c = 0; c < num_classes; ++c) {
            double expect = class_size[c];
            for (Vertex v : S) expect *= D.at(class_of[v], c);
            int got = (common & class_bits[c]).count();
            double lo = (1 - eps) * expect, hi = (1 + eps) * expect;
            if (got + 1e-9 < lo || got - 1e-9 > hi) {
                double excess = std::max(lo - got, got - hi);
                if (rep.ok || excess > worst_excess) {
                    worst_excess = excess;
                    rep.worst_set = S;
                    rep.worst_class = c;
                    rep.observed = got;
                    rep.expected = expect;
                }
                rep.ok = false;
            }
        }
    };

    check_set({});
    if (s >= 1)
        for (Vertex a = 0; a < n; ++a) check_set({a});
    if (s >= 2)
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) check_set({a, b});
    if (s >= 3)
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                for (Vertex c = b + 1; c < n; ++c) check_set({a, b, c});
    return rep;
}

// (eps,d)-quasirandomness of a graph: degrees (d +- eps)n and codegrees
// (d^2 +- eps)n for all pairs.
inline bool is_quasirandom(int n, const EdgeList& edges, double eps, double d) {
    AdjacencyView adj(n, edges);
    for (Vertex v = 0; v < n; ++v) {
        double dv = adj.degree(v);
        if (dv < (d - eps) * n - 1e-9 || dv > (d + eps) * n + 1e-9) return false;
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            double co = (adj.neighbours(u) & adj.neighbours(v)).count();
            if (co < (d * d - eps) * n - 1e-9 || co > (d * d + eps) * n + 1e-9) return false;
        }
    return true;
}

// Bipartite variant on a pair (A,B): degrees and codegrees measured into the
// opposite side.
inline bool is_quasirandom_pair(const EdgeList& edges, const std::vector<Vertex>& A,
                                const std::vector<Vertex>& B, double eps, double d) {
    int n = 0;
    for (Vertex v : A) n = std::max(n, v + 1);
    for (Vertex v : B) n = std::max(n, v + 1);
    for (const Edge& e : edges) n = std::max(n, e.v + 1);
    AdjacencyView adj(n, edges);
    DynBitset inA(n), inB(n);
    for (Vertex v : A) inA.set(v);
    for (Vertex v : B) inB.set(v);

    auto side_ok = [&](const std::vector<Vertex>& S, const DynBitset& other, int other_size) {
        for (Vertex v : S) {
            double dv = (adj.neighbours(v) & other).count();
            if (dv < (d - eps) * other_size - 1e-9 || dv > (d + eps) * other_size + 1e-9)
                return false;
        }
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = i + 1; j < S.size(); ++j) {
                double co = (adj.neighbours(S[i]) & adj.neighbours(S[j]) & other).count();
                if (co < (d * d - eps) * other_size - 1e-9 ||
                    co > (d * d + eps) * other_size + 1e-9)
                    return false;
            }
        return true;
    };
    return side_ok(A, inB, int(B.size())) && side_ok(B, inA, int(A.size()));
}

// (H,sigma)-divisibility, the necessary condition for a partite
// H-decomposition: a single m with e_G(V_i,V_j) = m e_H(P_i,P_j), and at
// every vertex a nonnegative integer combination of pattern degrees matching
// the class degrees. Condition (ii) is decided by bounded enumeration.
inline bool is_divisible(int n, const EdgeList& g_edges, const std::vector<int>& g_class,
                         int t, int h_order, const EdgeList& h_edges,
                         const std::vector<int>& sigma) {
    // pairwise edge counts; diagonal counts e(V_i,V_i) = 2 e(V_i)
    std::vector<long long> eg(t * t, 0), eh(t * t, 0);
    for (const Edge& e : g_edges) {
        int a = g_class[e.u], b = g_class[e.v];
        ++eg[a * t + b];
        if (a != b) ++eg[b * t + a]; else ++eg[a * t + a];
    }
    for (const Edge& e : h_edges) {
        int a = sigma[e.u], b = sigma[e.v];
        ++eh[a * t + b];
        if (a != b) ++eh[b * t + a]; else ++eh[a * t + a];
    }

    // (i) a single multiplier m
    long long m = -1;
    for (int ij = 0; ij < t * t; ++ij) {
        if (eh[ij] == 0) {
            if (eg[ij] != 0) return false;
        } else {
            if (eg[ij] % eh[ij] != 0) return false;
            long long q = eg[ij] / eh[ij];
            if (m == -1) m = q;
            else if (m != q) return false;
        }
    }

    // (ii) per-vertex degree combinations
    std::vector<std::vector<int>> h_class_members(t);
    for (int x = 0; x < h_order; ++x) h_class_members[sigma[x]].push_back(x);

    // d_H(x, P_j) for each pattern vertex x
    std::vector<std::vector<int>> hdeg(h_order, std::vector<int>(t, 0));
    for (const Edge& e : h_edges) {
        ++hdeg[e.u][sigma[e.v]];
        ++hdeg[e.v][sigma[e.u]];
    }
    std::vector<std::vector<int>> gdeg(n, std::vector<int>(t, 0));
    for (const Edge& e : g_edges) {
        ++gdeg[e.u][g_class[e.v]];
        ++gdeg[e.v][g_class[e.u]];
    }

    for (Vertex v = 0; v < n; ++v) {
        int ci = g_class[v];
        const auto& pats = h_class_members[ci];
        const auto& target = gdeg[v];
        int bound = 0;
        for (int j = 0; j < t; ++j) bound = std::max(bound, target[j]);

        // DFS over coefficient vectors (a_x), each <= bound
        std::vector<int> remaining = target;
        bool found = false;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (found) return;
            bool zero = true;
            for (int j = 0; j < t; ++j) zero &= remaining[j] == 0;
            if (zero) { found = true; return; }
            if (k == pats.size()) return;
            const auto& dx = hdeg[pats[k]];
            int maxa = bound;
            for (int j = 0; j < t; ++j)
                if (dx[j] > 0) maxa = std::min(maxa, remaining[j] / dx[j]);
            for (int a = maxa; a >= 0 && !found; --a) {
                for (int j = 0; j < t; ++j) remaining[j] -= a * dx[j];
                rec(k + 1);
                for (int j = 0; j < t; ++j) remaining[j] += a * dx[j];
            }
        };
        rec(0);
        if (!found) return false;
    }
    return true;
}

} // namespace owp

#endif
