#ifndef OWP_REWIRING_HPP
#define OWP_REWIRING_HPP

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "owp/fpartition.hpp"

namespace owp {

// A cycle of a partite factor, one vertex per class in class order.
using PartiteCycle = std::vector<Vertex>;
// A partite C_a-factor: vertex-disjoint partite cycles covering all classes.
using PartiteFactor = std::vector<PartiteCycle>;

inline EdgeList partite_factor_edges(const PartiteFactor& pf) {
    EdgeList es;
    for (const auto& c : pf)
        for (std::size_t i = 0; i < c.size(); ++i) es.emplace_back(c[i], c[(i + 1) % c.size()]);
    return es;
}

// F-rewiring (pi, pi*): pi permutes Y with one cycle per cycle of F, and
// pi* transports edges between the R-universe and the Rhat-universe by
// mapping yv to pi(y)v whenever v lies in a second path class.
struct Rewiring {
    int n = 0;
    std::vector<int> class_of;                 // copy of the F-partition labels
    std::vector<Vertex> pi, pi_inv;            // identity off Y
    std::vector<std::vector<Vertex>> blocks;   // Y_C per cycle of F, in pi order

    bool in_E_inf(const Edge& e) const {
        static const auto arcs = reduced_arcs_R();
        int cu = class_of[e.u], cv = class_of[e.v];
        return arcs.count({cu, cv}) || arcs.count({cv, cu});
    }
    bool in_E_circ(const Edge& e) const {
        static const auto arcs = reduced_arcs_Rhat();
        int hu = hat_of(class_of[e.u]), hv = hat_of(class_of[e.v]);
        return arcs.count({hu, hv}) || arcs.count({hv, hu});
    }

    // pi*: moves an R-universe edge to the Rhat-universe
    Edge star(const Edge& e) const {
        if (!in_E_inf(e))
            throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") outside the R edge universe");
        for (auto [y, v] : {std::pair{e.u, e.v}, {e.v, e.u}}) {
            int cy = class_of[y], cv2 = class_of[v];
            if (!fp_is_y(cy) || fp_is_y(cv2)) continue;
            auto [a, b] = fp_decode(cy);
            auto [c, i] = fp_decode(cv2);
            if (i == 2 && c == b) return Edge(pi[y], v);
        }
        return e;
    }

    // pi*^{-1}: moves an Rhat-universe edge back to the R-universe
    Edge unstar(const Edge& e) const {
        if (!in_E_circ(e))
            throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") outside the Rhat edge universe");
        for (auto [y, v] : {std::pair{e.u, e.v}, {e.v, e.u}}) {
            int cy = class_of[y], cv2 = class_of[v];
            if (!fp_is_y(cy) || fp_is_y(cv2)) continue;
            auto [b, b2] = fp_decode(cy);
            auto [c, i] = fp_decode(cv2);
            if (i == 2 && c == b) return Edge(pi_inv[y], v);
        }
        return e;
    }
};

inline EdgeList rewire(const EdgeList& g, const Rewiring& rw) {
    EdgeList out;
    out.reserve(g.size());
    for (const Edge& e : g) out.push_back(rw.star(e));
    return out;
}

inline EdgeList unrewire(const EdgeList& g, const Rewiring& rw) {
    EdgeList out;
    out.reserve(g.size());
    for (const Edge& e : g) out.push_back(rw.unstar(e));
    return out;
}

// One cyclic permutation per cycle of F on its block Y_C; Y_C takes
// c^C(a,b) vertices from each X1_{a,b}. Block picking is deterministic
// given the seed (seed 0 keeps the ascending vertex order).
inline Rewiring build_rewiring(const CycleFactor& f, const FPartition& fp, std::uint64_t seed = 0) {
    Rewiring rw;
    rw.n = fp.n;
    rw.class_of = fp.class_of;
    rw.pi.resize(fp.n);
    rw.pi_inv.resize(fp.n);
    for (Vertex v = 0; v < fp.n; ++v) rw.pi[v] = rw.pi_inv[v] = v;

    std::array<std::vector<Vertex>, kNumClasses> pools;
    for (int a = 3; a <= 5; ++a)
        for (int b = 3; b <= 5; ++b) {
            int cls = fp_y_class(a, b);
            pools[cls] = fp.members[cls];
            if (seed != 0) {
                std::mt19937_64 rng(seed * 1099511628211ull + cls);
                std::shuffle(pools[cls].begin(), pools[cls].end(), rng);
            }
        }
    std::array<std::size_t, kNumClasses> cursor{};

    for (std::size_t k = 0; k < f.cycles.size(); ++k) {
        const auto& parts = fp.counts.per_cycle[k].parts;
        const int t = int(parts.size());
        std::vector<Vertex> block;
        block.reserve(t);
        for (int i = 0; i < t; ++i) {
            int cls = fp_y_class(parts[i], parts[(i + 1) % t]);
            if (cursor[cls] >= pools[cls].size())
                throw std::logic_error("rewiring block sizes inconsistent with count tables");
            block.push_back(pools[cls][cursor[cls]++]);
        }
        for (int i = 0; i < t; ++i) {
            rw.pi[block[i]] = block[(i + 1) % t];
            rw.pi_inv[block[(i + 1) % t]] = block[i];
        }
        rw.blocks.push_back(std::move(block));
    }
    for (int cls = 0; cls < kNumClasses; ++cls)
        if (fp_is_y(cls) && cursor[cls] != pools[cls].size())
            throw std::logic_error("rewiring left unused Y vertices");
    return rw;
}

// Extract the cycles of a 2-regular spanning edge set.
inline CycleFactor cycles_from_two_regular(int n, const EdgeList& edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (Vertex v = 0; v < n; ++v)
        if (adj[v].size() != 2)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(adj[v].size()) + ", not 2");
    CycleFactor f;
    f.n = n;
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> cyc;
        Vertex prev = -1, cur = s;
        while (!seen[cur]) {
            seen[cur] = 1;
            cyc.push_back(cur);
            Vertex nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        if (cur != s) throw std::invalid_argument("edge set is not a disjoint union of cycles");
        f.cycles.push_back(std::move(cyc));
    }
    f.validate();
    return f;
}

inline void validate_partite_factor(const PartiteFactor& pf, const FPartition& fp, int a) {
    std::vector<char> used(fp.n, 0);
    int covered = 0;
    for (const auto& cyc : pf) {
        if (int(cyc.size()) != a)
            throw std::invalid_argument("partite cycle length != " + std::to_string(a));
        for (int i = 0; i < a; ++i) {
            Vertex v = cyc[i];
            auto [ha, hi] = hat_decode(hat_of(fp.class_of[v]));
            if (ha != a || hi != i + 1)
                throw std::invalid_argument("partite cycle does not follow the class order");
            if (used[v]) throw std::invalid_argument("vertex reused in partite factor");
            used[v] = 1;
            ++covered;
        }
    }
    int expect = 0;
    for (int i = 1; i <= a; ++i) expect += int(fp.hat_members(a, i).size());
    if (covered != expect)
        throw std::invalid_argument("partite factor does not cover its blowup classes");
}

// pi*^{-1} of the union of one partite C_a-factor per a; isomorphic to F by
// the rewiring lemma, which the cycle extraction makes explicit.
inline CycleFactor merge_partite_factors(const PartiteFactor& h3, const PartiteFactor& h4,
                                         const PartiteFactor& h5, const FPartition& fp,
                                         const Rewiring& rw) {
    validate_partite_factor(h3, fp, 3);
    validate_partite_factor(h4, fp, 4);
    validate_partite_factor(h5, fp, 5);
    EdgeList all = partite_factor_edges(h3);
    for (const auto& pf : {h4, h5}) {
        EdgeList es = partite_factor_edges(pf);
        all.insert(all.end(), es.begin(), es.end());
    }
    return cycles_from_two_regular(fp.n, unrewire(all, rw));
}

} // namespace owp

#endif
