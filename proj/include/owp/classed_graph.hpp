#ifndef OWP_CLASSED_GRAPH_HPP
#define OWP_CLASSED_GRAPH_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "owp/graph.hpp"

namespace owp {

// Vertex partition into labelled classes plus an oriented reduced graph on
// the class labels. Every edge of a conforming graph runs along an arc.
struct OrientedPartition {
    int num_classes = 0;
    std::vector<int> class_of;              // vertex -> class label
    std::set<std::pair<int, int>> arcs;     // oriented (from,to) class pairs

    bool has_arc(int x, int y) const { return arcs.count({x, y}) != 0; }

    int order() const { return int(class_of.size()); }

    std::vector<std::vector<Vertex>> class_members() const {
        std::vector<std::vector<Vertex>> m(num_classes);
        for (Vertex v = 0; v < order(); ++v) m[class_of[v]].push_back(v);
        return m;
    }

    // orientation of an undirected edge; (tail, head)
    std::pair<Vertex, Vertex> orient(const Edge& e) const {
        int cu = class_of[e.u], cv = class_of[e.v];
        if (has_arc(cu, cv)) return {e.u, e.v};
        if (has_arc(cv, cu)) return {e.v, e.u};
        throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") between classes not joined in the reduced digraph");
    }
};

struct BalanceProfile {
    std::vector<int> outdeg, indeg;
    std::optional<int> r;          // present iff d+(v) == d-(v) == r for all v
    Vertex witness = -1;           // an imbalanced vertex when r is absent

    bool balanced() const { return r.has_value(); }
};

// Per-vertex (outdeg, indeg) table of the orientation induced by the reduced
// digraph; reports r when the oriented graph is r-regular.
inline BalanceProfile balance_profile(const EdgeList& edges, const OrientedPartition& p) {
    BalanceProfile bp;
    bp.outdeg.assign(p.order(), 0);
    bp.indeg.assign(p.order(), 0);
    for (const Edge& e : edges) {
        auto [t, h] = p.orient(e);
        ++bp.outdeg[t];
        ++bp.indeg[h];
    }
    int r = p.order() > 0 ? bp.outdeg[0] : 0;
    for (Vertex v = 0; v < p.order(); ++v) {
        if (bp.outdeg[v] != r || bp.indeg[v] != r) {
            // not regular with the candidate r: either truly imbalanced at
            // some vertex, or regular with a different r is impossible since
            // vertex 0 pins the value
            bp.witness = v;
            bp.r.reset();
            return bp;
        }
    }
    bp.r = r;
    return bp;
}

} // namespace owp

#endif
