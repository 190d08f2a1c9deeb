#ifndef OWP_GROUPING_HPP
#define OWP_GROUPING_HPP

#include <array>
#include <map>
#include <vector>

#include "owp/atoms.hpp"
#include "owp/matching_sequence.hpp"

namespace owp {

struct GroupedMatching {
    EdgeList edges;
    std::vector<Atom> atoms;
};

// Split per-class regular leftovers into internally balanced matchings: each
// class's edges are ordered by matching_sequence and consumed stack-wise,
// atoms are drawn while available, and a matching is closed once it reaches
// the cap or the next atom would collide with it.
inline std::vector<GroupedMatching> group_atoms(
    const std::map<int, EdgeList>& leftover_per_class, const FPartition& fp, int cap) {
    std::array<std::vector<Edge>, kNumClasses> stack;
    std::array<std::size_t, kNumClasses> top{};
    long long remaining = 0;

    for (const auto& [cls, edges] : leftover_per_class) {
        if (cls < 0 || cls >= kNumClasses) throw std::invalid_argument("unknown class label");
        if (edges.empty()) continue;
        for (const Edge& e : edges)
            if (fp.class_of[e.u] != cls || fp.class_of[e.v] != cls)
                throw std::invalid_argument("leftover edge outside its class");
        // regularity on the class, required by the edge-stack fact
        {
            std::map<Vertex, int> deg;
            for (const Edge& e : edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
            int r = deg.begin()->second;
            for (auto [v, d] : deg)
                if (d != r) throw std::invalid_argument("class leftover is not regular");
        }
        // order within the class; vertices renumbered to a dense range
        std::vector<Vertex> verts = fp.members[cls];
        std::map<Vertex, int> local;
        for (int i = 0; i < int(verts.size()); ++i) local[verts[i]] = i;
        EdgeList dense;
        dense.reserve(edges.size());
        for (const Edge& e : edges) dense.emplace_back(local.at(e.u), local.at(e.v));
        EdgeList ordered = matching_sequence(int(verts.size()), dense);
        for (const Edge& e : ordered) stack[cls].emplace_back(verts[e.u], verts[e.v]);
        remaining += (long long)edges.size();
    }

    // union of per-class regular graphs is internally balanced; sanity-check
    {
        EdgeList all;
        for (int cls = 0; cls < kNumClasses; ++cls)
            all.insert(all.end(), stack[cls].begin(), stack[cls].end());
        BalanceCheck chk = is_internally_balanced(all, fp);
        if (!chk.ok)
            throw std::invalid_argument("leftovers are not internally balanced: " + chk.violated);
    }

    std::vector<GroupedMatching> out;
    GroupedMatching cur;
    std::vector<char> used(fp.n, 0);

    auto flush = [&]() {
        if (!cur.edges.empty()) {
            out.push_back(std::move(cur));
            cur = GroupedMatching{};
            std::fill(used.begin(), used.end(), 0);
        }
    };

    while (remaining > 0) {
        // first available atom kind
        const std::pair<int, int>* pick = nullptr;
        for (const auto& kind : atom_kinds()) {
            bool have = true;
            for (int cls : Atom::classes_for(kind.first, kind.second))
                have &= top[cls] < stack[cls].size();
            if (have) {
                pick = &kind;
                break;
            }
        }
        if (!pick) throw std::logic_error("no atom available though edges remain");

        auto need = Atom::classes_for(pick->first, pick->second);
        bool collides = false;
        for (int cls : need) {
            const Edge& e = stack[cls][top[cls]];
            collides |= used[e.u] || used[e.v];
        }
        if (collides) {
            flush();
            continue; // fresh matching; the same atom cannot collide again
        }
        Atom at;
        at.a = pick->first;
        at.b = pick->second;
        for (int cls : need) {
            Edge e = stack[cls][top[cls]++];
            at.placed.emplace_back(cls, e);
            cur.edges.push_back(e);
            used[e.u] = used[e.v] = 1;
            --remaining;
        }
        cur.atoms.push_back(std::move(at));
        if (int(cur.edges.size()) >= cap) flush();
    }
    flush();
    return out;
}

} // namespace owp

#endif
