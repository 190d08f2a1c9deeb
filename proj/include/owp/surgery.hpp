#ifndef OWP_SURGERY_HPP
#define OWP_SURGERY_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "owp/atoms.hpp"
#include "owp/fpartition.hpp"

namespace owp {

// Atom with an orientation on each edge; tails and heads drive the
// prescribed embedding of the surgery.
struct OrientedAtom {
    int a = 0, b = 0;
    std::vector<std::tuple<int, Vertex, Vertex>> placed; // (class, tail, head)

    int edge_count() const { return a + b; }

    static OrientedAtom from_atom(const Atom& at) {
        OrientedAtom o;
        o.a = at.a;
        o.b = at.b;
        for (const auto& [cls, e] : at.placed) o.placed.emplace_back(cls, e.u, e.v);
        return o;
    }
};

// oriented class cycle D_ell in R
inline std::vector<int> d_cycle_classes(int a, int b) {
    std::vector<int> d;
    if (b == 0) {
        d.push_back(fp_y_class(a, a));
        for (int i = 2; i <= a; ++i) d.push_back(fp_path_class(a, i));
    } else {
        d.push_back(fp_y_class(b, a));
        for (int i = 2; i <= a; ++i) d.push_back(fp_path_class(a, i));
        d.push_back(fp_y_class(a, b));
        for (int i = 2; i <= b; ++i) d.push_back(fp_path_class(b, i));
    }
    return d;
}

// Subpath of a cycle of F whose class image winds five times around D_ell.
struct Target {
    int ell = 0;
    std::vector<Vertex> path; // 5*ell + 1 vertices in walk order
};

// Locate vertex-disjoint targets, one per requested ell. Every appearance of
// (a)^6 (resp. (a,b)^6) in a cycle's partition yields an a-target (resp. an
// (a+b)-target): the run from the last vertex of the first window segment
// through the five following segments.
inline std::vector<Target> find_targets(const CycleFactor& f, const FPartition& fp,
                                        const FHomomorphism& hom,
                                        const std::vector<int>& requested_ells) {
    std::vector<std::vector<char>> taken(f.cycles.size());
    for (std::size_t k = 0; k < f.cycles.size(); ++k) taken[k].assign(f.cycles[k].size(), 0);

    auto patterns_for = [](int ell) -> std::vector<std::vector<int>> {
        switch (ell) {
            case 3: case 4: case 5: return {{ell}};
            case 7: return {{3, 4}, {4, 3}};
            case 8: return {{3, 5}, {5, 3}};
            case 9: return {{4, 5}, {5, 4}};
            default: throw std::invalid_argument("no D-cycle of length " + std::to_string(ell));
        }
    };

    std::vector<Target> out;
    for (int ell : requested_ells) {
        bool placed = false;
        for (std::size_t k = 0; k < f.cycles.size() && !placed; ++k) {
            const auto& parts = fp.counts.per_cycle[k].parts;
            const auto& cyc = f.cycles[k];
            const int t = int(parts.size());
            const int L = int(cyc.size());
            for (auto pat : patterns_for(ell)) {
                // six repetitions of the base pattern
                std::vector<int> want;
                for (int rep = 0; rep < 6; ++rep) want.insert(want.end(), pat.begin(), pat.end());
                for (int i = 0; i < t && !placed; ++i) {
                    bool match = true;
                    for (std::size_t j = 0; j < want.size() && match; ++j)
                        match = parts[(i + 1 + j) % t] == want[j];
                    if (!match) continue;
                    int a1 = parts[(i + 1) % t];
                    int p0 = hom.segment_start[k][(i + 1) % t] + a1 - 1;
                    std::vector<int> positions(5 * ell + 1);
                    bool free = true;
                    for (int j = 0; j <= 5 * ell; ++j) {
                        positions[j] = (p0 + j) % L;
                        free &= !taken[k][positions[j]];
                    }
                    if (!free) continue;
                    Target tg;
                    tg.ell = ell;
                    for (int pos : positions) {
                        taken[k][pos] = 1;
                        tg.path.push_back(cyc[pos]);
                    }
                    out.push_back(std::move(tg));
                    placed = true;
                }
            }
        }
        if (!placed)
            throw std::invalid_argument("not enough disjoint " + std::to_string(ell) +
                                        "-targets in F");
    }
    return out;
}

struct SurgeryResult {
    std::vector<int> sigma_prime;                                  // F-vertex -> class
    std::vector<std::vector<std::pair<Vertex, Vertex>>> marked;    // per atom, walk-oriented F-edges
    std::vector<std::pair<Vertex, Vertex>> phi0;                   // (F-vertex, ground vertex)
    std::vector<Vertex> x_plus, x_minus;                           // prescribed tails / heads
    std::vector<std::vector<int>> stops;                           // per atom, the stop indices j_1..j_ell
};

// Homomorphism surgery: rewires sigma along each target so that the copy of
// F found later covers the atom edges. The walk repeats a class exactly at
// the marked edges, whose positions step by g-1 around D_ell; gcd(g-1, ell)=1
// makes the stops cover every class once.
inline SurgeryResult absorb_atoms_into_homomorphism(const FPartition& fp,
                                                    const FHomomorphism& hom,
                                                    const std::vector<OrientedAtom>& atoms,
                                                    const std::vector<Target>& targets) {
    if (atoms.size() != targets.size())
        throw std::invalid_argument("one target per atom required");
    SurgeryResult res;
    res.sigma_prime = hom.sigma;

    std::vector<char> touched(fp.n, 0); // target disjointness
    for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
        const OrientedAtom& at = atoms[ai];
        const Target& tg = targets[ai];
        const int ell = at.edge_count();
        if (tg.ell != ell) throw std::invalid_argument("target length does not match atom");
        if (int(tg.path.size()) != 5 * ell + 1)
            throw std::invalid_argument("target path must have length 5*ell");
        for (Vertex v : tg.path) {
            if (touched[v]) throw std::invalid_argument("targets are not vertex-disjoint");
            touched[v] = 1;
        }

        std::vector<int> D = d_cycle_classes(at.a, at.b);
        // rotate so that D[0] = sigma(x_1)
        auto it = std::find(D.begin(), D.end(), hom.sigma[tg.path[0]]);
        if (it == D.end()) throw std::invalid_argument("target does not start on its D-cycle");
        std::rotate(D.begin(), it, D.end());
        for (int j = 0; j <= 5 * ell; ++j)
            if (hom.sigma[tg.path[j]] != D[j % ell])
                throw std::invalid_argument("target image does not wind around the D-cycle");

        const int g = (ell == 4 || ell == 5 || ell == 7 || ell == 8) ? 4 : 5;
        // marked positions (0-based edge from position 1+g(i-1) to 2+g(i-1))
        std::vector<int> mark_at(5 * ell + 1, 0);
        std::vector<std::pair<int, int>> marked_pos;
        for (int i = 0; i < ell; ++i) {
            int p = 1 + g * i;
            marked_pos.emplace_back(p, p + 1);
            mark_at[p] = 1;
        }
        // walk: repeat the class on marked edges, else advance on D
        std::vector<int> walk(5 * ell + 1);
        walk[0] = 0;
        for (int p = 1; p <= 5 * ell; ++p)
            walk[p] = mark_at[p - 1] ? walk[p - 1] : (walk[p - 1] + 1) % ell;
        for (int p = 0; p <= 5 * ell; ++p) res.sigma_prime[tg.path[p]] = D[walk[p]];

        // stops: class indices of the marked edges; coprimality makes them a
        // permutation of [ell]
        std::map<int, std::pair<Vertex, Vertex>> atom_edge; // class -> (tail, head)
        for (const auto& [cls, tail, head] : at.placed) atom_edge[cls] = {tail, head};
        if (int(atom_edge.size()) != ell)
            throw std::invalid_argument("atom does not place one edge per D-class");

        std::vector<int> stops;
        std::vector<std::pair<Vertex, Vertex>> marked_edges;
        std::set<int> stop_set;
        for (auto [p, q] : marked_pos) {
            int z = walk[p];
            stops.push_back(z + 1);
            stop_set.insert(z);
            auto edge_it = atom_edge.find(D[z]);
            if (edge_it == atom_edge.end())
                throw std::invalid_argument("atom misses an edge in class " + fp_class_name(D[z]));
            res.phi0.emplace_back(tg.path[p], edge_it->second.first);
            res.phi0.emplace_back(tg.path[q], edge_it->second.second);
            res.x_plus.push_back(tg.path[p]);
            res.x_minus.push_back(tg.path[q]);
            marked_edges.emplace_back(tg.path[p], tg.path[q]);
        }
        if (int(stop_set.size()) != ell)
            throw std::logic_error("stop positions failed to cover the D-cycle");
        res.marked.push_back(std::move(marked_edges));
        res.stops.push_back(std::move(stops));
    }
    return res;
}

} // namespace owp

#endif
