#ifndef OWP_FPARTITION_HPP
#define OWP_FPARTITION_HPP

#include <array>
#include <string>
#include <vector>

#include "owp/classed_graph.hpp"
#include "owp/cycle_factor.hpp"
#include "owp/partitions.hpp"

namespace owp {

// The 18 classes of an F-partition, indexed per a in {3,4,5} as the three
// refined first classes X1_{a,3}, X1_{a,4}, X1_{a,5} followed by the path
// classes X_{a,2}..X_{a,a}:
//   a=3: 0..4, a=4: 5..10, a=5: 11..17
inline constexpr int kNumClasses = 18;
inline constexpr int kNumHatClasses = 12;

inline int fp_base(int a) { return a == 3 ? 0 : (a == 4 ? 5 : 11); }
inline int fp_y_class(int a, int b) { return fp_base(a) + (b - 3); }
inline int fp_path_class(int a, int i) { return fp_base(a) + 3 + (i - 2); } // i in 2..a

inline bool fp_is_y(int cls) {
    int a = cls < fp_base(4) ? 3 : (cls < fp_base(5) ? 4 : 5);
    return cls - fp_base(a) < 3;
}

// (a, b) of a Y class, or (a, i) with i>=2 of a path class
inline std::pair<int, int> fp_decode(int cls) {
    int a = cls < fp_base(4) ? 3 : (cls < fp_base(5) ? 4 : 5);
    int rel = cls - fp_base(a);
    if (rel < 3) return {a, rel + 3};      // Y class (a, b)
    return {a, rel - 3 + 2};               // path class (a, i)
}

inline std::string fp_class_name(int cls) {
    auto [a, x] = fp_decode(cls);
    if (fp_is_y(cls)) return "X" + std::to_string(a) + std::to_string(x) + "_1";
    return "X" + std::to_string(a) + "_" + std::to_string(x);
}

// hat classes: X^a_i for a in {3,4,5}, i in 1..a, indexed a=3: 0..2,
// a=4: 3..6, a=5: 7..11
inline int hat_base(int a) { return a == 3 ? 0 : (a == 4 ? 3 : 7); }
inline int hat_class(int a, int i) { return hat_base(a) + (i - 1); }
inline std::pair<int, int> hat_decode(int h) {
    int a = h < hat_base(4) ? 3 : (h < hat_base(5) ? 4 : 5);
    return {a, h - hat_base(a) + 1};
}
inline int hat_of(int cls) {
    auto [a, x] = fp_decode(cls);
    return fp_is_y(cls) ? hat_class(a, 1) : hat_class(a, x);
}

// Oriented reduced graph R: paths X_{a,2} -> ... -> X_{a,a} and
// X_{a,a} -> X1_{a,b} -> X_{b,2} for all (a,b).
inline std::set<std::pair<int, int>> reduced_arcs_R() {
    std::set<std::pair<int, int>> arcs;
    for (int a = 3; a <= 5; ++a) {
        for (int i = 2; i < a; ++i) arcs.insert({fp_path_class(a, i), fp_path_class(a, i + 1)});
        for (int b = 3; b <= 5; ++b) {
            arcs.insert({fp_path_class(a, a), fp_y_class(a, b)});
            arcs.insert({fp_y_class(a, b), fp_path_class(b, 2)});
        }
    }
    return arcs;
}

// Oriented reduced graph Rhat: the three cycles X^a_1 -> X^a_2 -> ... -> X^a_a -> X^a_1.
inline std::set<std::pair<int, int>> reduced_arcs_Rhat() {
    std::set<std::pair<int, int>> arcs;
    for (int a = 3; a <= 5; ++a)
        for (int i = 1; i <= a; ++i)
            arcs.insert({hat_class(a, i), hat_class(a, i == a ? 1 : i + 1)});
    return arcs;
}

// F-partition of a ground set {0..n-1}: class sizes are dictated by the
// appearance counts of F, vertices are assigned to classes in index order.
struct FPartition {
    int n = 0;
    std::array<std::vector<Vertex>, kNumClasses> members;
    std::vector<int> class_of;
    FactorCounts counts;

    int class_size(int cls) const { return int(members[cls].size()); }

    std::vector<Vertex> y_vertices() const {
        std::vector<Vertex> ys;
        for (int cls = 0; cls < kNumClasses; ++cls)
            if (fp_is_y(cls)) ys.insert(ys.end(), members[cls].begin(), members[cls].end());
        return ys;
    }

    std::vector<Vertex> hat_members(int a, int i) const {
        if (i >= 2) return members[fp_path_class(a, i)];
        std::vector<Vertex> out;
        for (int b = 3; b <= 5; ++b) {
            const auto& m = members[fp_y_class(a, b)];
            out.insert(out.end(), m.begin(), m.end());
        }
        return out;
    }

    OrientedPartition partition_R() const {
        OrientedPartition p;
        p.num_classes = kNumClasses;
        p.class_of = class_of;
        p.arcs = reduced_arcs_R();
        return p;
    }

    OrientedPartition partition_Rhat() const {
        OrientedPartition p;
        p.num_classes = kNumHatClasses;
        p.class_of.resize(n);
        for (Vertex v = 0; v < n; ++v) p.class_of[v] = hat_of(class_of[v]);
        p.arcs = reduced_arcs_Rhat();
        return p;
    }

    bool in_E_inf(const Edge& e) const {
        int cu = class_of[e.u], cv = class_of[e.v];
        static const auto arcs = reduced_arcs_R();
        return arcs.count({cu, cv}) || arcs.count({cv, cu});
    }
    bool in_E_circ(const Edge& e) const {
        int hu = hat_of(class_of[e.u]), hv = hat_of(class_of[e.v]);
        static const auto arcs = reduced_arcs_Rhat();
        return arcs.count({hu, hv}) || arcs.count({hv, hu});
    }
};

inline FPartition build_f_partition(const CycleFactor& f,
                                    const PartitionFamily& family = canonical_family()) {
    FPartition fp;
    fp.n = f.n;
    fp.counts = factor_counts(f, family);
    fp.class_of.assign(f.n, -1);
    Vertex next = 0;
    for (int cls = 0; cls < kNumClasses; ++cls) {
        auto [a, x] = fp_decode(cls);
        int size = fp_is_y(cls) ? fp.counts.pair(a, x) : fp.counts.single(a);
        for (int k = 0; k < size; ++k) {
            fp.members[cls].push_back(next);
            fp.class_of[next] = cls;
            ++next;
        }
    }
    if (next != f.n)
        throw std::logic_error("F-partition sizes do not sum to n");
    return fp;
}

// Natural homomorphism F -> R: walk each cycle as dictated by its cyclic
// partition; v_{i,1} lands in X1_{a_{i-1},a_i} and v_{i,j} in X_{a_i,j}.
struct FHomomorphism {
    std::vector<int> sigma;                      // F-vertex -> class
    std::vector<std::vector<int>> segment_start; // per cycle: offset of segment i in the vertex list

    // oriented F-edges (tail, head): along the walk of every cycle
    static std::vector<std::pair<Vertex, Vertex>> oriented_edges(const CycleFactor& f) {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(f.n);
        for (const auto& c : f.cycles)
            for (std::size_t i = 0; i < c.size(); ++i)
                out.emplace_back(c[i], c[(i + 1) % c.size()]);
        return out;
    }
};

inline FHomomorphism build_f_homomorphism(const CycleFactor& f, const FPartition& fp) {
    FHomomorphism h;
    h.sigma.assign(f.n, -1);
    h.segment_start.resize(f.cycles.size());
    for (std::size_t k = 0; k < f.cycles.size(); ++k) {
        const auto& cyc = f.cycles[k];
        const auto& parts = fp.counts.per_cycle[k].parts;
        const int t = int(parts.size());
        int off = 0;
        for (int i = 0; i < t; ++i) {
            h.segment_start[k].push_back(off);
            int a_prev = parts[(i - 1 + t) % t];
            int a = parts[i];
            h.sigma[cyc[off]] = fp_y_class(a_prev, a);
            for (int j = 2; j <= a; ++j) h.sigma[cyc[off + j - 1]] = fp_path_class(a, j);
            off += a;
        }
    }
    return h;
}

} // namespace owp

#endif
