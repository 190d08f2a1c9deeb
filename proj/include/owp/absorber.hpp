#ifndef OWP_ABSORBER_HPP
#define OWP_ABSORBER_HPP

#include <array>
#include <optional>
#include <vector>

#include "owp/builders.hpp"
#include "owp/classed_graph.hpp"
#include "owp/rewiring.hpp"
#include "owp/solver.hpp"
#include "owp/verify.hpp"

namespace owp {

struct AbsorberConfig {
    int r = 1;
    BlownCycleMode mode = BlownCycleMode::PlantedResolvable;
    std::uint64_t seed = 0;
};

// Absorbing graph: pi*^{-1} of one blown a-cycle per a in {3,4,5}, each
// carrying r matchings between consecutive hat classes. r-balanced w.r.t.
// (X,R), hence 2r-regular. In planted mode the witness stores, per a, the r
// partite C_a-factors whose union is the rewired side.
struct Absorber {
    EdgeList edges;                      // the graph G, in the R-universe
    FPartition fp;
    Rewiring rw;
    int r = 0;
    BlownCycleMode mode = BlownCycleMode::PlantedResolvable;
    // planted witness per a (index a-3); empty in matching-activation mode
    std::array<std::vector<PartiteFactor>, 3> planted;

    std::vector<std::vector<Vertex>> hat_classes(int a) const {
        std::vector<std::vector<Vertex>> cls;
        for (int i = 1; i <= a; ++i) cls.push_back(fp.hat_members(a, i));
        return cls;
    }
};

inline Absorber build_absorber(const CycleFactor& f, const FPartition& fp,
                               const AbsorberConfig& cfg) {
    Absorber ab;
    ab.fp = fp;
    ab.rw = build_rewiring(f, fp, cfg.seed);
    ab.r = cfg.r;
    ab.mode = cfg.mode;
    if (cfg.r < 0) throw std::invalid_argument("negative r");
    for (int a = 3; a <= 5; ++a) {
        auto classes = ab.hat_classes(a);
        int m = int(classes[0].size());
        if (cfg.r > m && m > 0)
            throw std::invalid_argument("r exceeds the smallest class size for a=" +
                                        std::to_string(a));
        if (m == 0) continue; // degenerate F without cycles using part a
        BlownCycleResult blown =
            build_blown_cycle(classes, cfg.r, cfg.seed * 3 + a, cfg.mode);
        EdgeList pulled = unrewire(blown.edges, ab.rw);
        ab.edges.insert(ab.edges.end(), pulled.begin(), pulled.end());
        if (cfg.mode == BlownCycleMode::PlantedResolvable)
            ab.planted[a - 3] = std::move(blown.planted);
    }
    return ab;
}

struct AbsorptionOutcome {
    Verdict verdict = Verdict::Exhausted;
    std::vector<CycleFactor> factors; // an F-decomposition of G - L when Found
    SearchStats stats;
};

// Absorb a balanced leftover: rewire G - L, split it into the three blown
// cycles, decompose each resolvably by exact search, zip the factors and pull
// them back through pi*^{-1}. Exhausted is reported honestly when the search
// proves a blown cycle has no resolvable decomposition.
inline AbsorptionOutcome absorb_balanced_leftover(const Absorber& ab, const EdgeList& leftover,
                                                  const SearchConfig& cfg = {}) {
    // L subset of G and r_L-balanced
    EdgeSet gset = EdgeSet::from_edges(ab.fp.n, ab.edges);
    for (const Edge& e : leftover)
        if (!gset.has(e))
            throw std::invalid_argument("leftover edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") is not in the absorber");
    OrientedPartition opR = ab.fp.partition_R();
    BalanceProfile lb = balance_profile(leftover, opR);
    if (!lb.balanced())
        throw std::invalid_argument("leftover is not balanced w.r.t. (X,R); witness vertex " +
                                    std::to_string(lb.witness));
    const int r_left = ab.r - *lb.r;

    EdgeSet rem = gset;
    for (const Edge& e : leftover) rem.remove(e);
    EdgeList rewired = rewire(rem.edges(), ab.rw);

    AbsorptionOutcome out;
    std::array<std::vector<PartiteFactor>, 3> per_a;
    for (int a = 3; a <= 5; ++a) {
        auto classes = ab.hat_classes(a);
        if (classes[0].empty()) {
            per_a[a - 3].assign(r_left, PartiteFactor{});
            continue;
        }
        PartiteGraph pg;
        pg.classes = classes;
        std::vector<char> in_a(ab.fp.n, 0);
        for (const auto& c : classes)
            for (Vertex v : c) in_a[v] = 1;
        for (const Edge& e : rewired)
            if (in_a[e.u] && in_a[e.v]) pg.edges.push_back(e);
        PartiteDecompositionOutcome dec = resolvable_partite_cycle_decomposition(pg, a, cfg);
        out.stats.nodes += dec.stats.nodes;
        out.stats.wall_seconds += dec.stats.wall_seconds;
        if (dec.verdict != Verdict::Found) {
            out.verdict = dec.verdict;
            return out;
        }
        if (int(dec.factors.size()) != r_left)
            throw std::logic_error("resolvable decomposition has unexpected size");
        per_a[a - 3] = std::move(dec.factors);
    }

    for (int k = 0; k < r_left; ++k)
        out.factors.push_back(
            merge_partite_factors(per_a[0][k], per_a[1][k], per_a[2][k], ab.fp, ab.rw));
    out.verdict = Verdict::Found;
    return out;
}

} // namespace owp

#endif
