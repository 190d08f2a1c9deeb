#ifndef OWP_BUILDERS_HPP
#define OWP_BUILDERS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "owp/graph.hpp"
#include "owp/rewiring.hpp"

namespace owp {

// Round-robin 1-factorization of K_n (n even): n-1 perfect matchings on
// index set [n], matching s pairs (n-1, s) and ((s+i) mod (n-1), (s-i) mod (n-1)).
inline std::vector<std::vector<std::pair<int, int>>> one_factorization_complete(int n) {
    if (n % 2 != 0) throw std::invalid_argument("1-factorization needs even order");
    std::vector<std::vector<std::pair<int, int>>> rounds;
    const int m = n - 1;
    for (int s = 0; s < m; ++s) {
        std::vector<std::pair<int, int>> match;
        match.emplace_back(n - 1, s);
        for (int i = 1; i <= n / 2 - 1; ++i)
            match.emplace_back(((s + i) % m), ((s - i) % m + m) % m);
        rounds.push_back(std::move(match));
    }
    return rounds;
}

// Exact perfect matching by backtracking; intended for small dense graphs.
inline bool perfect_matching_backtrack(const std::vector<DynBitset>& adj, std::vector<int>& mate,
                                       long long node_budget = 2'000'000) {
    const int k = int(adj.size());
    mate.assign(k, -1);
    long long nodes = 0;
    std::function<bool()> rec = [&]() -> bool {
        if (++nodes > node_budget) return false;
        int best = -1, best_deg = k + 1;
        for (int v = 0; v < k; ++v) {
            if (mate[v] >= 0) continue;
            int d = 0;
            for (int u = adj[v].first(); u >= 0; u = adj[v].next(u))
                if (mate[u] < 0) ++d;
            if (d < best_deg) { best_deg = d; best = v; }
        }
        if (best < 0) return true;
        if (best_deg == 0) return false;
        for (int u = adj[best].first(); u >= 0; u = adj[best].next(u)) {
            if (mate[u] >= 0) continue;
            mate[best] = u;
            mate[u] = best;
            if (rec()) return true;
            mate[best] = mate[u] = -1;
        }
        return false;
    };
    return rec();
}

enum class BlownCycleMode { MatchingActivation, PlantedResolvable };

struct BlownCycleResult {
    EdgeList edges;
    // hidden witness (planted mode): r partite C_t-factors whose union is the graph
    std::vector<PartiteFactor> planted;
};

namespace detail {

// Shift matrix for a planted resolvable blown cycle: s[i][k] gives the
// circular shift used by factor k between class i and i+1. Rows need
// pairwise-distinct entries (edge-disjoint factors); columns must sum to
// 0 mod m (each cycle closes after t steps).
inline std::vector<std::vector<int>> planted_shift_matrix(int t, int r, int m,
                                                          std::mt19937_64& rng) {
    std::uniform_int_distribution<int> any(0, m - 1);
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<std::vector<int>> s(t, std::vector<int>(r));
        // rows 0..t-3: shifted identities, always distinct within the row
        std::vector<int> base(r);
        std::iota(base.begin(), base.end(), 0);
        for (int i = 0; i + 2 < t; ++i) {
            int c = any(rng);
            for (int k = 0; k < r; ++k) s[i][k] = (k + c) % m;
        }
        std::vector<int> target(r);
        for (int k = 0; k < r; ++k) {
            int sum = 0;
            for (int i = 0; i + 2 < t; ++i) sum = (sum + s[i][k]) % m;
            target[k] = (m - sum) % m; // u_k + v_k must equal this
        }
        // last two rows: u distinct and target-u distinct, by DFS over columns
        std::vector<char> used_u(m, 0), used_v(m, 0);
        std::vector<int> cand(m);
        std::iota(cand.begin(), cand.end(), 0);
        std::shuffle(cand.begin(), cand.end(), rng);
        std::function<bool(int)> place = [&](int k) -> bool {
            if (k == r) return true;
            for (int u : cand) {
                int v = (target[k] - u % m + m) % m;
                if (used_u[u] || used_v[v]) continue;
                used_u[u] = used_v[v] = 1;
                s[t - 2][k] = u;
                s[t - 1][k] = v;
                if (place(k + 1)) return true;
                used_u[u] = used_v[v] = 0;
            }
            return false;
        };
        if (place(0)) return s;
    }
    throw std::invalid_argument("no planted shift assignment for r=" + std::to_string(r) +
                                ", class size " + std::to_string(m));
}

} // namespace detail

// Blown cycle on classes (V_1..V_t) of equal size: every consecutive pair
// carries exactly r perfect matchings. Matching-activation draws r distinct
// matchings per pair from the fixed cyclic-shift 1-factorization of the
// complete bipartite graph; planted-resolvable makes the union of r partite
// C_t-factors and keeps them as a witness.
inline BlownCycleResult build_blown_cycle(const std::vector<std::vector<Vertex>>& classes, int r,
                                          std::uint64_t seed, BlownCycleMode mode) {
    const int t = int(classes.size());
    if (t < 3) throw std::invalid_argument("blown cycle needs at least 3 classes");
    const int m = int(classes[0].size());
    for (const auto& c : classes)
        if (int(c.size()) != m) throw std::invalid_argument("blown cycle classes must have equal size");
    if (r < 0 || r > m) throw std::invalid_argument("r exceeds class size");

    BlownCycleResult res;
    if (r == 0 || m == 0) return res;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);

    if (mode == BlownCycleMode::MatchingActivation) {
        for (int i = 0; i < t; ++i) {
            std::vector<int> shifts(m);
            std::iota(shifts.begin(), shifts.end(), 0);
            std::shuffle(shifts.begin(), shifts.end(), rng);
            shifts.resize(r);
            for (int s : shifts)
                for (int x = 0; x < m; ++x)
                    res.edges.emplace_back(classes[i][x], classes[(i + 1) % t][(x + s) % m]);
        }
        return res;
    }

    auto s = detail::planted_shift_matrix(t, r, m, rng);
    for (int k = 0; k < r; ++k) {
        PartiteFactor pf;
        for (int x = 0; x < m; ++x) {
            PartiteCycle cyc;
            int pos = x;
            for (int i = 0; i < t; ++i) {
                cyc.push_back(classes[i][pos]);
                pos = (pos + s[i][k]) % m;
            }
            // pos == x again: column sums vanish mod m
            pf.push_back(std::move(cyc));
        }
        EdgeList es = partite_factor_edges(pf);
        res.edges.insert(res.edges.end(), es.begin(), es.end());
        res.planted.push_back(std::move(pf));
    }
    return res;
}

// 2 floor(d n / 2)-regular quasirandom graph on the given vertices: union of
// random rounds of a 1-factorization for even order; for odd order, patch a
// regular graph on n-1 vertices by replacing a matching inside a random
// r-subset with a new vertex joined to it.
inline EdgeList build_quasirandom_regular(const std::vector<Vertex>& verts, double d,
                                          std::uint64_t seed) {
    const int n = int(verts.size());
    if (d <= 0 || d >= 1) throw std::invalid_argument("density must lie in (0,1)");
    const int r = 2 * int(d * n / 2);
    if (r <= 0) return {};
    if (r > n - 1) throw std::invalid_argument("target degree infeasible");
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);

    if (n % 2 == 0) {
        auto rounds = one_factorization_complete(n);
        std::shuffle(rounds.begin(), rounds.end(), rng);
        EdgeList out;
        for (int k = 0; k < r; ++k)
            for (auto [i, j] : rounds[k]) out.emplace_back(verts[i], verts[j]);
        return out;
    }

    // odd order: r is even, so a perfect matching inside the chosen subset exists whp
    std::vector<Vertex> inner(verts.begin(), verts.end() - 1);
    const Vertex nu = verts.back();
    const int universe = *std::max_element(verts.begin(), verts.end()) + 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
        EdgeList base = build_quasirandom_regular(inner, double(r) / (n - 1) + 1e-12, rng());
        std::vector<Vertex> pick = inner;
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(r);
        std::sort(pick.begin(), pick.end());
        std::vector<int> local(universe, -1);
        for (int i = 0; i < r; ++i) local[pick[i]] = i;
        std::vector<DynBitset> adj(r, DynBitset(r));
        for (const Edge& e : base)
            if (local[e.u] >= 0 && local[e.v] >= 0) {
                adj[local[e.u]].set(local[e.v]);
                adj[local[e.v]].set(local[e.u]);
            }
        std::vector<int> mate;
        if (!perfect_matching_backtrack(adj, mate, 200'000)) continue;
        EdgeSet drop(universe);
        for (int i = 0; i < r; ++i)
            if (mate[i] > i) drop.add(pick[i], pick[mate[i]]);
        EdgeList result;
        for (const Edge& e : base)
            if (!drop.has(e)) result.push_back(e);
        for (Vertex v : pick) result.emplace_back(v, nu);
        return result;
    }
    throw std::runtime_error("could not realize the odd-order regular patch");
}

} // namespace owp

#endif
