#ifndef OWP_ALLOCATION_HPP
#define OWP_ALLOCATION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "owp/builders.hpp"
#include "owp/cycle_factor.hpp"
#include "owp/graph.hpp"

namespace owp {

struct Allocation {
    std::vector<int> cls;   // F-vertex -> 0-based class
    EdgeList crossing;      // edges with endpoints in different classes
};

struct infeasible_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Eulerian circuit of a multigraph on the path lo..hi with mult[i] copies of
// edge (i,i+1); all multiplicities even and positive.
inline std::vector<int> euler_circuit_on_path(int lo, int hi, const std::map<int, int>& mult) {
    if (lo == hi) return {lo};
    std::map<int, int> down, up; // remaining traversals i -> i+1 and i+1 -> i
    for (auto [i, c] : mult) {
        down[i] = c / 2;
        up[i] = c / 2;
    }
    // Hierholzer
    std::vector<int> circuit;
    std::vector<int> walk{lo};
    while (!walk.empty()) {
        int v = walk.back();
        if (v < hi && down.count(v) && down[v] > 0) {
            --down[v];
            walk.push_back(v + 1);
        } else if (v > lo && up.count(v - 1) && up[v - 1] > 0) {
            --up[v - 1];
            walk.push_back(v - 1);
        } else {
            circuit.push_back(v);
            walk.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    circuit.pop_back(); // closing repeat of lo
    return circuit;
}

} // namespace detail

// Allocation of a cycle factor with long cycles onto an interval of classes:
// (i) exact class sizes, (ii) neighbouring classes only, (iii) crossing edges
// an induced matching, (iv) exactly four crossing edges per consecutive pair.
// Follows the interval assignment / interval swap / per-cycle repair proof.
inline Allocation allocate_long_cycles(const CycleFactor& f, const std::vector<int>& sizes) {
    const int t = int(sizes.size());
    const int n = f.n;
    if (std::accumulate(sizes.begin(), sizes.end(), 0) != n)
        throw std::invalid_argument("class sizes must sum to the order of F");
    for (const auto& c : f.cycles)
        if (int(c.size()) < 30) throw std::invalid_argument("all cycles must have length >= 30");
    for (int ni : sizes)
        if (ni < 50) throw std::invalid_argument("all class sizes must be >= 50");

    Allocation res;
    res.cls.assign(n, 0);
    if (t == 1) return res;

    // vertex order: cycles in sequence, each in walk order
    std::vector<Vertex> order;
    std::vector<int> cycle_of(n);
    order.reserve(n);
    for (std::size_t k = 0; k < f.cycles.size(); ++k)
        for (Vertex v : f.cycles[k]) {
            cycle_of[int(order.size())] = int(k);
            order.push_back(v);
        }

    // interval blocks and the first assignment
    std::vector<int> block_lo(t), block_hi(t); // inclusive positions
    {
        int pos = 0;
        for (int i = 0; i < t; ++i) {
            block_lo[i] = pos;
            pos += sizes[i];
            block_hi[i] = pos - 1;
        }
    }
    std::vector<int> f2(n);
    for (int i = 0; i < t; ++i)
        for (int p = block_lo[i]; p <= block_hi[i]; ++p) f2[p] = i;

    // same-cycle runs of length 6 near the block boundaries
    auto find_run = [&](int from, int to, bool last) -> int {
        // returns the start of a 6-long same-cycle run within [from, to]
        int best = -1;
        for (int s = from; s + 5 <= to; ++s) {
            bool same = true;
            for (int j = 1; j < 6; ++j) same &= cycle_of[s + j] == cycle_of[s];
            if (same) {
                best = s;
                if (!last) return best;
            }
        }
        return best;
    };
    for (int i = 0; i + 1 < t; ++i) {
        int up = find_run(block_hi[i] - 10, block_hi[i], true);     // I_i^+
        int dn = find_run(block_lo[i + 1], block_lo[i + 1] + 10, false); // I_{i+1}^-
        if (up < 0 || dn < 0)
            throw infeasible_error("no same-cycle interval near the class boundary " +
                                   std::to_string(i));
        for (int j = 0; j < 6; ++j) {
            f2[up + j] = i + 1;
            f2[dn + j] = i;
        }
    }

    // per-cycle class counts
    const int s_cnt = int(f.cycles.size());
    std::vector<std::vector<int>> cnt(t, std::vector<int>(s_cnt, 0));
    for (int p = 0; p < n; ++p) ++cnt[f2[p]][cycle_of[p]];

    // crossing quota per boundary pair: 4 on a unique both-positive cycle,
    // 2 + 2 on exactly two of them
    std::vector<std::map<int, int>> quota(s_cnt); // cycle -> (pair index i -> crossings)
    for (int i = 0; i + 1 < t; ++i) {
        std::vector<int> both;
        for (int j = 0; j < s_cnt; ++j)
            if (cnt[i][j] > 0 && cnt[i + 1][j] > 0) both.push_back(j);
        if (both.size() == 1) quota[both[0]][i] = 4;
        else if (both.size() == 2) {
            quota[both[0]][i] = 2;
            quota[both[1]][i] = 2;
        } else
            throw infeasible_error("boundary " + std::to_string(i) + " is covered by " +
                                   std::to_string(both.size()) + " cycles, need 1 or 2");
    }

    // realize each cycle's class walk
    std::vector<int> pos_of_cycle_start(s_cnt, 0);
    {
        int p = 0;
        for (int j = 0; j < s_cnt; ++j) {
            pos_of_cycle_start[j] = p;
            p += int(f.cycles[j].size());
        }
    }
    for (int j = 0; j < s_cnt; ++j) {
        std::vector<int> present;
        for (int i = 0; i < t; ++i)
            if (cnt[i][j] > 0) present.push_back(i);
        if (present.empty()) throw std::logic_error("cycle with no vertices");
        for (std::size_t q = 1; q < present.size(); ++q)
            if (present[q] != present[q - 1] + 1)
                throw infeasible_error("cycle " + std::to_string(j) +
                                       " spans non-consecutive classes");
        const int lo = present.front(), hi = present.back();
        const auto& cyc = f.cycles[j];
        const int L = int(cyc.size());

        if (lo == hi) {
            for (Vertex v : cyc) res.cls[v] = lo;
            continue;
        }
        std::map<int, int> mult;
        for (int i = lo; i < hi; ++i) {
            auto it = quota[j].find(i);
            if (it == quota[j].end() || it->second == 0)
                throw infeasible_error("cycle " + std::to_string(j) +
                                       " has no crossing quota at boundary " + std::to_string(i));
            mult[i] = it->second;
        }
        std::vector<int> circuit = detail::euler_circuit_on_path(lo, hi, mult);
        const int m = int(circuit.size());
        // visits per class and arc lengths: 3 each plus the slack on the
        // first visit
        std::map<int, int> visits;
        for (int z : circuit) ++visits[z];
        std::vector<int> arc_len(m, 3);
        std::map<int, bool> first_seen;
        for (int i = lo; i <= hi; ++i) {
            if (cnt[i][j] < 3 * visits[i])
                throw infeasible_error("cycle " + std::to_string(j) + " too thin in class " +
                                       std::to_string(i) + ": " + std::to_string(cnt[i][j]) +
                                       " vertices for " + std::to_string(visits[i]) + " visits");
        }
        for (int p = 0; p < m; ++p) {
            if (!first_seen[circuit[p]]) {
                first_seen[circuit[p]] = true;
                arc_len[p] += cnt[circuit[p]][j] - 3 * visits[circuit[p]];
            }
        }
        int p = 0;
        for (int a = 0; a < m; ++a)
            for (int q = 0; q < arc_len[a]; ++q) res.cls[cyc[p++]] = circuit[a];
        if (p != L) throw std::logic_error("arc lengths do not cover the cycle");
    }

    // collect crossing edges
    for (const auto& cyc : f.cycles)
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            Vertex a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            if (res.cls[a] != res.cls[b]) res.crossing.emplace_back(a, b);
        }
    return res;
}

struct AllocationAudit {
    bool ok = true;
    std::string detail;
};

// mechanical check of the lemma's conditions (i)-(iv)
inline AllocationAudit audit_allocation(const CycleFactor& f, const std::vector<int>& sizes,
                                        const Allocation& al) {
    AllocationAudit a;
    auto fail = [&](std::string why) {
        a.ok = false;
        a.detail = std::move(why);
        return a;
    };
    const int t = int(sizes.size());
    std::vector<int> got(t, 0);
    for (int c : al.cls) ++got[c];
    for (int i = 0; i < t; ++i)
        if (got[i] != sizes[i]) return fail("class size mismatch at " + std::to_string(i));

    std::vector<std::vector<char>> adj(f.n, std::vector<char>(f.n, 0));
    for (const Edge& e : f.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;

    std::vector<int> per_pair(std::max(0, t - 1), 0);
    std::vector<Vertex> cross_verts;
    for (const Edge& e : f.edges()) {
        int d = std::abs(al.cls[e.u] - al.cls[e.v]);
        if (d > 1) return fail("edge spans non-adjacent classes");
        if (d == 1) ++per_pair[std::min(al.cls[e.u], al.cls[e.v])];
    }
    for (int i = 0; i + 1 < t; ++i)
        if (per_pair[i] != 4)
            return fail("boundary " + std::to_string(i) + " has " + std::to_string(per_pair[i]) +
                        " crossing edges");
    // induced matching: crossing edges pairwise disjoint and non-adjacent
    for (std::size_t x = 0; x < al.crossing.size(); ++x)
        for (std::size_t y = x + 1; y < al.crossing.size(); ++y) {
            const Edge& e1 = al.crossing[x];
            const Edge& e2 = al.crossing[y];
            for (Vertex u : {e1.u, e1.v})
                for (Vertex v : {e2.u, e2.v}) {
                    if (u == v) return fail("crossing edges share a vertex");
                    if (adj[u][v]) return fail("crossing edges joined by an edge of F");
                }
        }
    return a;
}

// ---------------------------------------------------------------------------
// Good matchings: M_0 fixes the parity per pair, edge pairs split the rest,
// and an admissible colouring groups the pairs into matchings.

struct GoodMatchingDecomposition {
    EdgeList m0;
    std::vector<EdgeList> matchings; // colour classes
};

inline GoodMatchingDecomposition decompose_into_good_matchings(
    const EdgeList& l, const std::vector<int>& class_of, int t, int cap, int colour_count = 0) {
    int n = 0;
    for (const Edge& e : l) n = std::max({n, e.u + 1, e.v + 1});
    n = std::max(n, int(class_of.size()));

    auto pair_key = [t](int i, int j) { return std::min(i, j) * t + std::max(i, j); };
    std::map<int, EdgeList> by_pair;
    std::vector<int> cross_deg(t, 0);
    int max_deg = 0;
    {
        std::vector<int> deg(n, 0);
        for (const Edge& e : l) {
            int ci = class_of[e.u], cj = class_of[e.v];
            if (ci == cj) throw infeasible_error("edge inside a class: hypothesis e_L(V_i) = 0");
            by_pair[pair_key(ci, cj)].push_back(e);
            ++cross_deg[ci];
            ++cross_deg[cj];
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int d : deg) max_deg = std::max(max_deg, d);
    }
    for (int i = 0; i < t; ++i)
        if (cross_deg[i] % 2 != 0)
            throw infeasible_error("odd crossing degree at class " + std::to_string(i));

    // M_0: exactly 4 + parity edges per pair, as a matching (small backtracking)
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            if (!by_pair.count(pair_key(i, j)) || by_pair[pair_key(i, j)].empty())
                throw infeasible_error("no edges between classes " + std::to_string(i) + "," +
                                       std::to_string(j));
            pairs.emplace_back(i, j);
        }

    GoodMatchingDecomposition out;
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> pick_m0 = [&](std::size_t pi) -> bool {
        if (pi == pairs.size()) return true;
        auto [i, j] = pairs[pi];
        const EdgeList& cand = by_pair[pair_key(i, j)];
        int want = 4 + int(cand.size() % 2);
        std::vector<int> chosen;
        std::function<bool(int)> grow = [&](int from) -> bool {
            if (int(chosen.size()) == want) return pick_m0(pi + 1);
            for (int k = from; k < int(cand.size()); ++k) {
                const Edge& e = cand[k];
                if (used[e.u] || used[e.v]) continue;
                used[e.u] = used[e.v] = 1;
                chosen.push_back(k);
                out.m0.push_back(e);
                if (grow(k + 1)) return true;
                out.m0.pop_back();
                chosen.pop_back();
                used[e.u] = used[e.v] = 0;
            }
            return false;
        };
        return grow(0);
    };
    if (!pick_m0(0))
        throw infeasible_error("cannot select the parity-fixing matching M_0");

    // L' = L - M_0, split into edge pairs per class pair
    std::set<std::pair<int, int>> m0_set;
    for (const Edge& e : out.m0) m0_set.insert({e.u, e.v});
    std::map<int, EdgeList> rest;
    int rest_max_deg = 0;
    {
        std::vector<int> deg(n, 0);
        for (const Edge& e : l) {
            if (m0_set.count({e.u, e.v})) continue;
            rest[pair_key(class_of[e.u], class_of[e.v])].push_back(e);
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int d : deg) rest_max_deg = std::max(rest_max_deg, d);
    }

    struct EdgePair {
        Edge a, b;
        int i, j;
    };
    std::vector<EdgePair> edge_pairs;
    for (auto& [key, edges] : rest) {
        if (edges.size() % 2 != 0) throw std::logic_error("pair count not even after M_0");
        // perfect matching in the disjointness graph of these edges
        const int k = int(edges.size());
        std::vector<DynBitset> compatible(k, DynBitset(k));
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) {
                bool disjoint = edges[x].u != edges[y].u && edges[x].u != edges[y].v &&
                                edges[x].v != edges[y].u && edges[x].v != edges[y].v;
                if (disjoint) {
                    compatible[x].set(y);
                    compatible[y].set(x);
                }
            }
        std::vector<int> mate;
        if (!perfect_matching_backtrack(compatible, mate))
            throw infeasible_error("cannot pair the leftover edges between a class pair");
        for (int x = 0; x < k; ++x)
            if (mate[x] > x)
                edge_pairs.push_back({edges[x], edges[mate[x]], key / t, key % t});
    }

    if (edge_pairs.empty()) return out; // M_0 already covered everything

    // admissible colouring: phase 1 places two edge pairs per pair per colour,
    // phase 2 colours the remainder greedily by least load. A colour is
    // always available for an edge pair when s > 4 (Delta(L') - 1).
    const int s = colour_count > 0 ? colour_count : 4 * rest_max_deg + 1;
    if (s < 4 * (rest_max_deg - 1) + 1)
        throw infeasible_error("colour count " + std::to_string(s) +
                               " too small for maximum degree " + std::to_string(rest_max_deg));
    for (auto [i, j] : pairs) {
        int have = 0;
        for (const auto& ep : edge_pairs)
            if (ep.i == i && ep.j == j) ++have;
        if (have < 2 * s)
            throw infeasible_error("too few edge pairs between classes " + std::to_string(i) +
                                   "," + std::to_string(j) + " for " + std::to_string(s) +
                                   " colours");
    }

    std::vector<int> colour(edge_pairs.size(), -1);
    std::vector<std::vector<char>> cused(s, std::vector<char>(n, 0));
    std::vector<int> load(s, 0);

    auto fits = [&](int c, const EdgePair& ep) {
        return !cused[c][ep.a.u] && !cused[c][ep.a.v] && !cused[c][ep.b.u] && !cused[c][ep.b.v];
    };
    auto place = [&](int c, std::size_t idx) {
        const EdgePair& ep = edge_pairs[idx];
        colour[idx] = c;
        cused[c][ep.a.u] = cused[c][ep.a.v] = cused[c][ep.b.u] = cused[c][ep.b.v] = 1;
        load[c] += 2;
    };
    auto unplace = [&](std::size_t idx) {
        const EdgePair& ep = edge_pairs[idx];
        int c = colour[idx];
        colour[idx] = -1;
        cused[c][ep.a.u] = cused[c][ep.a.v] = cused[c][ep.b.u] = cused[c][ep.b.v] = 0;
        load[c] -= 2;
    };

    // phase 1, per colour, backtracking across the class pairs
    for (int c = 0; c < s; ++c) {
        std::function<bool(std::size_t)> fill = [&](std::size_t pi) -> bool {
            if (pi == pairs.size()) return true;
            auto [i, j] = pairs[pi];
            std::vector<std::size_t> cands;
            for (std::size_t idx = 0; idx < edge_pairs.size(); ++idx)
                if (colour[idx] < 0 && edge_pairs[idx].i == i && edge_pairs[idx].j == j &&
                    fits(c, edge_pairs[idx]))
                    cands.push_back(idx);
            for (std::size_t x = 0; x < cands.size(); ++x)
                for (std::size_t y = x + 1; y < cands.size(); ++y) {
                    place(c, cands[x]);
                    if (!fits(c, edge_pairs[cands[y]])) {
                        unplace(cands[x]);
                        continue;
                    }
                    place(c, cands[y]);
                    if (fill(pi + 1)) return true;
                    unplace(cands[y]);
                    unplace(cands[x]);
                }
            return false;
        };
        if (!fill(0))
            throw infeasible_error("admissible colouring phase 1 failed at colour " +
                                   std::to_string(c));
    }
    // phase 2
    for (std::size_t idx = 0; idx < edge_pairs.size(); ++idx) {
        if (colour[idx] >= 0) continue;
        int best = -1;
        for (int c = 0; c < s; ++c)
            if (fits(c, edge_pairs[idx]) && (best < 0 || load[c] < load[best])) best = c;
        if (best < 0) throw infeasible_error("no available colour for an edge pair");
        place(best, idx);
    }

    out.matchings.assign(s, {});
    for (std::size_t idx = 0; idx < edge_pairs.size(); ++idx) {
        out.matchings[colour[idx]].push_back(edge_pairs[idx].a);
        out.matchings[colour[idx]].push_back(edge_pairs[idx].b);
    }
    for (const EdgeList& m : out.matchings)
        if (int(m.size()) > cap)
            throw infeasible_error("colour class exceeds the cap " + std::to_string(cap));
    if (int(out.m0.size()) > cap) throw infeasible_error("M_0 exceeds the cap");
    return out;
}

// invariants of a good matching w.r.t. a class partition
inline bool is_good_matching(const EdgeList& m, const std::vector<int>& class_of, int t, int cap) {
    if (int(m.size()) > cap) return false;
    std::set<Vertex> seen;
    std::map<std::pair<int, int>, int> per_pair;
    std::vector<int> cross(t, 0);
    for (const Edge& e : m) {
        if (seen.count(e.u) || seen.count(e.v)) return false;
        seen.insert(e.u);
        seen.insert(e.v);
        int i = class_of[e.u], j = class_of[e.v];
        if (i == j) return false;
        ++per_pair[{std::min(i, j), std::max(i, j)}];
        ++cross[i];
        ++cross[j];
    }
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (per_pair[{i, j}] < 4) return false;
    for (int i = 0; i < t; ++i)
        if (cross[i] % 2 != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Crossing allocation: assignment sigma'' of V(F) whose crossing preimages
// mirror the pair counts of a good matching. Realized via the parity graph,
// its cycle decomposition, defects, adjusted sizes, and 3-vertex moves on
// i-targets.

struct CrossingAllocation {
    std::vector<int> cls;       // F-vertex -> class
    EdgeList crossing;          // designated crossing-edge preimages in F
};

inline CrossingAllocation crossing_allocation(const CycleFactor& f, const EdgeList& m,
                                              const std::vector<int>& m_class_of,
                                              const std::vector<int>& sizes) {
    const int t = int(sizes.size());
    const int n = f.n;
    if (std::accumulate(sizes.begin(), sizes.end(), 0) != n)
        throw std::invalid_argument("sizes must sum to |F|");

    // pair counts of the matching
    std::vector<std::vector<int>> em(t, std::vector<int>(t, 0));
    for (const Edge& e : m) {
        int i = m_class_of[e.u], j = m_class_of[e.v];
        if (i == j) throw std::invalid_argument("matching edge inside a class");
        ++em[i][j];
        ++em[j][i];
    }
    for (int i = 0; i + 1 < t; ++i)
        if (em[i][i + 1] < 4)
            throw infeasible_error("good matching needs >= 4 edges between consecutive classes");

    // split F into short and long cycles
    const int threshold = 15 * t;
    CycleFactor f_long;
    f_long.n = 0;
    std::vector<std::vector<Vertex>> short_cycles;
    for (const auto& c : f.cycles)
        (int(c.size()) >= threshold ? f_long.cycles : short_cycles).push_back(c);
    if (f_long.cycles.empty()) throw infeasible_error("F has no long cycles");

    // parity graph R and its cycle decomposition
    std::vector<std::vector<int>> padj(t);
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (em[i][j] % 2 == 1) {
                padj[i].push_back(j);
                padj[j].push_back(i);
            }
    for (int i = 0; i < t; ++i)
        if (padj[i].size() % 2 != 0)
            throw infeasible_error("parity graph is not Eulerian; matching not good");
    std::vector<std::vector<int>> pcycles;
    {
        std::set<std::pair<int, int>> left;
        for (int i = 0; i < t; ++i)
            for (int j : padj[i])
                if (i < j) left.insert({i, j});
        auto ekey = [](int a, int b) { return std::pair{std::min(a, b), std::max(a, b)}; };
        while (!left.empty()) {
            // walk until the first vertex repeat; the loop is a cycle, the
            // tail edges stay in the pool
            int v0 = left.begin()->first;
            std::vector<int> walk{v0};
            std::vector<int> pos(t, -1);
            pos[v0] = 0;
            std::set<std::pair<int, int>> used;
            int cur = v0;
            while (true) {
                int nxt = -1;
                for (int j = 0; j < t && nxt < 0; ++j)
                    if (j != cur && left.count(ekey(cur, j)) && !used.count(ekey(cur, j))) nxt = j;
                if (nxt < 0) throw std::logic_error("parity walk stuck in an even graph");
                used.insert(ekey(cur, nxt));
                if (pos[nxt] >= 0) {
                    std::vector<int> cyc(walk.begin() + pos[nxt], walk.end());
                    for (std::size_t i = 0; i < cyc.size(); ++i)
                        left.erase(ekey(cyc[i], i + 1 < cyc.size() ? cyc[i + 1] : cyc[0]));
                    pcycles.push_back(std::move(cyc));
                    break;
                }
                pos[nxt] = int(walk.size());
                walk.push_back(nxt);
                cur = nxt;
            }
        }
    }

    // defects and adjusted sizes
    auto defect = [&](int i, int j) {
        if (std::abs(i - j) == 1) return em[i][j] / 2 - 2;
        return em[i][j] / 2;
    };
    // short cycles packed greedily; n_i' are the remaining capacities
    std::vector<int> nprime = sizes;
    for (const auto& c : short_cycles) {
        int best = 0;
        for (int i = 1; i < t; ++i)
            if (nprime[i] > nprime[best]) best = i;
        nprime[best] -= int(c.size());
        if (nprime[best] < 0) throw infeasible_error("short cycles overflow the classes");
    }
    std::vector<int> nstar = nprime;
    std::vector<std::vector<int>> g_corr(pcycles.size(), std::vector<int>(t, 0));
    for (std::size_t ci = 0; ci < pcycles.size(); ++ci) {
        const auto& C = pcycles[ci];
        int mn = *std::min_element(C.begin(), C.end());
        for (int i : C) g_corr[ci][i] = i == mn ? int(C.size()) - 1 : -1;
    }
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < i; ++j) nstar[i] -= 3 * defect(i, j);
        for (int j = i + 1; j < t; ++j) nstar[i] += 3 * defect(i, j);
        for (std::size_t ci = 0; ci < pcycles.size(); ++ci) nstar[i] += 3 * g_corr[ci][i];
    }
    for (int i = 0; i < t; ++i)
        if (nstar[i] < 50)
            throw infeasible_error("adjusted class size below 50 at class " + std::to_string(i));

    // base allocation of the long cycles, compacted onto 0..n_long-1
    {
        std::vector<Vertex> back;
        CycleFactor compact;
        for (const auto& c : f_long.cycles) {
            std::vector<Vertex> cc;
            for (Vertex v : c) {
                cc.push_back(int(back.size()));
                back.push_back(v);
            }
            compact.cycles.push_back(std::move(cc));
        }
        compact.n = int(back.size());
        if (std::accumulate(nstar.begin(), nstar.end(), 0) != compact.n)
            throw std::logic_error("adjusted sizes do not sum to the long-cycle order");
        Allocation base = allocate_long_cycles(compact, nstar);

        CrossingAllocation res;
        res.cls.assign(n, -1);
        for (std::size_t k = 0; k < back.size(); ++k) res.cls[back[k]] = base.cls[int(k)];
        // short cycles: the same greedy packing that produced nprime
        {
            std::vector<int> npr = sizes;
            for (const auto& c : short_cycles) {
                int best = 0;
                for (int i = 1; i < t; ++i)
                    if (npr[i] > npr[best]) best = i;
                npr[best] -= int(c.size());
                for (Vertex v : c) res.cls[v] = best;
            }
        }

        // crossing edges of the base allocation
        std::set<Vertex> estar_verts;
        EdgeList estar;
        for (const auto& c : compact.cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                Vertex a = c[i], b = c[(i + 1) % c.size()];
                if (base.cls[a] != base.cls[b]) {
                    estar.emplace_back(back[a], back[b]);
                    estar_verts.insert(back[a]);
                    estar_verts.insert(back[b]);
                }
            }

        // i-targets: runs of 3t+1 vertices of constant class avoiding E*
        std::vector<std::vector<std::vector<Vertex>>> targets(t);
        std::vector<char> reserved(n, 0);
        for (const auto& c : f_long.cycles) {
            const int L = int(c.size());
            int run = 0;
            for (int p = 0; p < 2 * L && run <= L; ++p) {
                Vertex v = c[p % L];
                bool ok = !estar_verts.count(v) && !reserved[v] && res.cls[v] >= 0;
                if (p > 0 && ok && res.cls[v] != res.cls[c[(p - 1) % L]]) ok = false;
                run = ok ? run + 1 : 0;
                if (run == 3 * t + 1 && p >= 3 * t) {
                    std::vector<Vertex> path;
                    for (int q = p - 3 * t; q <= p; ++q) path.push_back(c[q % L]);
                    bool fresh = true;
                    for (Vertex w : path) fresh &= !reserved[w];
                    if (fresh) {
                        for (Vertex w : path) reserved[w] = 1;
                        targets[res.cls[path[0]]].push_back(path);
                        run = 0;
                    }
                }
            }
        }

        auto take_target = [&](int i) -> std::vector<Vertex> {
            if (targets[i].empty())
                throw infeasible_error("not enough " + std::to_string(i) + "-targets");
            auto tg = targets[i].back();
            targets[i].pop_back();
            return tg;
        };

        // defect moves: 3 vertices from i to j per defect unit
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j)
                for (int dcount = 0; dcount < defect(i, j); ++dcount) {
                    auto tg = take_target(i);
                    for (int k = 2; k <= 4; ++k) res.cls[tg[k]] = j; // positions 3,4,5 (1-based)
                }
        // parity-cycle moves
        for (const auto& C : pcycles) {
            int mn = *std::min_element(C.begin(), C.end());
            // order the cycle starting at its minimum
            std::vector<int> ord;
            {
                auto it = std::find(C.begin(), C.end(), mn);
                ord.assign(it, C.end());
                ord.insert(ord.end(), C.begin(), it);
            }
            auto tg = take_target(mn);
            const int ell = int(ord.size());
            for (int k = 2; k <= ell; ++k)
                for (int s2 = 0; s2 < 3; ++s2) res.cls[tg[3 * (k - 1) + s2 - 1]] = ord[k - 1];
        }

        // designated crossing preimages: all class-crossing F-edges
        for (const auto& c : f.cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                Vertex a = c[i], b = c[(i + 1) % c.size()];
                if (res.cls[a] != res.cls[b]) res.crossing.emplace_back(a, b);
            }
        return res;
    }
}

struct CrossingAudit {
    bool ok = true;
    std::string detail;
};

// conditions (a)-(c): class sizes; induced matching; crossing counts match
// the matching's pair counts
inline CrossingAudit audit_crossing_allocation(const CycleFactor& f, const EdgeList& m,
                                               const std::vector<int>& m_class_of,
                                               const std::vector<int>& sizes,
                                               const CrossingAllocation& ca) {
    CrossingAudit a;
    auto fail = [&](std::string why) {
        a.ok = false;
        a.detail = std::move(why);
        return a;
    };
    const int t = int(sizes.size());
    std::vector<int> got(t, 0);
    for (int c : ca.cls) {
        if (c < 0 || c >= t) return fail("unassigned vertex");
        ++got[c];
    }
    for (int i = 0; i < t; ++i)
        if (got[i] != sizes[i]) return fail("class size mismatch at " + std::to_string(i));

    std::vector<std::vector<int>> em(t, std::vector<int>(t, 0)), ef(t, std::vector<int>(t, 0));
    for (const Edge& e : m) {
        ++em[m_class_of[e.u]][m_class_of[e.v]];
        ++em[m_class_of[e.v]][m_class_of[e.u]];
    }
    const int threshold = 15 * t;
    std::set<std::pair<Vertex, Vertex>> cross_set;
    std::vector<Edge> crossings;
    for (const auto& c : f.cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            Vertex x = c[i], y = c[(i + 1) % c.size()];
            if (ca.cls[x] != ca.cls[y]) {
                if (int(c.size()) < threshold) return fail("short cycle crosses classes");
                ++ef[ca.cls[x]][ca.cls[y]];
                ++ef[ca.cls[y]][ca.cls[x]];
                crossings.emplace_back(x, y);
            }
        }
    }
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (ef[i][j] != em[i][j])
                return fail("crossing count between " + std::to_string(i) + "," +
                            std::to_string(j) + " is " + std::to_string(ef[i][j]) + ", want " +
                            std::to_string(em[i][j]));

    std::map<Vertex, std::vector<Vertex>> fadj;
    for (const Edge& e : f.edges()) {
        fadj[e.u].push_back(e.v);
        fadj[e.v].push_back(e.u);
    }
    std::set<Vertex> cv;
    for (const Edge& e : crossings) {
        if (cv.count(e.u) || cv.count(e.v)) return fail("crossing edges share a vertex");
        cv.insert(e.u);
        cv.insert(e.v);
    }
    for (const Edge& e : crossings)
        for (Vertex x : {e.u, e.v})
            for (Vertex y : fadj[x])
                if (cv.count(y) && y != e.u && y != e.v &&
                    !(x == e.u && y == e.v) && !(x == e.v && y == e.u))
                    return fail("crossing edges joined by an edge of F");
    return a;
}

} // namespace owp

#endif
