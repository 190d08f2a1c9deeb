#ifndef OWP_PARTITIONS_HPP
#define OWP_PARTITIONS_HPP

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "owp/cycle_factor.hpp"

namespace owp {

// Cyclic sequence over {3,4,5}, compared up to rotation. The normal form is
// the lexicographically least rotation.
struct CyclicPartition {
    std::vector<int> parts;

    CyclicPartition() = default;
    explicit CyclicPartition(std::vector<int> ps) : parts(std::move(ps)) {
        if (parts.empty()) throw std::invalid_argument("empty cyclic partition");
        for (int p : parts)
            if (p < 3 || p > 5) throw std::invalid_argument("part outside {3,4,5}");
    }

    int length() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int count() const { return int(parts.size()); }

    CyclicPartition canonical() const {
        const std::size_t t = parts.size();
        std::vector<int> best = parts;
        std::vector<int> cur(t);
        for (std::size_t s = 1; s < t; ++s) {
            for (std::size_t j = 0; j < t; ++j) cur[j] = parts[(s + j) % t];
            if (cur < best) best = cur;
        }
        CyclicPartition c;
        c.parts = std::move(best);
        return c;
    }

    bool operator==(const CyclicPartition& o) const {
        return canonical().parts == o.canonical().parts;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

// Number of cyclic start positions at which `pattern` appears, wrap-around
// counted: e.g. the pattern (a,a) appears once in the one-part partition (a).
inline int count_occurrences(const CyclicPartition& p, const std::vector<int>& pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    const int t = p.count();
    int hits = 0;
    for (int i = 0; i < t; ++i) {
        bool match = true;
        for (std::size_t j = 0; j < pattern.size() && match; ++j)
            match = p.parts[(i + j) % t] == pattern[j];
        hits += match;
    }
    return hits;
}

inline std::vector<int> repeat_pattern(std::initializer_list<int> base, int times) {
    std::vector<int> out;
    out.reserve(base.size() * times);
    for (int k = 0; k < times; ++k) out.insert(out.end(), base);
    return out;
}

// c(a,b) = c(b,a) for all a,b in {3,4,5}
inline bool is_admissible(const CyclicPartition& p) {
    for (int a = 3; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b)
            if (count_occurrences(p, {a, b}) != count_occurrences(p, {b, a})) return false;
    return true;
}

// Canonical admissible partition of ell.
//  - ell = 5: (5)
//  - 3 <= ell < 500: x threes then y fours, y minimal
//  - ell >= 500: six doubled blocks (3,3)^m (3,4)^m (4,4)^m (4,5)^m (5,5)^m
//    (3,5)^m with m = ell'/48 for the unique multiple of 48 in
//    (ell-61, ell-13], then fours followed by threes for the remainder; every
//    (a,b)^6 then appears at least ell/200 times.
inline CyclicPartition admissible_partition(int ell) {
    if (ell < 3) throw std::invalid_argument("no cyclic {3,4,5}-partition of " + std::to_string(ell));
    if (ell == 5) return CyclicPartition({5});
    if (ell < 500) {
        int y = ell % 3 == 0 ? 0 : (ell % 3 == 1 ? 1 : 2); // minimal number of fours
        int x = (ell - 4 * y) / 3;
        if (x < 0) throw std::invalid_argument("no representation 3x+4y for " + std::to_string(ell));
        std::vector<int> ps(x, 3);
        ps.insert(ps.end(), y, 4);
        return CyclicPartition(std::move(ps));
    }
    const int lp = ((ell - 13) / 48) * 48; // unique multiple of 48 in (ell-61, ell-13]
    const int m = lp / 48;
    std::vector<int> ps;
    ps.reserve(std::size_t(lp) / 3 + 20);
    for (auto blk : {std::pair{3, 3}, {3, 4}, {4, 4}, {4, 5}, {5, 5}, {3, 5}})
        for (int k = 0; k < m; ++k) {
            ps.push_back(blk.first);
            ps.push_back(blk.second);
        }
    int rem = ell - lp; // 13 <= rem <= 60
    int y = 0, x = 0;
    for (y = 1; y <= 4; ++y) {
        if ((rem - 4 * y) % 3 == 0 && rem - 4 * y >= 3) {
            x = (rem - 4 * y) / 3;
            break;
        }
    }
    ps.insert(ps.end(), y, 4);
    ps.insert(ps.end(), x, 3);
    return CyclicPartition(std::move(ps));
}

// Appearance counts of a single cyclic partition: singles c(a) and ordered
// pairs c(a,b); the rich (a,b)^6 counts are filled on demand.
struct CountTable {
    std::array<int, 3> singles{};            // index a-3
    std::array<std::array<int, 3>, 3> pairs{}; // [a-3][b-3]

    int single(int a) const { return singles[a - 3]; }
    int pair(int a, int b) const { return pairs[a - 3][b - 3]; }

    CountTable& operator+=(const CountTable& o) {
        for (int i = 0; i < 3; ++i) {
            singles[i] += o.singles[i];
            for (int j = 0; j < 3; ++j) pairs[i][j] += o.pairs[i][j];
        }
        return *this;
    }
};

inline CountTable count_table(const CyclicPartition& p) {
    CountTable t;
    for (int a = 3; a <= 5; ++a) {
        t.singles[a - 3] = count_occurrences(p, {a});
        for (int b = 3; b <= 5; ++b) t.pairs[a - 3][b - 3] = count_occurrences(p, {a, b});
    }
    return t;
}

inline int rich_six(const CyclicPartition& p, int a, int b) {
    return count_occurrences(p, repeat_pattern({a, b}, 6));
}

// Family hook: cycle length -> cyclic partition. Defaults to the canonical
// admissible partition.
using PartitionFamily = std::function<CyclicPartition(int)>;

inline PartitionFamily canonical_family() {
    return [](int ell) { return admissible_partition(ell); };
}

// c^F summed over the cycles of a factor.
struct FactorCounts {
    CountTable table;
    std::vector<CyclicPartition> per_cycle; // aligned with f.cycles

    int single(int a) const { return table.single(a); }
    int pair(int a, int b) const { return table.pair(a, b); }
};

inline FactorCounts factor_counts(const CycleFactor& f,
                                  const PartitionFamily& family = canonical_family()) {
    FactorCounts fc;
    for (const auto& c : f.cycles) {
        CyclicPartition p = family(int(c.size()));
        if (p.length() != int(c.size()))
            throw std::invalid_argument("family partition does not sum to cycle length " +
                                        std::to_string(c.size()));
        if (!is_admissible(p))
            throw std::invalid_argument("family partition " + p.to_string() + " is not admissible");
        fc.table += count_table(p);
        fc.per_cycle.push_back(std::move(p));
    }
    return fc;
}

} // namespace owp

#endif
