#ifndef OWP_ATOMS_HPP
#define OWP_ATOMS_HPP

#include <array>
#include <deque>
#include <string>
#include <vector>

#include "owp/fpartition.hpp"

namespace owp {

// Smallest internally balanced matching patterns. An {a}-atom has one edge
// inside X1_{a,a} and one inside each X_{a,i}; an {a,b}-atom has one edge
// inside each of X1_{a,b}, X1_{b,a} and each X_{a,i}, X_{b,i}.
struct Atom {
    int a = 0, b = 0; // b == 0 for a singleton atom
    std::vector<std::pair<int, Edge>> placed; // (class, edge), one edge per class

    int edge_count() const { return a + b; }
    bool singleton() const { return b == 0; }

    static std::vector<int> classes_for(int a, int b) {
        std::vector<int> cls;
        if (b == 0) {
            cls.push_back(fp_y_class(a, a));
            for (int i = 2; i <= a; ++i) cls.push_back(fp_path_class(a, i));
        } else {
            cls.push_back(fp_y_class(a, b));
            cls.push_back(fp_y_class(b, a));
            for (int i = 2; i <= a; ++i) cls.push_back(fp_path_class(a, i));
            for (int i = 2; i <= b; ++i) cls.push_back(fp_path_class(b, i));
        }
        return cls;
    }
};

// the six atom kinds in canonical order
inline const std::vector<std::pair<int, int>>& atom_kinds() {
    static const std::vector<std::pair<int, int>> kinds = {{3, 0}, {4, 0}, {5, 0},
                                                           {3, 4}, {3, 5}, {4, 5}};
    return kinds;
}

struct BalanceCheck {
    bool ok = true;
    std::string violated; // which equation failed, when not ok
};

// Internal balance: e(X^a_1) = ... = e(X^a_a) for every a, and
// e(X1_{a,b}) = e(X1_{b,a}) for every ordered pair. Edges must lie inside
// classes.
inline BalanceCheck is_internally_balanced(const EdgeList& h, const FPartition& fp) {
    std::array<long long, kNumClasses> cnt{};
    for (const Edge& e : h) {
        int cu = fp.class_of[e.u], cv = fp.class_of[e.v];
        if (cu != cv)
            throw std::invalid_argument("crossing edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") between classes");
        ++cnt[cu];
    }
    BalanceCheck chk;
    for (int a = 3; a <= 5; ++a) {
        long long hat1 = cnt[fp_y_class(a, 3)] + cnt[fp_y_class(a, 4)] + cnt[fp_y_class(a, 5)];
        for (int i = 2; i <= a; ++i)
            if (cnt[fp_path_class(a, i)] != hat1) {
                chk.ok = false;
                chk.violated = "e(X^" + std::to_string(a) + "_1) != e(X^" + std::to_string(a) +
                               "_" + std::to_string(i) + ")";
                return chk;
            }
    }
    for (int a = 3; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b)
            if (cnt[fp_y_class(a, b)] != cnt[fp_y_class(b, a)]) {
                chk.ok = false;
                chk.violated = "e(X1_{" + std::to_string(a) + "," + std::to_string(b) +
                               "}) != e(X1_{" + std::to_string(b) + "," + std::to_string(a) + "})";
                return chk;
            }
    return chk;
}

// Repeatedly remove atoms; internal balance guarantees this consumes every
// edge. Edges are taken in input order per class.
inline std::vector<Atom> decompose_into_atoms(const EdgeList& h, const FPartition& fp) {
    BalanceCheck chk = is_internally_balanced(h, fp);
    if (!chk.ok)
        throw std::invalid_argument("graph is not internally balanced: " + chk.violated);

    std::array<std::deque<Edge>, kNumClasses> stacks;
    for (const Edge& e : h) stacks[fp.class_of[e.u]].push_back(e);

    std::vector<Atom> atoms;
    long long remaining = (long long)h.size();
    while (remaining > 0) {
        bool took = false;
        for (auto [a, b] : atom_kinds()) {
            auto need = Atom::classes_for(a, b);
            bool have = true;
            for (int cls : need) have &= !stacks[cls].empty();
            if (!have) continue;
            Atom at;
            at.a = a;
            at.b = b;
            for (int cls : need) {
                at.placed.emplace_back(cls, stacks[cls].front());
                stacks[cls].pop_front();
                --remaining;
            }
            atoms.push_back(std::move(at));
            took = true;
            break;
        }
        if (!took)
            throw std::logic_error("balanced edge set ran out of atoms; counts corrupted");
    }
    return atoms;
}

} // namespace owp

#endif
