#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "owp/partitions.hpp"

using namespace owp;

TEST_CASE("cyclic occurrence counting wraps around") {
    CHECK(count_occurrences(CyclicPartition({3}), {3, 3}) == 1);
    CHECK(count_occurrences(CyclicPartition({3, 4}), {4, 3}) == 1);
    CHECK(count_occurrences(CyclicPartition({3, 3, 4}), {3}) == 2);
    CHECK(count_occurrences(CyclicPartition({3, 4}), {3, 4, 3, 4}) == 1);
}

TEST_CASE("rotation-invariant equality") {
    CHECK(CyclicPartition({3, 4, 5}) == CyclicPartition({4, 5, 3}));
    CHECK(CyclicPartition({3, 4, 5}) == CyclicPartition({5, 3, 4}));
    CHECK_FALSE(CyclicPartition({3, 4, 5}) == CyclicPartition({3, 5, 4}));
    CHECK(CyclicPartition({4, 3}).canonical().parts == std::vector<int>{3, 4});
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(CyclicPartition({3})));
    CHECK(is_admissible(CyclicPartition({3, 4})));
    CHECK_FALSE(is_admissible(CyclicPartition({3, 4, 5})));
}

TEST_CASE("canonical admissible partitions") {
    CHECK(admissible_partition(5).parts == std::vector<int>{5});
    CHECK(admissible_partition(7).parts == std::vector<int>{3, 4});
    CHECK(admissible_partition(3).parts == std::vector<int>{3});
    CHECK(admissible_partition(4).parts == std::vector<int>{4});
    CHECK(admissible_partition(6).parts == std::vector<int>{3, 3});
    CHECK_THROWS_AS(admissible_partition(2), std::invalid_argument);

    for (int ell = 3; ell <= 600; ++ell) {
        CyclicPartition p = admissible_partition(ell);
        CHECK(p.length() == ell);
        CHECK(is_admissible(p));
    }
}

TEST_CASE("rich pair windows for long lengths") {
    CyclicPartition p = admissible_partition(500);
    for (int a = 3; a <= 5; ++a)
        for (int b = 3; b <= 5; ++b) {
            INFO("pair ", a, ",", b);
            CHECK(rich_six(p, a, b) >= 3); // 500/200 rounded up
        }
}

TEST_CASE("count table identities") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 50; ++it) {
        int ell = 3 + int(rng() % 900);
        CyclicPartition p = admissible_partition(ell);
        CountTable t = count_table(p);
        int sum = 0;
        for (int a = 3; a <= 5; ++a) sum += a * t.single(a);
        CHECK(sum == ell);
        for (int a = 3; a <= 5; ++a) {
            int pairs = 0;
            for (int b = 3; b <= 5; ++b) pairs += t.pair(a, b);
            CHECK(t.single(a) == pairs);
        }
        for (int a = 3; a <= 5; ++a)
            for (int b = 3; b <= 5; ++b) CHECK(t.pair(a, b) == t.pair(b, a));
    }
}

TEST_CASE("factor counts") {
    SUBCASE("C7 uses the (3,4) partition") {
        CycleFactor f(7, {{0, 1, 2, 3, 4, 5, 6}});
        FactorCounts fc = factor_counts(f);
        CHECK(fc.single(3) == 1);
        CHECK(fc.single(4) == 1);
        CHECK(fc.single(5) == 0);
        CHECK(fc.pair(3, 4) == 1);
        CHECK(fc.pair(4, 3) == 1);
        CHECK(fc.pair(3, 3) == 0);
    }
    SUBCASE("C5 uses (5)") {
        CycleFactor f(5, {{0, 1, 2, 3, 4}});
        FactorCounts fc = factor_counts(f);
        CHECK(fc.single(5) == 1);
        CHECK(fc.pair(5, 5) == 1);
    }
    SUBCASE("two C6 components add up") {
        CycleFactor f(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
        FactorCounts fc = factor_counts(f);
        CHECK(fc.single(3) == 4);
        CHECK(fc.pair(3, 3) == 4);
        CHECK(fc.single(4) == 0);
    }
    SUBCASE("additive over disjoint unions") {
        std::mt19937_64 rng(4);
        for (int it = 0; it < 20; ++it) {
            int l1 = 3 + int(rng() % 40), l2 = 3 + int(rng() % 40);
            std::vector<Vertex> c1(l1), c2(l2), c2s(l2);
            std::iota(c1.begin(), c1.end(), 0);
            std::iota(c2.begin(), c2.end(), 0);
            std::iota(c2s.begin(), c2s.end(), l1);
            CycleFactor f1(l1, {c1}), f2(l2, {c2}), both(l1 + l2, {c1, c2s});
            CountTable sum = factor_counts(f1).table;
            sum += factor_counts(f2).table;
            CountTable got = factor_counts(both).table;
            for (int a = 3; a <= 5; ++a) {
                CHECK(sum.single(a) == got.single(a));
                for (int b = 3; b <= 5; ++b) CHECK(sum.pair(a, b) == got.pair(a, b));
            }
        }
    }
    SUBCASE("family values must be admissible partitions of the right length") {
        CycleFactor f(7, {{0, 1, 2, 3, 4, 5, 6}});
        PartitionFamily bad_len = [](int) { return CyclicPartition({3, 3}); };
        CHECK_THROWS_AS(factor_counts(f, bad_len), std::invalid_argument);
        PartitionFamily bad_adm = [](int) { return CyclicPartition({3, 4, 5} /* sums to 12 */); };
        CycleFactor f12(12, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}});
        CHECK_THROWS_AS(factor_counts(f12, bad_adm), std::invalid_argument);
    }
}
