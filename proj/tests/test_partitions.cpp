#include <gtest/gtest.h>

#include <set>

#include "ffp/identities.hpp"
#include "ffp/partitions.hpp"

using namespace ffp;

namespace {

// Bell numbers from B(j+1) = sum_k C(j,k) B(k).
std::vector<Integer> bell_by_recurrence(std::size_t upto) {
    std::vector<Integer> b{1};
    for (std::size_t j = 0; j < upto; ++j) {
        Integer s = 0, c = 1;
        for (std::size_t k = 0; k <= j; ++k) {
            s += c * b[k];
            c = c * (j - k) / (k + 1);
        }
        b.push_back(s);
    }
    return b;
}

SetPartition P(std::size_t j, std::vector<std::vector<int>> blocks) { return SetPartition::from_blocks(j, blocks); }

}  // namespace

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_partitions(1).size(), 1u);
    EXPECT_EQ(enumerate_partitions(3).size(), 5u);
    EXPECT_EQ(enumerate_partitions(5).size(), 52u);
    const auto bell = bell_by_recurrence(12);
    for (std::size_t j = 1; j <= 11; ++j) {
        std::size_t count = 0;
        for_each_partition(j, [&](const SetPartition&) { ++count; });
        EXPECT_EQ(Integer(count), bell[j]) << "j=" << j;
        EXPECT_EQ(bell_number(j), bell[j]);
    }
}

TEST(Enumerate, DistinctAndCanonical) {
    std::set<std::string> seen;
    for (const auto& p : enumerate_partitions(6)) {
        EXPECT_TRUE(seen.insert(p.to_string()).second);
        EXPECT_EQ(p.rgs()[0], 0);
        std::uint32_t all = 0;
        for (auto m : p.block_masks()) {
            EXPECT_NE(m, 0u);
            EXPECT_EQ(all & m, 0u);
            all |= m;
        }
        EXPECT_EQ(all, (1u << 6) - 1);
    }
}

TEST(Enumerate, Guard) {
    EXPECT_THROW(enumerate_partitions(0), GuardError);
    EXPECT_THROW(enumerate_partitions(13), GuardError);
}

TEST(PairPartitions, Counts) {
    EXPECT_EQ(enumerate_pair_partitions(2).size(), 1u);
    EXPECT_EQ(enumerate_pair_partitions(4).size(), 3u);
    EXPECT_EQ(enumerate_pair_partitions(6).size(), 15u);
    EXPECT_EQ(enumerate_pair_partitions(10).size(), 945u);
    EXPECT_TRUE(enumerate_pair_partitions(5).empty());
    for (const auto& p : enumerate_pair_partitions(8))
        for (auto s : p.block_sizes()) EXPECT_EQ(s, 2u);
}

TEST(Refines, Examples) {
    const auto bottom = SetPartition::bottom(3);
    for (const auto& p : enumerate_partitions(3)) {
        EXPECT_TRUE(refines(bottom, p));
        EXPECT_TRUE(refines(p, p));
    }
    EXPECT_FALSE(refines(P(3, {{1, 2}, {3}}), P(3, {{1}, {2}, {3}})));
    EXPECT_THROW(refines(bottom, SetPartition::bottom(4)), ParameterError);
}

TEST(Join, Examples) {
    const auto s = P(4, {{1, 3}, {2}, {4}});
    EXPECT_EQ(join(SetPartition::bottom(4), s), s);
    EXPECT_EQ(join(P(4, {{1, 2}, {3, 4}}), P(4, {{2, 3}, {1}, {4}})), SetPartition::top(4));
    EXPECT_EQ(join(s, s), s);
    EXPECT_THROW(join(s, SetPartition::bottom(3)), ParameterError);
}

TEST(Join, LatticeLaws) {
    for (std::size_t j = 1; j <= 5; ++j) {
        const auto parts = enumerate_partitions(j);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                const auto ab = join(a, b);
                EXPECT_EQ(ab, join(b, a));
                EXPECT_TRUE(refines(a, ab));
                EXPECT_TRUE(refines(b, ab));
                EXPECT_EQ(joins_to_top(a, b), ab == SetPartition::top(j));
                // monotone: a <= c implies a v b <= c v b
                for (const auto& c : parts)
                    if (refines(a, c)) EXPECT_TRUE(refines(ab, join(c, b)));
            }
        // associativity on a sample of triples
        for (std::size_t i = 0; i < parts.size(); i += 3)
            for (std::size_t k = 0; k < parts.size(); k += 5)
                for (std::size_t l = 0; l < parts.size(); l += 7)
                    EXPECT_EQ(join(join(parts[i], parts[k]), parts[l]), join(parts[i], join(parts[k], parts[l])));
    }
}

TEST(Mobius, BottomExamples) {
    EXPECT_EQ(mobius_bottom(SetPartition::bottom(4)), 1);
    EXPECT_EQ(mobius_bottom(SetPartition::top(3)), 2);
    EXPECT_EQ(mobius_bottom(P(4, {{1, 2}, {3, 4}})), 1);
}

TEST(Mobius, GeneralExamples) {
    for (const auto& p : enumerate_partitions(4)) EXPECT_EQ(mobius(p, p), 1);
    EXPECT_EQ(mobius(P(3, {{1, 2}, {3}}), P(3, {{1, 3}, {2}})), 0);
    EXPECT_EQ(mobius(SetPartition::bottom(3), SetPartition::top(3)), 2);
    for (const auto& p : enumerate_partitions(5)) EXPECT_EQ(mobius(SetPartition::bottom(5), p), mobius_bottom(p));
}

TEST(Mobius, Recursion) {
    // For sigma strictly below 1_j: sum over rho >= sigma of mu(sigma, rho) is 0.
    for (std::size_t j = 1; j <= 7; ++j) {
        const auto parts = enumerate_partitions(j);
        const auto top = SetPartition::top(j);
        for (const auto& s : parts) {
            if (s == top) continue;
            Integer sum = 0;
            for (const auto& r : parts)
                if (refines(s, r)) sum += mobius(s, r);
            EXPECT_EQ(sum, 0) << s.to_string();
        }
    }
}

TEST(Mobius, RecursionFromBelow) {
    // Defining recursion read from the other end: sum_{sigma <= rho} mu(sigma, rho) = [sigma = rho].
    for (std::size_t j = 2; j <= 6; ++j) {
        const auto parts = enumerate_partitions(j);
        for (const auto& r : parts) {
            Integer sum = 0;
            for (const auto& s : parts)
                if (refines(s, r)) sum += mobius(s, r);
            EXPECT_EQ(sum, r == SetPartition::bottom(j) ? 1 : 0);
        }
    }
}

TEST(PartitionProducts, Examples) {
    std::vector<Rational> ones(8, Rational(1));
    const auto bottom = SetPartition::bottom(4);
    EXPECT_EQ(partition_products(bottom, std::span<const Rational>(ones), Rational(4)).c_pi, 1);
    const auto p = P(3, {{1, 2}, {3}});
    EXPECT_EQ(partition_products(p, std::span<const Rational>(ones), Rational(4)).falling_pi, 48);
    EXPECT_EQ(partition_products(SetPartition::top(3), std::span<const Rational>(ones), Rational(4)).n_factorial_pi, 6);
    std::vector<Rational> short_seq(2, Rational(1));
    EXPECT_THROW(partition_products(SetPartition::top(3), std::span<const Rational>(short_seq), Rational(4)),
                 ParameterError);
}

TEST(PartitionTypes, CountsSumToBell) {
    for (std::size_t j = 1; j <= 10; ++j) {
        Integer total = 0;
        for (const auto& t : partition_types(j)) total += t.count;
        EXPECT_EQ(total, bell_number(j));
    }
}

TEST(PartitionTypes, ConnectedPairCountsMatchBruteForce) {
    for (std::size_t j = 1; j <= 5; ++j) {
        const auto parts = enumerate_partitions(j);
        const auto& types = partition_types(j);
        std::vector<std::vector<Integer>> brute(types.size(), std::vector<Integer>(types.size(), 0));
        for (const auto& s : parts)
            for (const auto& t : parts)
                if (joins_to_top(s, t)) brute[type_index(s.block_sizes())][type_index(t.block_sizes())] += 1;
        const auto& counts = connected_pair_counts(j);
        for (std::size_t a = 0; a < types.size(); ++a)
            for (std::size_t b = 0; b < types.size(); ++b)
                EXPECT_EQ(counts[a][b], brute[a][b]) << "j=" << j;
    }
}

TEST(CombinatorialIdentity, Exhaustive) {
    for (std::size_t j = 1; j <= 7; ++j)
        for (std::size_t d = 1; d <= 5; ++d) {
            const auto c = check_combinatorial_identity(j, d);
            EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
        }
}
