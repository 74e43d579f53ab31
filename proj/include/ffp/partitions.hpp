#pragma once

// Set partitions of {1..j}: enumeration, refinement order, join, the Moebius
// function and partition-indexed products.
//
// A partition is held as its restricted-growth string (rgs[i] is the block of
// element i+1, blocks numbered by least element) together with one bitmask per
// block, which makes join and refinement a few word operations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffp/scalar.hpp"

namespace ffp {

/// Hard caps on enumeration sizes. `max_pair` bounds double sums over
/// (sigma, tau) pairs; raising it is an explicit opt-in.
struct PartitionGuards {
    std::size_t max_single = 12;
    std::size_t max_pair = 8;
};

PartitionGuards& partition_guards();

class SetPartition {
   public:
    SetPartition() = default;

    /// Validates a restricted-growth string (0-based labels).
    static SetPartition from_rgs(std::vector<std::uint8_t> rgs);
    /// Blocks of 1-based elements, in any order.
    static SetPartition from_blocks(std::size_t j, const std::vector<std::vector<int>>& blocks);
    static SetPartition from_masks(std::size_t j, std::vector<std::uint32_t> masks);
    static SetPartition bottom(std::size_t j);  // 0_j, all singletons
    static SetPartition top(std::size_t j);     // 1_j, one block

    std::size_t ground_size() const { return rgs_.size(); }
    std::size_t num_blocks() const { return masks_.size(); }
    const std::vector<std::uint8_t>& rgs() const { return rgs_; }
    /// Block bitmasks (bit i is element i+1) in order of least element.
    const std::vector<std::uint32_t>& block_masks() const { return masks_; }
    std::vector<std::size_t> block_sizes() const;
    std::vector<std::vector<int>> blocks() const;

    /// Nested-array text such as [[1,2],[3]].
    std::string to_string() const;

    friend bool operator==(const SetPartition&, const SetPartition&) = default;

   private:
    friend class PartitionEnumerator;
    void rebuild_masks();

    std::vector<std::uint8_t> rgs_;
    std::vector<std::uint32_t> masks_;
};

/// Calls f(partition) for every partition of {1..j} in lexicographic rgs order.
/// The reference is only valid during the call.
void for_each_partition(std::size_t j, const std::function<void(const SetPartition&)>& f);

/// All Bell(j) partitions. Raises GuardError for j < 1 or j above the guard.
std::vector<SetPartition> enumerate_partitions(std::size_t j);

/// All (j-1)!! pair partitions; empty for odd j.
std::vector<SetPartition> enumerate_pair_partitions(std::size_t j);

bool refines(const SetPartition& sigma, const SetPartition& rho);
SetPartition join(const SetPartition& pi, const SetPartition& sigma);
/// pi v sigma == 1_j without building the join.
bool joins_to_top(const SetPartition& pi, const SetPartition& sigma);

/// mu(0_j, rho) = (-1)^{j-|rho|} prod (|V|-1)!.
Integer mobius_bottom(const SetPartition& rho);
Integer mobius_bottom_from_sizes(std::span<const std::size_t> sizes);
/// mu(sigma, rho): 0 unless sigma refines rho.
Integer mobius(const SetPartition& sigma, const SetPartition& rho);

/// Bell(j) via the binomial recurrence.
Integer bell_number(std::size_t j);

template <Scalar T>
struct PartitionStats {
    std::vector<std::size_t> size_profile;  // block sizes, descending
    T c_pi;
    std::optional<T> c_2pi;  // present when c is defined up to twice the largest block
    Integer n_factorial_pi;  // prod |V|!
    T falling_pi;            // prod (n)_{|V|}
};

/// `c[k]` is c_k for k >= 1 (c[0] is ignored).
template <Scalar T>
PartitionStats<T> partition_products(const SetPartition& pi, std::span<const T> c, const T& n) {
    PartitionStats<T> s;
    s.size_profile = pi.block_sizes();
    std::sort(s.size_profile.begin(), s.size_profile.end(), std::greater<>());
    const std::size_t biggest = s.size_profile.empty() ? 0 : s.size_profile.front();
    if (biggest >= c.size()) throw ParameterError("sequence accessor does not reach block size " + std::to_string(biggest));
    s.c_pi = from_int<T>(1);
    s.n_factorial_pi = 1;
    s.falling_pi = from_int<T>(1);
    bool twice = 2 * biggest < c.size();
    T c2 = from_int<T>(1);
    for (std::size_t b : s.size_profile) {
        s.c_pi *= c[b];
        if (twice) c2 *= c[2 * b];
        s.n_factorial_pi *= integer_factorial(b);
        s.falling_pi *= falling(n, b);
    }
    if (twice) s.c_2pi = c2;
    return s;
}

// ---------------------------------------------------------------------------
// Partition types. Every sum in the cumulant calculus has a summand that
// depends only on block sizes, so sums over P(j) reduce to sums over integer
// partitions of j weighted by how many set partitions have that profile.

struct PartitionType {
    std::vector<std::size_t> sizes;  // descending
    Integer count;                   // number of set partitions of [j] with these block sizes
    Integer mobius;                  // mu(0_j, pi) for any pi of this type
};

/// Integer partitions of j (descending sizes) in a fixed order, with counts
/// j! / (prod sizes! prod multiplicities!). Cached.
const std::vector<PartitionType>& partition_types(std::size_t j);

/// Index into partition_types(sum of sizes) of a (any-order) size profile.
std::size_t type_index(std::vector<std::size_t> sizes);

/// N[s][t] = #{(sigma, tau) : type(sigma) = s, type(tau) = t, sigma v tau = 1_j}.
/// Guarded by max_pair. Cached.
const std::vector<std::vector<Integer>>& connected_pair_counts(std::size_t j);

/// Block sizes of the coarsening rho of a partition whose blocks have sizes
/// `sizes`: block B of rho has size sum_{i in B} sizes[i].
std::vector<std::size_t> merged_sizes(const SetPartition& rho, std::span<const std::size_t> sizes);

}  // namespace ffp
