#include "ffp/partitions.hpp"

#include <bit>
#include <map>
#include <mutex>

namespace ffp {

PartitionGuards& partition_guards() {
    static PartitionGuards guards;
    return guards;
}

namespace {

void check_single_guard(std::size_t j) {
    if (j > partition_guards().max_single)
        throw GuardError("partition enumeration of size " + std::to_string(j) + " exceeds the guard " +
                         std::to_string(partition_guards().max_single));
    if (j > 32) throw GuardError("partitions are limited to 32 elements");
}

void check_same_ground(const SetPartition& a, const SetPartition& b) {
    if (a.ground_size() != b.ground_size()) throw ParameterError("partitions of different ground sets");
}

// Merge the blocks of `a` and `b` into connected components (bitmasks).
std::vector<std::uint32_t> components(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> comps = a;
    for (std::uint32_t block : b) {
        std::uint32_t merged = block;
        std::size_t w = 0;
        for (std::size_t r = 0; r < comps.size(); ++r) {
            if (comps[r] & block) {
                merged |= comps[r];
            } else {
                comps[w++] = comps[r];
            }
        }
        comps.resize(w);
        comps.push_back(merged);
    }
    return comps;
}

}  // namespace

// ---------------------------------------------------------------------------
// SetPartition

void SetPartition::rebuild_masks() {
    masks_.clear();
    for (std::size_t i = 0; i < rgs_.size(); ++i) {
        if (rgs_[i] >= masks_.size()) masks_.resize(rgs_[i] + 1u, 0);
        masks_[rgs_[i]] |= 1u << i;
    }
}

SetPartition SetPartition::from_rgs(std::vector<std::uint8_t> rgs) {
    if (rgs.size() > 32) throw ParameterError("partitions are limited to 32 elements");
    std::uint8_t next = 0;
    for (auto label : rgs) {
        if (label > next) throw ParameterError("not a restricted-growth string");
        if (label == next) ++next;
    }
    SetPartition p;
    p.rgs_ = std::move(rgs);
    p.rebuild_masks();
    return p;
}

SetPartition SetPartition::from_masks(std::size_t j, std::vector<std::uint32_t> masks) {
    if (j > 32) throw ParameterError("partitions are limited to 32 elements");
    const std::uint32_t full = j == 32 ? 0xffffffffu : ((1u << j) - 1u);
    std::uint32_t seen = 0;
    for (auto m : masks) {
        if (m == 0) throw ParameterError("empty block");
        if (m & seen) throw ParameterError("blocks overlap");
        if (m & ~full) throw ParameterError("block element outside the ground set");
        seen |= m;
    }
    if (seen != full) throw ParameterError("blocks do not cover the ground set");
    std::sort(masks.begin(), masks.end(), [](std::uint32_t x, std::uint32_t y) {
        return std::countr_zero(x) < std::countr_zero(y);
    });
    SetPartition p;
    p.rgs_.assign(j, 0);
    for (std::size_t b = 0; b < masks.size(); ++b)
        for (std::size_t i = 0; i < j; ++i)
            if (masks[b] >> i & 1u) p.rgs_[i] = static_cast<std::uint8_t>(b);
    p.masks_ = std::move(masks);
    return p;
}

SetPartition SetPartition::from_blocks(std::size_t j, const std::vector<std::vector<int>>& blocks) {
    std::vector<std::uint32_t> masks;
    for (const auto& block : blocks) {
        std::uint32_t m = 0;
        for (int e : block) {
            if (e < 1 || static_cast<std::size_t>(e) > j) throw ParameterError("block element outside the ground set");
            if (m >> (e - 1) & 1u) throw ParameterError("repeated element in a block");
            m |= 1u << (e - 1);
        }
        masks.push_back(m);
    }
    return from_masks(j, std::move(masks));
}

SetPartition SetPartition::bottom(std::size_t j) {
    std::vector<std::uint8_t> rgs(j);
    for (std::size_t i = 0; i < j; ++i) rgs[i] = static_cast<std::uint8_t>(i);
    return from_rgs(std::move(rgs));
}

SetPartition SetPartition::top(std::size_t j) { return from_rgs(std::vector<std::uint8_t>(j, 0)); }

std::vector<std::size_t> SetPartition::block_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(masks_.size());
    for (auto m : masks_) sizes.push_back(static_cast<std::size_t>(std::popcount(m)));
    return sizes;
}

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> out(masks_.size());
    for (std::size_t i = 0; i < rgs_.size(); ++i) out[rgs_[i]].push_back(static_cast<int>(i + 1));
    return out;
}

std::string SetPartition::to_string() const {
    std::string s = "[";
    auto bs = blocks();
    for (std::size_t b = 0; b < bs.size(); ++b) {
        if (b) s += ",";
        s += "[";
        for (std::size_t k = 0; k < bs[b].size(); ++k) {
            if (k) s += ",";
            s += std::to_string(bs[b][k]);
        }
        s += "]";
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// enumeration

class PartitionEnumerator {
   public:
    static void run(std::size_t j, const std::function<void(const SetPartition&)>& f) {
        SetPartition p;
        p.rgs_.assign(j, 0);
        if (j == 0) {
            f(p);
            return;
        }
        // prefix_max[i] = max(rgs[0..i]); classic next-rgs step.
        std::vector<std::uint8_t> prefix_max(j, 0);
        while (true) {
            p.rebuild_masks();
            f(p);
            std::size_t i = j - 1;
            while (i > 0 && p.rgs_[i] > prefix_max[i - 1]) --i;
            if (i == 0) return;
            ++p.rgs_[i];
            prefix_max[i] = std::max(prefix_max[i - 1], p.rgs_[i]);
            for (std::size_t k = i + 1; k < j; ++k) {
                p.rgs_[k] = 0;
                prefix_max[k] = prefix_max[i];
            }
        }
    }
};

void for_each_partition(std::size_t j, const std::function<void(const SetPartition&)>& f) {
    check_single_guard(j);
    PartitionEnumerator::run(j, f);
}

std::vector<SetPartition> enumerate_partitions(std::size_t j) {
    if (j < 1) throw GuardError("partition enumeration needs j >= 1");
    check_single_guard(j);
    std::vector<SetPartition> out;
    PartitionEnumerator::run(j, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

std::vector<SetPartition> enumerate_pair_partitions(std::size_t j) {
    check_single_guard(j);
    std::vector<SetPartition> out;
    if (j == 0 || j % 2 == 1) return out;
    std::vector<std::uint32_t> masks;
    // Pair the smallest unused element with each later unused one.
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t used) {
        if (std::popcount(used) == static_cast<int>(j)) {
            out.push_back(SetPartition::from_masks(j, masks));
            return;
        }
        int first = std::countr_one(used);
        for (std::size_t k = static_cast<std::size_t>(first) + 1; k < j; ++k) {
            if (used >> k & 1u) continue;
            masks.push_back((1u << first) | (1u << k));
            rec(used | (1u << first) | (1u << k));
            masks.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const SetPartition& a, const SetPartition& b) { return a.rgs() < b.rgs(); });
    return out;
}

// ---------------------------------------------------------------------------
// order structure

bool refines(const SetPartition& sigma, const SetPartition& rho) {
    check_same_ground(sigma, rho);
    for (auto b : sigma.block_masks()) {
        std::uint32_t home = rho.block_masks()[rho.rgs()[static_cast<std::size_t>(std::countr_zero(b))]];
        if ((b & ~home) != 0) return false;
    }
    return true;
}

SetPartition join(const SetPartition& pi, const SetPartition& sigma) {
    check_same_ground(pi, sigma);
    return SetPartition::from_masks(pi.ground_size(), components(pi.block_masks(), sigma.block_masks()));
}

bool joins_to_top(const SetPartition& pi, const SetPartition& sigma) {
    check_same_ground(pi, sigma);
    if (pi.num_blocks() == 1 || sigma.num_blocks() == 1) return pi.ground_size() > 0;
    return components(pi.block_masks(), sigma.block_masks()).size() == 1;
}

Integer mobius_bottom_from_sizes(std::span<const std::size_t> sizes) {
    Integer r = 1;
    std::size_t total = 0;
    for (auto s : sizes) {
        r *= integer_factorial(s - 1);
        total += s;
    }
    return (total - sizes.size()) % 2 == 0 ? r : Integer(-r);
}

Integer mobius_bottom(const SetPartition& rho) {
    auto sizes = rho.block_sizes();
    return mobius_bottom_from_sizes(sizes);
}

Integer mobius(const SetPartition& sigma, const SetPartition& rho) {
    check_same_ground(sigma, rho);
    if (!refines(sigma, rho)) return 0;
    // Each block of rho containing c blocks of sigma contributes (c-1)!.
    std::vector<std::size_t> contained(rho.num_blocks(), 0);
    for (auto b : sigma.block_masks()) ++contained[rho.rgs()[static_cast<std::size_t>(std::countr_zero(b))]];
    Integer r = 1;
    for (auto c : contained) r *= integer_factorial(c - 1);
    return (sigma.num_blocks() - rho.num_blocks()) % 2 == 0 ? r : Integer(-r);
}

Integer bell_number(std::size_t j) {
    std::vector<Integer> b{1};
    for (std::size_t m = 0; m < j; ++m) {
        Integer next = 0;
        Integer c = 1;  // C(m, k)
        for (std::size_t k = 0; k <= m; ++k) {
            next += c * b[k];
            c = c * static_cast<unsigned long>(m - k) / static_cast<unsigned long>(k + 1);
        }
        b.push_back(next);
    }
    return b[j];
}

// ---------------------------------------------------------------------------
// types

namespace {

std::mutex& type_mutex() {
    static std::mutex m;
    return m;
}

void integer_partitions(std::size_t remaining, std::size_t cap, std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t s = std::min(remaining, cap); s >= 1; --s) {
        cur.push_back(s);
        integer_partitions(remaining - s, s, cur, out);
        cur.pop_back();
    }
}

std::vector<PartitionType> build_types(std::size_t j) {
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::size_t> cur;
    integer_partitions(j, j, cur, shapes);
    std::vector<PartitionType> out;
    for (auto& sizes : shapes) {
        Integer denom = 1;
        std::map<std::size_t, std::size_t> mult;
        for (auto s : sizes) {
            denom *= integer_factorial(s);
            ++mult[s];
        }
        for (auto [s, m] : mult) denom *= integer_factorial(m);
        PartitionType t;
        t.count = integer_factorial(j) / denom;
        t.mobius = mobius_bottom_from_sizes(sizes);
        t.sizes = std::move(sizes);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

const std::vector<PartitionType>& partition_types(std::size_t j) {
    static std::map<std::size_t, std::vector<PartitionType>> cache;
    std::lock_guard lock(type_mutex());
    auto it = cache.find(j);
    if (it == cache.end()) it = cache.emplace(j, build_types(j)).first;
    return it->second;
}

std::size_t type_index(std::vector<std::size_t> sizes) {
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    std::size_t j = 0;
    for (auto s : sizes) j += s;
    const auto& types = partition_types(j);
    for (std::size_t i = 0; i < types.size(); ++i)
        if (types[i].sizes == sizes) return i;
    throw ParameterError("not a partition type");
}

const std::vector<std::vector<Integer>>& connected_pair_counts(std::size_t j) {
    if (j > partition_guards().max_pair)
        throw GuardError("double partition sum of size " + std::to_string(j) + " exceeds the guard " +
                         std::to_string(partition_guards().max_pair));
    static std::map<std::size_t, std::vector<std::vector<Integer>>> cache;
    {
        std::lock_guard lock(type_mutex());
        auto it = cache.find(j);
        if (it != cache.end()) return it->second;
    }
    const auto& types = partition_types(j);
    std::vector<std::vector<Integer>> counts(types.size(), std::vector<Integer>(types.size(), 0));
    // Connectivity of sigma v tau is invariant under relabelling the ground set,
    // so one representative sigma per type suffices.
    for (std::size_t s = 0; s < types.size(); ++s) {
        std::vector<std::uint32_t> masks;
        std::size_t start = 0;
        for (auto size : types[s].sizes) {
            masks.push_back(((1u << size) - 1u) << start);
            start += size;
        }
        SetPartition sigma = SetPartition::from_masks(j, masks);
        std::vector<Integer> hits(types.size(), 0);
        for_each_partition(j, [&](const SetPartition& tau) {
            if (joins_to_top(sigma, tau)) ++hits[type_index(tau.block_sizes())];
        });
        for (std::size_t t = 0; t < types.size(); ++t) counts[s][t] = hits[t] * types[s].count;
    }
    std::lock_guard lock(type_mutex());
    return cache.emplace(j, std::move(counts)).first->second;
}

std::vector<std::size_t> merged_sizes(const SetPartition& rho, std::span<const std::size_t> sizes) {
    if (rho.ground_size() != sizes.size()) throw ParameterError("coarsening of mismatched size");
    std::vector<std::size_t> out(rho.num_blocks(), 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) out[rho.rgs()[i]] += sizes[i];
    return out;
}

}  // namespace ffp
