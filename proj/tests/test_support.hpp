#pragma once

// Small helpers and naive oracles shared by the unit tests.

#include <random>
#include <vector>

#include "ffp/polynomial.hpp"

namespace ffp::testing {

using Q = Rational;
using PQ = Polynomial<Rational>;

/// Ascending monomial coefficients, e.g. mono({-1, 0, 1}) = z^2 - 1.
inline PQ mono(std::vector<Q> c) { return PQ::from_monomial(c); }

inline PQ roots_poly(std::vector<Q> r) { return from_roots(std::span<const Q>(r)); }

/// Product of (z - r) by schoolbook multiplication of ascending coefficient lists.
inline std::vector<Q> naive_expand(const std::vector<Q>& roots) {
    std::vector<Q> c{Q(1)};
    for (const auto& r : roots) {
        std::vector<Q> next(c.size() + 1, Q(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

/// Power sum average of the roots.
inline Q power_mean(const std::vector<Q>& roots, std::size_t j) {
    Q s = 0;
    for (const auto& r : roots) s += pow_int(r, j);
    return s / Q(static_cast<long>(roots.size()));
}

/// Random rationals with small numerators and denominators.
class RationalSource {
   public:
    explicit RationalSource(std::uint64_t seed) : rng_(seed) {}
    Q next(int num = 9, int den = 4) {
        std::uniform_int_distribution<int> n(-num, num), d(1, den);
        return Q(n(rng_), d(rng_));
    }
    std::size_t degree(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    /// Monic with random signed coefficients a_1..a_n (not necessarily real-rooted).
    PQ monic(std::size_t n) {
        std::vector<Q> a{Q(1)};
        for (std::size_t i = 1; i <= n; ++i) a.push_back(next());
        return PQ::from_signed(a);
    }
    std::vector<Q> roots(std::size_t n) {
        std::vector<Q> r;
        for (std::size_t i = 0; i < n; ++i) r.push_back(next());
        return r;
    }

   private:
    std::mt19937_64 rng_;
};

}  // namespace ffp::testing
