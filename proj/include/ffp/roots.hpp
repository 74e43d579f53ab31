#pragma once

// Simultaneous (Aberth-Ehrlich) root finding in BigFloat arithmetic. Used for
// diagnostics and curve emission; nothing downstream depends on it for
// correctness.

#include <cstddef>
#include <vector>

#include "ffp/polynomial.hpp"

namespace ffp {

struct ComplexBF {
    BigFloat re{0};
    BigFloat im{0};
};

struct RootFindOptions {
    BigFloat tol{BigFloat("1e-30")};
    std::size_t max_iterations = 1000;
};

struct RootFindResult {
    std::vector<ComplexBF> roots;  // all roots, sorted by (re, im)
    RootList<BigFloat> real;       // real parts of roots with |im| < tol
    std::size_t iterations = 0;
};

/// Throws ParameterError on a constant or zero polynomial and ConvergenceError
/// when the iteration cap is reached.
RootFindResult find_roots(const Polynomial<BigFloat>& p, const RootFindOptions& opts = {});

}  // namespace ffp
