#pragma once

// Random symmetric matrices and their characteristic polynomials.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ffp/polynomial.hpp"

namespace ffp {

enum class EnsembleKind { wigner, wishart };
enum class EntryLaw { gaussian, rademacher };

std::string to_string(EnsembleKind kind);
std::string to_string(EntryLaw law);
EnsembleKind parse_ensemble_kind(const std::string& text);
EntryLaw parse_entry_law(const std::string& text);

struct MatrixEnsembleConfig {
    EnsembleKind kind = EnsembleKind::wigner;
    std::size_t n = 1;
    EntryLaw law = EntryLaw::gaussian;
    std::uint64_t seed = 0;
    std::size_t rows = 0;  // Wishart: X is rows x n; 0 means square
};

constexpr std::size_t kMaxMatrixSize = 2000;

/// Row-major n x n symmetric matrix: Wigner fills the upper triangle (diagonal
/// included) with iid entries and mirrors it; Wishart returns X^T X.
std::vector<double> sample_matrix(const MatrixEnsembleConfig& cfg);

/// Eigenvalues (ascending) of the sampled matrix, from a dense double-precision
/// symmetric solver.
std::vector<double> sample_eigenvalues(const MatrixEnsembleConfig& cfg);

/// prod (z - lambda_i) assembled in BigFloat from the computed eigenvalues.
Polynomial<BigFloat> wigner_char_poly(const MatrixEnsembleConfig& cfg);
Polynomial<BigFloat> wishart_char_poly(const MatrixEnsembleConfig& cfg);

}  // namespace ffp
