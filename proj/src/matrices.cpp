#include "ffp/matrices.hpp"

#include <Eigen/Dense>
#include <random>

namespace ffp {

std::string to_string(EnsembleKind kind) { return kind == EnsembleKind::wigner ? "wigner" : "wishart"; }
std::string to_string(EntryLaw law) { return law == EntryLaw::gaussian ? "gaussian" : "rademacher"; }

EnsembleKind parse_ensemble_kind(const std::string& text) {
    if (text == "wigner") return EnsembleKind::wigner;
    if (text == "wishart") return EnsembleKind::wishart;
    throw ParameterError("unknown ensemble '" + text + "'");
}

EntryLaw parse_entry_law(const std::string& text) {
    if (text == "gaussian") return EntryLaw::gaussian;
    if (text == "rademacher" || text == "pm1") return EntryLaw::rademacher;
    throw ParameterError("unknown entry law '" + text + "'");
}

namespace {

class EntrySampler {
   public:
    EntrySampler(EntryLaw law, std::uint64_t seed) : law_(law), rng_(seed) {}
    double operator()() {
        if (law_ == EntryLaw::gaussian) return normal_(rng_);
        return (rng_() >> 63) ? 1.0 : -1.0;
    }

   private:
    EntryLaw law_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

void check(const MatrixEnsembleConfig& cfg) {
    if (cfg.n == 0) throw ParameterError("matrix size must be positive");
    if (cfg.n > kMaxMatrixSize) throw GuardError("matrix size above " + std::to_string(kMaxMatrixSize));
    if (cfg.rows > kMaxMatrixSize) throw GuardError("matrix rows above " + std::to_string(kMaxMatrixSize));
}

}  // namespace

std::vector<double> sample_matrix(const MatrixEnsembleConfig& cfg) {
    check(cfg);
    const std::size_t n = cfg.n;
    EntrySampler draw(cfg.law, cfg.seed);
    std::vector<double> a(n * n, 0.0);
    if (cfg.kind == EnsembleKind::wigner) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = draw();
        return a;
    }
    const std::size_t rows = cfg.rows == 0 ? n : cfg.rows;
    Eigen::MatrixXd x(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = draw();
    Eigen::MatrixXd w = x.transpose() * x;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return a;
}

std::vector<double> sample_eigenvalues(const MatrixEnsembleConfig& cfg) {
    const auto a = sample_matrix(cfg);
    const auto n = static_cast<Eigen::Index>(cfg.n);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigenvalue solver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

Polynomial<BigFloat> char_poly(const MatrixEnsembleConfig& cfg) {
    std::vector<BigFloat> roots;
    for (double v : sample_eigenvalues(cfg)) roots.emplace_back(v);
    return from_roots(std::span<const BigFloat>(roots));
}

}  // namespace

Polynomial<BigFloat> wigner_char_poly(const MatrixEnsembleConfig& cfg) {
    if (cfg.kind != EnsembleKind::wigner) throw ParameterError("wigner_char_poly needs a Wigner configuration");
    return char_poly(cfg);
}

Polynomial<BigFloat> wishart_char_poly(const MatrixEnsembleConfig& cfg) {
    if (cfg.kind != EnsembleKind::wishart) throw ParameterError("wishart_char_poly needs a Wishart configuration");
    return char_poly(cfg);
}

}  // namespace ffp
