#pragma once

// Experiment drivers: each limit theorem instantiated as a convergence study
// over a list of n, producing an ExperimentReport.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ffp/calculus.hpp"
#include "ffp/matrices.hpp"
#include "ffp/polynomial.hpp"
#include "ffp/report.hpp"
#include "ffp/special.hpp"

namespace ffp {

// ---------------------------------------------------------------------------
// families

/// What a family claims about the moments of its members as m grows. The claims
/// are checked against the generated members and mismatches become report notes.
struct MomentProfile {
    enum class First { none, to_a, o_inv_sqrt, over_m_to_a };
    enum class Second { none, o_m, to_one, o_m_cubed, theta_m };
    First first = First::none;
    Rational a = 0;
    Second second = Second::none;
    bool nonnegative_roots = false;
    std::string higher;  // informational
};

std::string describe(const MomentProfile& profile);

template <Scalar T>
struct PolynomialFamily {
    std::string name;
    std::function<Polynomial<T>(std::size_t m)> generate;
    MomentProfile profile;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

namespace families {

/// (z - a)^m.
template <Scalar T>
PolynomialFamily<T> power(const Rational& a) {
    PolynomialFamily<T> f;
    f.name = "power";
    f.config = {{"family", "power"}, {"a", format_scalar(a)}};
    f.profile.first = MomentProfile::First::to_a;
    f.profile.a = a;
    f.profile.second = MomentProfile::Second::o_m;
    f.generate = [a](std::size_t m) {
        std::vector<T> roots(m, from_rational<T>(a));
        return from_roots(std::span<const T>(roots));
    };
    return f;
}

/// Roots a+1, a-1, a+1, ... (one extra root a when m is odd).
template <Scalar T>
PolynomialFamily<T> alternating(const Rational& a) {
    PolynomialFamily<T> f;
    f.name = "alternating";
    f.config = {{"family", "alternating"}, {"a", format_scalar(a)}};
    f.profile.first = MomentProfile::First::to_a;
    f.profile.a = a;
    f.profile.second = MomentProfile::Second::o_m;
    f.generate = [a](std::size_t m) {
        std::vector<T> roots;
        while (roots.size() + 2 <= m) {
            roots.push_back(from_rational<T>(a + 1));
            roots.push_back(from_rational<T>(a - 1));
        }
        if (roots.size() < m) roots.push_back(from_rational<T>(a));
        return from_roots(std::span<const T>(roots));
    };
    return f;
}

/// Roots +-1 in equal numbers (plus a root at 0 when m is odd).
template <Scalar T>
PolynomialFamily<T> plus_minus_one() {
    PolynomialFamily<T> f;
    f.name = "plus_minus_one";
    f.config = {{"family", "plus_minus_one"}};
    f.profile.first = MomentProfile::First::o_inv_sqrt;
    f.profile.second = MomentProfile::Second::to_one;
    f.profile.higher = "bounded";
    f.generate = [](std::size_t m) {
        // (z^2 - 1)^{m/2}, times z when m is odd
        const std::size_t h = m / 2;
        std::vector<T> a(m + 1, from_int<T>(0));
        for (std::size_t k = 0; k <= h; ++k) {
            T v = binomial<T>(h, k);
            a[2 * k] = k % 2 == 0 ? v : T(-v);
        }
        return Polynomial<T>::from_signed(std::move(a));
    };
    return f;
}

/// z^m - (m^2/4) z^{m-2}: mean 0, m_2 = m/2, outside the law of large numbers.
template <Scalar T>
PolynomialFamily<T> lln_counterexample() {
    PolynomialFamily<T> f;
    f.name = "lln_counterexample";
    f.config = {{"family", "lln_counterexample"}};
    f.profile.first = MomentProfile::First::to_a;
    f.profile.a = 0;
    f.profile.second = MomentProfile::Second::theta_m;
    f.generate = [](std::size_t m) {
        std::vector<T> a(m + 1, from_int<T>(0));
        a[0] = 1;
        if (m >= 2) a[2] = -from_int<T>(static_cast<long long>(m * m)) / 4;
        return Polynomial<T>::from_signed(std::move(a));
    };
    return f;
}

/// z^m - (m/2) z^{m-2}: mean 0, m_2 = 1, but |m|_{2+e} grows like m^{e/2}.
template <Scalar T>
PolynomialFamily<T> clt_counterexample() {
    PolynomialFamily<T> f;
    f.name = "clt_counterexample";
    f.config = {{"family", "clt_counterexample"}};
    f.profile.first = MomentProfile::First::o_inv_sqrt;
    f.profile.second = MomentProfile::Second::to_one;
    f.profile.higher = "|m|_{2+e} ~ m^{e/2}, not o(m^{e/2})";
    f.generate = [](std::size_t m) {
        std::vector<T> a(m + 1, from_int<T>(0));
        a[0] = 1;
        if (m >= 2) a[2] = -from_int<T>(static_cast<long long>(m)) / 2;
        return Polynomial<T>::from_signed(std::move(a));
    };
    return f;
}

/// (z - a m)^m: non-negative roots with m_1/m = a.
template <Scalar T>
PolynomialFamily<T> scaled_power(const Rational& a) {
    PolynomialFamily<T> f;
    f.name = "scaled_power";
    f.config = {{"family", "scaled_power"}, {"a", format_scalar(a)}};
    f.profile.first = MomentProfile::First::over_m_to_a;
    f.profile.a = a;
    f.profile.second = MomentProfile::Second::o_m_cubed;
    f.profile.nonnegative_roots = true;
    f.generate = [a](std::size_t m) {
        std::vector<T> roots(m, from_rational<T>(a * Rational(static_cast<long>(m))));
        return from_roots(std::span<const T>(roots));
    };
    return f;
}

/// Monic even Jensen polynomials J_{m,0} of f, normalized to be monic.
template <Scalar T>
PolynomialFamily<T> jensen(const EvenEntireFunction& fn, const Rational& a) {
    PolynomialFamily<T> f;
    f.name = "jensen_" + fn.kind();
    f.config = {{"family", "jensen"}, {"function", fn.kind()}, {"a", format_scalar(a)}};
    f.profile.first = MomentProfile::First::over_m_to_a;
    f.profile.a = a;
    f.profile.second = MomentProfile::Second::o_m_cubed;
    f.profile.nonnegative_roots = true;
    f.generate = [fn](std::size_t m) { return monic(even_jensen<T>(fn, m, 0)); };
    return f;
}

/// D_{1/sqrt(m)} of the characteristic polynomial of an m x m random matrix; the
/// seed of member m is seed (the matrix is sampled afresh for every m).
PolynomialFamily<BigFloat> wigner(std::uint64_t seed, EntryLaw law);
/// Characteristic polynomials of X^T X, X an m x m iid matrix.
PolynomialFamily<BigFloat> wishart(std::uint64_t seed, EntryLaw law);

}  // namespace families

// ---------------------------------------------------------------------------
// shared row machinery

struct Grid {
    double lo = -3;
    double hi = 3;
    std::size_t points = 512;
};

/// Worker threads used for independent rows (1 = serial).
unsigned& lab_threads();

namespace detail {

/// Runs f(i) for i in [0, count) on up to lab_threads() threads; results keep
/// index order. Each worker inherits the caller's BigFloat precision.
template <class R>
std::vector<R> parallel_rows(std::size_t count, const std::function<R(std::size_t)>& f) {
    std::vector<R> out(count);
    const unsigned threads = std::max(1u, std::min<unsigned>(lab_threads(), static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    const unsigned bits = current_precision_bits();
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                PrecisionScope scope(bits);
                for (std::size_t i = t; i < count; i += threads) out[i] = f(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

template <Scalar T>
std::vector<std::string> coeff_strings(const Polynomial<T>& p) {
    return format_all(p.signed_coeffs());
}

template <Scalar T>
ExperimentReport start_report(std::string id) {
    ExperimentReport r;
    r.id = std::move(id);
    r.mode = ScalarTraits<T>::mode;
    r.precision_bits = is_exact_v<T> ? 0u : current_precision_bits();
    return r;
}

template <Scalar T>
void add_errors(ReportRow& row, const Polynomial<T>& cand, const Polynomial<T>& target, const Grid& grid,
                const std::string& suffix = "") {
    row.metrics.push_back(make_metric("coeff_linf_error" + suffix, coeff_linf_distance(cand, target)));
    row.metrics.push_back(
        make_metric("sup_error" + suffix, sup_distance(cand, target, T(grid.lo), T(grid.hi), grid.points)));
}

inline nlohmann::ordered_json grid_json(const Grid& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}}; }

/// m_1 and m_2 of a member, appended as metrics.
template <Scalar T>
void add_profile_metrics(ReportRow& row, const Polynomial<T>& p) {
    auto m = moments_from_coeffs(p, 2);
    row.metrics.push_back(make_metric("m1", m[1]));
    row.metrics.push_back(make_metric("m2", m[2]));
}

void check_profile(ExperimentReport& report, const MomentProfile& profile);

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// finite free limit theorems

/// Law of large numbers: monic D^n P_{n+d} against (z - a)^d. An optional
/// alternate target is reported alongside (alt_* metrics).
template <Scalar T>
ExperimentReport lln_experiment(const PolynomialFamily<T>& fam, const Rational& a, std::size_t d,
                                const std::vector<std::size_t>& n_list, const Grid& grid = {},
                                const std::optional<Polynomial<T>>& alternate = std::nullopt) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<T>("lln_" + fam.name);
    report.config = {{"experiment", "lln"}, {"family", fam.config}, {"a", format_scalar(a)}, {"d", d},
                     {"n_list", n_list}, {"grid", detail::grid_json(grid)}};
    if (fam.profile.first != MomentProfile::First::to_a || fam.profile.a != a ||
        fam.profile.second != MomentProfile::Second::o_m)
        report.notes.push_back("precondition not declared: family profile is " + describe(fam.profile) +
                               ", the law of large numbers needs m_1 -> " + format_scalar(a) + " and m_2 = o(m)");
    std::vector<T> ta(d, from_rational<T>(a));
    const auto target = from_roots(std::span<const T>(ta));
    report.rows = detail::parallel_rows<ReportRow>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const auto P = fam.generate(n + d);
        const auto cand = monic(derivative(P, n));
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        if (alternate) detail::add_errors(row, cand, *alternate, grid, "_alt");
        detail::add_profile_metrics(row, P);
        return row;
    });
    report.sort_rows();
    detail::check_profile(report, fam.profile);
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

/// Central limit theorem: monic D^n D_{sqrt(n+d)} P_{n+d} against He_d. The
/// dilation commutes with differentiation up to a constant, so it is applied to
/// the degree-d result, which keeps rational mode exact for even results.
template <Scalar T>
ExperimentReport clt_experiment(const PolynomialFamily<T>& fam, std::size_t d, const std::vector<std::size_t>& n_list,
                                const Grid& grid = {}) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<T>("clt_" + fam.name);
    report.config = {{"experiment", "clt"}, {"family", fam.config}, {"d", d}, {"n_list", n_list},
                     {"grid", detail::grid_json(grid)}};
    if (fam.profile.first != MomentProfile::First::o_inv_sqrt || fam.profile.second != MomentProfile::Second::to_one)
        report.notes.push_back("precondition not declared: family profile is " + describe(fam.profile));
    const auto target = hermite<T>(d);
    report.rows = detail::parallel_rows<ReportRow>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const auto P = fam.generate(n + d);
        const auto cand = dilate_by_sqrt(monic(derivative(P, n)), from_int<T>(static_cast<long long>(n + d)));
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        detail::add_profile_metrics(row, P);
        return row;
    });
    report.sort_rows();
    detail::check_profile(report, fam.profile);
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

/// Poisson limit theorem: monic M_{alpha,t}^n D_{1/a} P_{n+d} against
/// d! (-1)^d L_d^{(alpha)}.
template <Scalar T>
ExperimentReport poisson_experiment(const PolynomialFamily<T>& fam, const Rational& a, std::size_t d,
                                    const std::vector<std::size_t>& n_list, const Rational& alpha = Rational(-1, 2),
                                    const Rational& t = Rational(4), const Grid& grid = {0, 6, 512}) {
    auto t0 = std::chrono::steady_clock::now();
    if (!(a > 0)) throw ParameterError("poisson_experiment needs a > 0");
    auto report = detail::start_report<T>("poisson_" + fam.name);
    report.config = {{"experiment", "poisson"}, {"family", fam.config}, {"a", format_scalar(a)}, {"d", d},
                     {"n_list", n_list}, {"alpha", format_scalar(alpha)}, {"t", format_scalar(t)},
                     {"grid", detail::grid_json(grid)}};
    const T al = from_rational<T>(alpha);
    const T tt = from_rational<T>(t);
    const auto target = monic_laguerre(d, al);
    report.rows = detail::parallel_rows<ReportRow>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const auto P = fam.generate(n + d);
        // For a real-rooted polynomial, non-negative roots <=> all signed coefficients >= 0.
        for (const auto& c : monic(P).signed_coeffs())
            if (c < 0) throw ParameterError("poisson_experiment: member of degree " + std::to_string(n + d) +
                                            " has a negative root");
        const auto Q = dilate(P, T(from_int<T>(1) / from_rational<T>(a)));
        const auto cand = monic(apply_M(Q, n, al, tt));
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        detail::add_profile_metrics(row, P);
        return row;
    });
    report.sort_rows();
    detail::check_profile(report, fam.profile);
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

/// kappa_j^{n+d}(P boxtimes q_{d,n}) against its first-order expansion
/// (kappa_1^P)^j (d+n)^j / (d+n)_j * d/(d+n); rows carry |difference| and n times it.
template <Scalar T>
ExperimentReport asymptotic_cumulant_diagnostic(const PolynomialFamily<T>& fam, std::size_t d, std::size_t j,
                                                const std::vector<std::size_t>& n_list) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<T>("cumulant_expansion_" + fam.name);
    report.config = {{"experiment", "cumulant_expansion"}, {"family", fam.config}, {"d", d}, {"j", j},
                     {"n_list", n_list}};
    report.rows = detail::parallel_rows<ReportRow>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const std::size_t N = n + d;
        const auto P = monic(fam.generate(N));
        const auto hat = boxtimes(P, q_dn<T>(d, n));
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(hat);
        T lhs = from_int<T>(0);
        if (j <= N) {
            if (hat.is_zero()) throw DegenerateInput("P boxtimes q vanished");
            lhs = cumulants_from_coeffs(hat, j)[j];
        }
        const T k1 = cumulants_from_coeffs(P, 1)[1];
        const T NN = from_int<T>(static_cast<long long>(N));
        const T main = pow_int(k1, j) * pow_int(NN, j) / falling(NN, j) * from_int<T>(static_cast<long long>(d)) / NN;
        const T err = abs_value(T(lhs - main));
        row.metrics.push_back(make_metric("kappa", lhs));
        row.metrics.push_back(make_metric("main_term", main));
        row.metrics.push_back(make_metric("abs_error", err));
        row.metrics.push_back(make_metric("n_times_error", T(err * from_int<T>(static_cast<long long>(n)))));
        return row;
    });
    report.sort_rows();
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// universality of Jensen polynomials

/// monic J_{d,n}(sqrt(c_n) z + b_n) against He_d (BigFloat; the centering is
/// done exactly when f is exact).
ExperimentReport hermite_universality_experiment(const EvenEntireFunction& f, std::size_t d,
                                                 const std::vector<std::size_t>& n_list, const Grid& grid = {});

/// W_{d,n}(a_n z) / gamma_{2n} against 4^d (d!)^2/(2d)! L_d^{(-1/2)}(z/4).
template <Scalar T>
ExperimentReport laguerre_universality_experiment(const EvenEntireFunction& f, std::size_t d,
                                                  const std::vector<std::size_t>& n_list, const Grid& grid = {0, 6, 512}) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<T>("laguerre_universality_" + f.kind());
    report.config = {{"experiment", "laguerre_universality"}, {"function", f.kind()}, {"params", f.params()},
                     {"d", d}, {"n_list", n_list}, {"grid", detail::grid_json(grid)}};
    const T quarter = from_int<T>(1) / from_int<T>(4);
    const auto target = scale_argument(laguerre(d, T(-from_int<T>(1) / from_int<T>(2))), quarter) *
                        T(pow_int(from_int<T>(4), d) * factorial<T>(d) * factorial<T>(d) / factorial<T>(2 * d));
    report.rows = detail::parallel_rows<ReportRow>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const auto W = even_jensen_of_derivative<T>(f, d, n);
        const auto cand = scale_argument(W.via_series, scaling_an<T>(f, n)) / f.gamma<T>(n);
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        row.metrics.push_back(Metric{"routes_agree", W.agree ? "1" : "0", W.agree ? 1.0 : 0.0});
        return row;
    });
    report.sort_rows();
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

/// sup over a grid on [-radius, radius] of |f^{(2n)}(sqrt(a_n) z)/gamma_{2n} - cos z|,
/// from a truncated series with a tail certificate (BigFloat).
ExperimentReport cosine_universality_experiment(const EvenEntireFunction& f, const std::vector<std::size_t>& n_list,
                                                double radius = 3, std::size_t grid_points = 512,
                                                const BigFloat& tail_target = BigFloat("1e-30"));

// ---------------------------------------------------------------------------
// random matrices

/// Wigner corollary: for each seed, monic D^n Phi_{n+d} against He_d. Rows per
/// seed; the median coefficient error is added as a note and in `certificates`.
ExperimentReport wigner_experiment(std::size_t d, std::size_t n, const std::vector<std::uint64_t>& seeds,
                                   EntryLaw law = EntryLaw::gaussian, const Grid& grid = {});

/// Wishart corollary: for each seed, monic M^n Psi_{n+d} against d!(-1)^d L_d^{(-1/2)}.
ExperimentReport wishart_experiment(std::size_t d, std::size_t n, const std::vector<std::uint64_t>& seeds,
                                    EntryLaw law = EntryLaw::gaussian, const Grid& grid = {0, 6, 512});

double median(std::vector<double> xs);

// ---------------------------------------------------------------------------
// the degree-130 example

/// Reads one decimal root per line; '#' comments and blank lines are skipped.
RootList<BigFloat> read_root_file(const std::string& path, std::size_t expected_count);

/// Shift to mean 0 and scale so that m_2 equals the number of roots.
RootList<BigFloat> normalize_p130_roots(const RootList<BigFloat>& roots);

/// Normalizes the roots, differentiates to each order, and compares the monic
/// result with He_{130-order}: sup-distance on [-2,2] and [-3,3], plus sampled
/// curves of candidate and target on [-3,3].
ExperimentReport p130_experiment(const RootList<BigFloat>& roots, const std::vector<std::size_t>& orders = {114, 122, 126},
                                 std::size_t curve_points = 241);

}  // namespace ffp
