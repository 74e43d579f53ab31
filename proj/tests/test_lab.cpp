#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ffp/lab.hpp"
#include "test_support.hpp"

using namespace ffp;
using namespace ffp::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("ffp_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

PQ candidate(const ReportRow& row) {
    std::vector<Q> a;
    for (const auto& s : row.candidate) a.push_back(parse_rational(s));
    return PQ::from_signed(a);
}

Polynomial<BigFloat> candidate_bf(const ReportRow& row) {
    std::vector<BigFloat> a;
    for (const auto& s : row.candidate) a.push_back(parse_bigfloat(s));
    return Polynomial<BigFloat>::from_signed(a);
}

}  // namespace

// ---------------------------------------------------------------------------
// law of large numbers

TEST(Lln, PowerFamilyIsExact) {
    const auto r = lln_experiment(families::power<Q>(Q(3, 2)), Q(3, 2), 3, {1, 5, 20, 60});
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.value("coeff_linf_error"), 0);
        EXPECT_EQ(row.value("sup_error"), 0);
    }
    EXPECT_TRUE(r.notes.empty());
}

TEST(Lln, AlternatingConvergesLikeOneOverN) {
    const auto r = lln_experiment(families::alternating<Q>(Q(1)), Q(1), 3, {25, 50, 100, 200});
    const auto err = r.column("coeff_linf_error");
    EXPECT_TRUE(strictly_decreasing(err));
    // halving per doubling of n
    for (std::size_t i = 1; i < err.size(); ++i) EXPECT_NEAR(err[i - 1] / err[i], 2.0, 0.2);
    EXPECT_TRUE(r.notes.empty());
}

TEST(Lln, CounterexampleHasAnotherLimit) {
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto r = lln_experiment(families::lln_counterexample<Q>(), Q(1), d, {10, 40, 200});
        EXPECT_FALSE(r.notes.empty());  // profile says m_2 ~ m
        for (const auto& row : r.rows) {
            // exact pipeline output: z^d - d(d-1)/4 * N/(N-1) z^{d-2}
            const long N = static_cast<long>(row.n + d);
            std::vector<Q> want(d + 1, Q(0));
            want[0] = 1;
            want[2] = -Q(static_cast<long>(d * (d - 1)), 4) * Q(N, N - 1);
            EXPECT_EQ(candidate(row), PQ::from_signed(want));
            EXPECT_GT(row.value("coeff_linf_error"), 0.1);
        }
    }
}

// ---------------------------------------------------------------------------
// central limit theorem

TEST(Clt, PlusMinusOneClosedForm) {
    const auto r = clt_experiment(families::plus_minus_one<Q>(), 2, {2, 4, 64});
    EXPECT_EQ(candidate(r.rows[0]), mono({Q(-4, 3), 0, 1}));
    EXPECT_EQ(candidate(r.rows[1]), mono({Q(-6, 5), 0, 1}));
    for (const auto& row : r.rows) {
        const long n = static_cast<long>(row.n);
        EXPECT_EQ(candidate(row), mono({Q(-(n + 2), n + 1), 0, 1}));
    }
    const auto odd = clt_experiment(families::plus_minus_one<Q>(), 1, {1, 2, 3, 8, 9});
    for (const auto& row : odd.rows) EXPECT_EQ(candidate(row), mono({0, 1}));
}

TEST(Clt, CounterexampleStaysAway) {
    const auto r = clt_experiment(families::clt_counterexample<Q>(), 4, {16, 64, 256});
    for (const auto& row : r.rows) EXPECT_GT(row.value("coeff_linf_error"), 0.1);
}

// ---------------------------------------------------------------------------
// Poisson limit theorem

TEST(Poisson, ScaledPowerClosedForm) {
    const auto r = poisson_experiment(families::scaled_power<Q>(Q(1)), Q(1), 1, {1, 2, 3, 64});
    const Q want[] = {Q(2, 3), Q(3, 5), Q(4, 7)};
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(candidate(r.rows[i]), mono({-want[i], 1}));
    EXPECT_EQ(candidate(r.rows[3]), mono({Q(-65, 129), 1}));
    const auto constant = poisson_experiment(families::scaled_power<Q>(Q(1)), Q(1), 0, {1, 4, 9});
    for (const auto& row : constant.rows) EXPECT_EQ(candidate(row), PQ::constant(1));
}

TEST(Poisson, CosineJensenIsExact) {
    for (std::size_t d = 0; d <= 3; ++d) {
        const auto r = poisson_experiment(families::jensen<Q>(cosine_spec(), Q(4)), Q(4), d, {1, 3, 10});
        for (const auto& row : r.rows) EXPECT_EQ(row.value("coeff_linf_error"), 0) << "d=" << d;
    }
}

TEST(Poisson, NegativeRootsRejected) {
    EXPECT_THROW(poisson_experiment(families::power<Q>(Q(-1)), Q(1), 1, {2}), ParameterError);
    EXPECT_THROW(poisson_experiment(families::scaled_power<Q>(Q(1)), Q(0), 1, {2}), ParameterError);
}

// ---------------------------------------------------------------------------
// universality

TEST(HermiteUniversality, CosineDegreeOneIsExact) {
    PrecisionScope scope(256);
    const auto r = hermite_universality_experiment(cosine_spec(), 1, {3, 10, 50});
    for (const auto& row : r.rows) EXPECT_LT(row.value("coeff_linf_error"), 1e-60);
}

TEST(HermiteUniversality, DegreeTwoIsExactByCentering) {
    // b_n and c_n are the mean and variance of the roots, which pins a quadratic.
    PrecisionScope scope(256);
    for (const auto& f : {cosine_spec(), bessel_spec(Q(0))}) {
        const auto r = hermite_universality_experiment(f, 2, {10, 40, 160});
        for (const auto& row : r.rows) EXPECT_LT(row.value("coeff_linf_error"), 1e-60) << f.kind();
    }
}

TEST(HermiteUniversality, CosineAndBesselHigherDegree) {
    PrecisionScope scope(256);
    for (std::size_t d : {3, 4})
        for (const auto& f : {cosine_spec(), bessel_spec(Q(0))}) {
            const auto r = hermite_universality_experiment(f, d, {10, 20, 40, 80, 160, 320});
            const auto err = r.column("coeff_linf_error");
            EXPECT_TRUE(strictly_decreasing(err)) << f.kind() << " d=" << d;
            // error ~ N^{-1/2}
            for (std::size_t i = 2; i < err.size(); ++i) EXPECT_NEAR(err[i] / err[i - 1], std::sqrt(0.5), 0.05);
        }
}

TEST(LaguerreUniversality, CosineExactBesselConverges) {
    for (std::size_t d = 0; d <= 4; ++d) {
        const auto r = laguerre_universality_experiment<Q>(cosine_spec(), d, {1, 2, 7, 20});
        for (const auto& row : r.rows) {
            EXPECT_EQ(row.value("coeff_linf_error"), 0);
            EXPECT_EQ(row.value("routes_agree"), 1);
        }
    }
    const auto b = laguerre_universality_experiment<Q>(bessel_spec(Q(0)), 2, {10, 20, 40, 80, 160});
    const auto err = b.column("coeff_linf_error");
    EXPECT_TRUE(strictly_decreasing(err));
    EXPECT_LT(err.back(), 0.05);
    const auto zero = laguerre_universality_experiment<Q>(bessel_spec(Q(0)), 0, {5, 50});
    for (const auto& row : zero.rows) EXPECT_EQ(candidate(row), PQ::constant(1));
}

TEST(CosineUniversality, CosineIsFixed) {
    PrecisionScope scope(256);
    const auto r = cosine_universality_experiment(cosine_spec(), {1, 10, 40}, 3, 128);
    for (const auto& row : r.rows) EXPECT_LT(row.value("sup_error"), 1e-29);
    EXPECT_EQ(r.certificates.size(), 3u);
}

TEST(CosineUniversality, BesselConverges) {
    PrecisionScope scope(256);
    for (const Q nu : {Q(0), Q(1, 2)}) {
        const auto r = cosine_universality_experiment(bessel_spec(nu), {25, 50, 100, 200}, 3, 512);
        const auto err = r.column("sup_error");
        EXPECT_TRUE(strictly_decreasing(err));
        EXPECT_LT(err.back(), 0.05);
        for (const auto& row : r.rows) EXPECT_LT(row.value("tail_bound"), 1e-30);
    }
}

// ---------------------------------------------------------------------------
// random matrices

TEST(Matrices, SmallCases) {
    PrecisionScope scope(256);
    MatrixEnsembleConfig w1{EnsembleKind::wigner, 1, EntryLaw::gaussian, 42, 0};
    const double g = sample_matrix(w1)[0];
    const auto p1 = wigner_char_poly(w1);
    EXPECT_EQ(p1.degree(), 1u);
    EXPECT_NEAR(to_double(p1.a(1)), g, 1e-14);

    MatrixEnsembleConfig w2{EnsembleKind::wigner, 2, EntryLaw::rademacher, 5, 0};
    const auto m = sample_matrix(w2);
    EXPECT_EQ(m[1], m[2]);
    for (double v : m) EXPECT_EQ(std::abs(v), 1.0);
    const auto p2 = wigner_char_poly(w2);
    EXPECT_NEAR(to_double(p2.a(1)), m[0] + m[3], 1e-12);
    EXPECT_NEAR(to_double(p2.a(2)), m[0] * m[3] - m[1] * m[2], 1e-12);

    MatrixEnsembleConfig s1{EnsembleKind::wishart, 1, EntryLaw::gaussian, 9, 0};
    MatrixEnsembleConfig x1{EnsembleKind::wigner, 1, EntryLaw::gaussian, 9, 0};  // same stream, same first draw
    const double x = sample_matrix(x1)[0];
    EXPECT_NEAR(to_double(wishart_char_poly(s1).a(1)), x * x, 1e-12);
    EXPECT_THROW(sample_matrix({EnsembleKind::wigner, 2001, EntryLaw::gaussian, 0, 0}), GuardError);
}

TEST(Matrices, WignerRunChecksHypotheses) {
    PrecisionScope scope(256);
    const auto r = wigner_experiment(2, 30, {1, 2, 3});
    ASSERT_EQ(r.rows.size(), 3u);
    for (const auto& row : r.rows) {
        EXPECT_LT(std::abs(row.value("kappa1")), 0.5);
        EXPECT_NEAR(row.value("kappa2"), 1.0, 0.5);
        EXPECT_LT(row.value("coeff_linf_error"), 0.5);
    }
    EXPECT_EQ(r.seeds.size(), 3u);
    // reproducible from the seed
    const auto again = wigner_experiment(2, 30, {2});
    EXPECT_EQ(again.rows[0].candidate, r.rows[1].candidate);
}

TEST(Matrices, WishartRun) {
    PrecisionScope scope(256);
    const auto r = wishart_experiment(2, 60, {1, 2, 3, 4, 5});
    EXPECT_LT(median(r.column("coeff_linf_error")), 0.5);
}

// ---------------------------------------------------------------------------
// degree-130 example

TEST(P130, RootFileAndNormalization) {
    PrecisionScope scope(256);
    const auto roots = read_root_file("data/p130_roots.txt", 130);
    EXPECT_THROW(read_root_file("data/p130_roots.txt", 129), ParameterError);
    const auto n1 = normalize_p130_roots(roots);
    EXPECT_LT(abs_value(n1.moment(1)), BigFloat("1e-70"));
    EXPECT_LT(abs_value(BigFloat(n1.moment(2) - 130)), BigFloat("1e-70"));
    const auto n2 = normalize_p130_roots(n1);
    for (std::size_t i = 0; i < n1.size(); ++i) EXPECT_LT(abs_value(BigFloat(n1.roots[i] - n2.roots[i])), BigFloat("1e-70"));
}

TEST(P130, LastDerivativeIsZ) {
    PrecisionScope scope(256);
    const auto r = p130_experiment(read_root_file("data/p130_roots.txt", 130), {129}, 11);
    const auto c = candidate_bf(r.rows[0]);
    EXPECT_EQ(c.degree(), 1u);
    EXPECT_LT(abs_value(c.a(1)), BigFloat("1e-60"));
}

TEST(P130, TrendAndCurves) {
    PrecisionScope scope(256);
    const auto r = p130_experiment(read_root_file("data/p130_roots.txt", 130));
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_LT(r.rows[2].value("sup_error_2"), r.rows[0].value("sup_error_2"));
    const auto dir = scratch("p130");
    const auto files = emit_report(r, dir);
    EXPECT_EQ(files.curves.size(), 6u);  // candidate and target per order
}

// ---------------------------------------------------------------------------
// cumulant expansion diagnostic

TEST(CumulantExpansion, Examples) {
    for (std::size_t d = 1; d <= 3; ++d) {
        const auto r = asymptotic_cumulant_diagnostic(families::power<Q>(Q(1)), d, 1, {2, 5, 9});
        for (const auto& row : r.rows) {
            EXPECT_EQ(parse_rational(row.find("kappa")->text), Q(static_cast<long>(d), static_cast<long>(d + row.n)));
            EXPECT_EQ(row.value("abs_error"), 0);
        }
    }
    const auto r2 = asymptotic_cumulant_diagnostic(families::power<Q>(Q(1)), 3, 2, {8, 16, 32, 64});
    EXPECT_TRUE(strictly_decreasing(r2.column("n_times_error")));
    const auto r0 = asymptotic_cumulant_diagnostic(families::power<Q>(Q(1)), 0, 3, {4, 8});
    for (const auto& row : r0.rows) EXPECT_EQ(row.value("kappa"), 0);
}

// ---------------------------------------------------------------------------
// reports

TEST(Report, EmptyRowsGiveHeaderOnlyCsv) {
    ExperimentReport r;
    r.id = "empty";
    const auto files = emit_report(r, scratch("empty"));
    EXPECT_EQ(slurp(files.csv), "experiment,n,seed,metric,value\n");
}

TEST(Report, RationalRunsAreByteIdentical) {
    auto run = [] { return lln_experiment(families::alternating<Q>(Q(1)), Q(1), 2, {4, 8}); };
    const auto a = emit_report(run(), scratch("det_a"));
    const auto b = emit_report(run(), scratch("det_b"));
    EXPECT_EQ(slurp(a.csv), slurp(b.csv));
    EXPECT_EQ(slurp(a.sidecar), slurp(b.sidecar));
}

TEST(Report, ThreadsDoNotChangeResults) {
    PrecisionScope scope(256);
    const auto serial = hermite_universality_experiment(bessel_spec(Q(0)), 2, {10, 20, 40});
    lab_threads() = 3;
    const auto parallel = hermite_universality_experiment(bessel_spec(Q(0)), 2, {10, 20, 40});
    lab_threads() = 1;
    EXPECT_EQ(report_to_json(serial).dump(), report_to_json(parallel).dump());
}
