#include "ffp/lab.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ffp {

unsigned& lab_threads() {
    static unsigned threads = 1;
    return threads;
}

std::string describe(const MomentProfile& p) {
    std::string s;
    switch (p.first) {
        case MomentProfile::First::none: s += "m_1 unspecified"; break;
        case MomentProfile::First::to_a: s += "m_1 -> " + format_scalar(p.a); break;
        case MomentProfile::First::o_inv_sqrt: s += "m_1 = o(m^{-1/2})"; break;
        case MomentProfile::First::over_m_to_a: s += "m_1/m -> " + format_scalar(p.a); break;
    }
    switch (p.second) {
        case MomentProfile::Second::none: break;
        case MomentProfile::Second::o_m: s += ", m_2 = o(m)"; break;
        case MomentProfile::Second::to_one: s += ", m_2 -> 1"; break;
        case MomentProfile::Second::o_m_cubed: s += ", m_2 = o(m^3)"; break;
        case MomentProfile::Second::theta_m: s += ", m_2 ~ m"; break;
    }
    if (p.nonnegative_roots) s += ", roots >= 0";
    if (!p.higher.empty()) s += ", higher: " + p.higher;
    return s;
}

namespace detail {

// A finite run cannot decide an asymptotic class; the checks below only flag
// runs whose observed trend contradicts the declaration between the first and
// last rows.
void check_profile(ExperimentReport& report, const MomentProfile& profile) {
    if (report.rows.size() < 2) return;
    std::size_t d = report.config.contains("d") ? report.config["d"].get<std::size_t>() : 0;
    const auto& first = report.rows.front();
    const auto& last = report.rows.back();
    if (!first.find("m1") || !first.find("m2")) return;
    const double m_first = static_cast<double>(first.n + d);
    const double m_last = static_cast<double>(last.n + d);
    const double a = to_double(profile.a);
    auto flag = [&](const std::string& what) { report.notes.push_back("profile mismatch: " + what); };

    switch (profile.first) {
        case MomentProfile::First::to_a:
            if (std::abs(last.value("m1") - a) > std::abs(first.value("m1") - a) + 1e-12 &&
                std::abs(last.value("m1") - a) > 1e-12)
                flag("m_1 does not approach " + format_scalar(profile.a));
            break;
        case MomentProfile::First::o_inv_sqrt:
            if (std::abs(last.value("m1")) * std::sqrt(m_last) > std::abs(first.value("m1")) * std::sqrt(m_first) + 1e-12)
                flag("m_1 sqrt(m) is not shrinking");
            break;
        case MomentProfile::First::over_m_to_a:
            if (std::abs(last.value("m1") / m_last - a) > std::abs(first.value("m1") / m_first - a) + 1e-12 &&
                std::abs(last.value("m1") / m_last - a) > 1e-12)
                flag("m_1/m does not approach " + format_scalar(profile.a));
            break;
        case MomentProfile::First::none: break;
    }
    switch (profile.second) {
        case MomentProfile::Second::o_m:
            if (last.value("m2") / m_last > first.value("m2") / m_first + 1e-12 && last.value("m2") / m_last > 1e-12)
                flag("m_2/m is not shrinking");
            break;
        case MomentProfile::Second::to_one:
            if (std::abs(last.value("m2") - 1) > std::abs(first.value("m2") - 1) + 1e-12 &&
                std::abs(last.value("m2") - 1) > 1e-12)
                flag("m_2 does not approach 1");
            break;
        case MomentProfile::Second::o_m_cubed:
            if (last.value("m2") / std::pow(m_last, 3) > first.value("m2") / std::pow(m_first, 3) + 1e-12)
                flag("m_2/m^3 is not shrinking");
            break;
        case MomentProfile::Second::theta_m: {
            double r0 = first.value("m2") / m_first, r1 = last.value("m2") / m_last;
            if (r1 < 0.5 * r0) flag("m_2/m is not bounded below");
            break;
        }
        case MomentProfile::Second::none: break;
    }
}

}  // namespace detail

namespace families {

PolynomialFamily<BigFloat> wigner(std::uint64_t seed, EntryLaw law) {
    PolynomialFamily<BigFloat> f;
    f.name = "wigner";
    f.config = {{"family", "wigner"}, {"seed", seed}, {"law", to_string(law)}};
    f.profile.first = MomentProfile::First::o_inv_sqrt;
    f.profile.second = MomentProfile::Second::to_one;
    f.profile.higher = "semicircle moments";
    f.generate = [seed, law](std::size_t m) {
        MatrixEnsembleConfig cfg{EnsembleKind::wigner, m, law, seed, 0};
        auto phi = wigner_char_poly(cfg);
        return dilate(phi, BigFloat(1 / boost::multiprecision::sqrt(BigFloat(static_cast<long>(m)))));
    };
    return f;
}

PolynomialFamily<BigFloat> wishart(std::uint64_t seed, EntryLaw law) {
    PolynomialFamily<BigFloat> f;
    f.name = "wishart";
    f.config = {{"family", "wishart"}, {"seed", seed}, {"law", to_string(law)}};
    f.profile.first = MomentProfile::First::over_m_to_a;
    f.profile.a = 1;
    f.profile.second = MomentProfile::Second::o_m_cubed;
    f.profile.nonnegative_roots = true;
    f.generate = [seed, law](std::size_t m) {
        MatrixEnsembleConfig cfg{EnsembleKind::wishart, m, law, seed, 0};
        return wishart_char_poly(cfg);
    };
    return f;
}

}  // namespace families

double median(std::vector<double> xs) {
    if (xs.empty()) throw DegenerateInput("median of an empty list");
    std::sort(xs.begin(), xs.end());
    const std::size_t h = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

// ---------------------------------------------------------------------------

namespace {

Polynomial<BigFloat> to_bigfloat(const Polynomial<Rational>& p) {
    std::vector<BigFloat> a;
    for (const auto& c : p.signed_coeffs()) a.emplace_back(c);
    return Polynomial<BigFloat>::from_signed(std::move(a));
}

}  // namespace

ExperimentReport hermite_universality_experiment(const EvenEntireFunction& f, std::size_t d,
                                                 const std::vector<std::size_t>& n_list, const Grid& grid) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<BigFloat>("hermite_universality_" + f.kind());
    report.config = {{"experiment", "hermite_universality"}, {"function", f.kind()}, {"params", f.params()},
                     {"d", d}, {"n_list", n_list}, {"grid", detail::grid_json(grid)},
                     {"normalization", "monic J_{d,n}(sqrt(c_n) z + b_n)"}};
    const auto target = hermite<BigFloat>(d);
    std::vector<std::string> degenerate;
    auto rows = detail::parallel_rows<std::optional<ReportRow>>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        Polynomial<BigFloat> shifted;
        BigFloat c;
        if (f.exact()) {
            auto [b, cr] = centering_bn_cn<Rational>(f, n, d);
            if (!(cr > 0)) return std::optional<ReportRow>{};
            shifted = to_bigfloat(shift_argument(even_jensen<Rational>(f, d, n), b));
            c = BigFloat(cr);
        } else {
            auto [b, cf] = centering_bn_cn<BigFloat>(f, n, d);
            if (!(cf > 0)) return std::optional<ReportRow>{};
            shifted = shift_argument(even_jensen<BigFloat>(f, d, n), b);
            c = cf;
        }
        const auto cand = monic(scale_argument(shifted, BigFloat(boost::multiprecision::sqrt(c))));
        ReportRow row;
        row.n = n;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        row.metrics.push_back(make_metric("c_n", c));
        return std::optional<ReportRow>{row};
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i]) {
            report.rows.push_back(*rows[i]);
        } else {
            report.notes.push_back("degenerate row n=" + std::to_string(n_list[i]) + ": c_n <= 0");
        }
    }
    report.sort_rows();
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

ExperimentReport cosine_universality_experiment(const EvenEntireFunction& f, const std::vector<std::size_t>& n_list,
                                                double radius, std::size_t grid_points, const BigFloat& tail_target) {
    auto t0 = std::chrono::steady_clock::now();
    if (grid_points < 2) throw ParameterError("cosine_universality_experiment needs at least two grid points");
    auto report = detail::start_report<BigFloat>("cosine_universality_" + f.kind());
    report.config = {{"experiment", "cosine_universality"}, {"function", f.kind()}, {"params", f.params()},
                     {"n_list", n_list}, {"radius", radius}, {"grid_points", grid_points},
                     {"tail_target", format_scalar(tail_target)}};
    struct Out {
        ReportRow row;
        nlohmann::ordered_json cert;
    };
    auto outs = detail::parallel_rows<Out>(n_list.size(), [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const auto series = derivative_series<BigFloat>(f, n, radius, tail_target);
        const BigFloat R(radius);
        const BigFloat step = 2 * R / BigFloat(static_cast<long>(grid_points - 1));
        BigFloat worst = 0;
        for (std::size_t g = 0; g < grid_points; ++g) {
            const BigFloat z = -R + step * BigFloat(static_cast<long>(g));
            const BigFloat z2 = z * z;
            BigFloat v = 0;
            for (std::size_t k = series.b.size(); k-- > 0;) v = v * z2 + series.b[k];
            BigFloat e = abs_value(BigFloat(v - boost::multiprecision::cos(z)));
            if (e > worst) worst = e;
        }
        Out o;
        o.row.n = n;
        o.row.candidate = format_all(series.b);  // b_{k,n}, a series in z^2
        o.row.metrics.push_back(make_metric("sup_error", worst));
        o.row.metrics.push_back(make_metric("tail_bound", series.tail_bound));
        o.row.metrics.push_back(make_metric("b1", series.b.size() > 1 ? series.b[1] : BigFloat(0)));
        o.cert = {{"n", n},
                  {"terms", series.b.size()},
                  {"radius", radius},
                  {"a_n", format_scalar(series.a_n)},
                  {"tail_bound", format_scalar(series.tail_bound)},
                  {"probed_ratio", format_scalar(series.probed_ratio)}};
        return o;
    });
    for (auto& o : outs) {
        report.rows.push_back(std::move(o.row));
        report.certificates.push_back(std::move(o.cert));
    }
    report.sort_rows();
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

ExperimentReport wigner_experiment(std::size_t d, std::size_t n, const std::vector<std::uint64_t>& seeds, EntryLaw law,
                                   const Grid& grid) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<BigFloat>("wigner");
    report.config = {{"experiment", "wigner"}, {"d", d}, {"n", n}, {"matrix_size", n + d}, {"law", to_string(law)},
                     {"seeds", seeds}, {"grid", detail::grid_json(grid)}};
    report.seeds = seeds;
    const auto target = hermite<BigFloat>(d);
    const std::size_t m = n + d;
    report.rows = detail::parallel_rows<ReportRow>(seeds.size(), [&](std::size_t i) {
        const auto P = families::wigner(seeds[i], law).generate(m);
        const auto cand = dilate_by_sqrt(monic(derivative(P, n)), BigFloat(static_cast<long>(m)));
        ReportRow row;
        row.n = n;
        row.seed = seeds[i];
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        // The corollary's hypotheses, checked on the sample: kappa_1 -> 0 and kappa_2 -> 1.
        const auto k = cumulants_from_coeffs(P, 2);
        row.metrics.push_back(make_metric("kappa1", k[1]));
        row.metrics.push_back(make_metric("kappa2", k[2]));
        return row;
    });
    report.sort_rows();
    const double med = median(report.column("coeff_linf_error"));
    report.certificates.push_back({{"median_coeff_linf_error", med}, {"seeds", seeds.size()}});
    report.notes.push_back("median coeff_linf_error over " + std::to_string(seeds.size()) + " seeds: " + std::to_string(med));
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

ExperimentReport wishart_experiment(std::size_t d, std::size_t n, const std::vector<std::uint64_t>& seeds, EntryLaw law,
                                    const Grid& grid) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<BigFloat>("wishart");
    report.config = {{"experiment", "wishart"}, {"d", d}, {"n", n}, {"matrix_size", n + d}, {"law", to_string(law)},
                     {"seeds", seeds}, {"grid", detail::grid_json(grid)}};
    report.seeds = seeds;
    const auto target = monic_laguerre(d, BigFloat(-0.5));
    report.rows = detail::parallel_rows<ReportRow>(seeds.size(), [&](std::size_t i) {
        const auto P = families::wishart(seeds[i], law).generate(n + d);
        const auto cand = monic(apply_M(P, n));
        ReportRow row;
        row.n = n;
        row.seed = seeds[i];
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        detail::add_errors(row, cand, target, grid);
        detail::add_profile_metrics(row, P);
        return row;
    });
    report.sort_rows();
    const double med = median(report.column("coeff_linf_error"));
    report.certificates.push_back({{"median_coeff_linf_error", med}, {"seeds", seeds.size()}});
    report.notes.push_back("median coeff_linf_error over " + std::to_string(seeds.size()) + " seeds: " + std::to_string(med));
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------

RootList<BigFloat> read_root_file(const std::string& path, std::size_t expected_count) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open root file " + path);
    RootList<BigFloat> out;
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto end = line.find_last_not_of(" \t\r");
        out.roots.push_back(parse_bigfloat(line.substr(start, end - start + 1)));
    }
    if (out.roots.size() != expected_count)
        throw ParameterError("root file " + path + " has " + std::to_string(out.roots.size()) + " entries, expected " +
                             std::to_string(expected_count));
    return out;
}

RootList<BigFloat> normalize_p130_roots(const RootList<BigFloat>& roots) {
    const BigFloat mean = roots.moment(1);
    RootList<BigFloat> centered;
    for (const auto& r : roots.roots) centered.roots.push_back(r - mean);
    const BigFloat var = centered.moment(2);
    if (!(var > 0)) throw DegenerateInput("roots have zero variance");
    const BigFloat scale = boost::multiprecision::sqrt(BigFloat(static_cast<long>(roots.size())) / var);
    for (auto& r : centered.roots) r *= scale;
    return centered;
}

ExperimentReport p130_experiment(const RootList<BigFloat>& roots, const std::vector<std::size_t>& orders,
                                 std::size_t curve_points) {
    auto t0 = std::chrono::steady_clock::now();
    auto report = detail::start_report<BigFloat>("p130");
    const std::size_t N = roots.size();
    report.config = {{"experiment", "p130"}, {"roots", N}, {"orders", orders}, {"curve_points", curve_points},
                     {"normalization", "mean 0, m_2 = number of roots; derivatives made monic"}};
    const auto normalized = normalize_p130_roots(roots);
    const auto P = from_roots(normalized);
    auto outs = detail::parallel_rows<std::pair<ReportRow, std::vector<Curve>>>(orders.size(), [&](std::size_t i) {
        const std::size_t k = orders[i];
        if (k >= N) throw ParameterError("derivative order must be below the degree");
        const auto cand = monic(derivative(P, k));
        const auto target = hermite<BigFloat>(N - k);
        ReportRow row;
        row.n = k;
        row.candidate = detail::coeff_strings(cand);
        row.target = detail::coeff_strings(target);
        row.metrics.push_back(make_metric("degree", BigFloat(static_cast<long>(N - k))));
        row.metrics.push_back(make_metric("sup_error_2", sup_distance(cand, target, BigFloat(-2), BigFloat(2), 512)));
        row.metrics.push_back(make_metric("sup_error_3", sup_distance(cand, target, BigFloat(-3), BigFloat(3), 512)));
        row.metrics.push_back(make_metric("coeff_linf_error", coeff_linf_distance(cand, target)));
        Curve c{"order" + std::to_string(k), {}};
        Curve t{"order" + std::to_string(k) + "_hermite" + std::to_string(N - k), {}};
        for (std::size_t g = 0; g < curve_points; ++g) {
            const double x = -3.0 + 6.0 * static_cast<double>(g) / static_cast<double>(curve_points - 1);
            c.points.emplace_back(x, to_double(cand(BigFloat(x))));
            t.points.emplace_back(x, to_double(target(BigFloat(x))));
        }
        return std::pair<ReportRow, std::vector<Curve>>{row, {c, t}};
    });
    for (auto& [row, curves] : outs) {
        report.rows.push_back(std::move(row));
        for (auto& c : curves) report.curves.push_back(std::move(c));
    }
    report.sort_rows();
    report.wall_clock_seconds = detail::seconds_since(t0);
    return report;
}

}  // namespace ffp
