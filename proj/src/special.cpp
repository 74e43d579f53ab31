#include "ffp/special.hpp"

#include <cmath>
#include <random>

namespace ffp {

struct EvenEntireFunction::Cache {
    std::mutex mutex;
    std::vector<Rational> exact;  // gamma_{2k}, grown on demand
    RatioRule tail;
    // Poisson kind: e_k at some working precision; gamma_{2k} = (-1)^k (2k)! e_k.
    std::vector<BigFloat> elementary;
    unsigned elementary_bits = 0;
};

EvenEntireFunction::EvenEntireFunction(std::string kind, std::map<std::string, std::string> params,
                                       std::vector<Rational> prefix, RatioRule tail)
    : kind_(std::move(kind)), params_(std::move(params)), cache_(std::make_shared<Cache>()) {
    if (prefix.empty()) throw ParameterError("an even entire function needs gamma_0");
    cache_->exact = std::move(prefix);
    cache_->tail = std::move(tail);
}

EvenEntireFunction::EvenEntireFunction(std::shared_ptr<const PoissonSample> sample)
    : kind_("poisson"), sample_(std::move(sample)), cache_(std::make_shared<Cache>()) {
    params_["beta"] = std::to_string(sample_->beta);
    params_["seed"] = std::to_string(sample_->seed);
    params_["truncation_eps"] = std::to_string(sample_->requested_eps);
    params_["max_points"] = std::to_string(sample_->max_points);
}

Rational EvenEntireFunction::gamma_exact(std::size_t k) const {
    if (sample_) throw ParameterError("a Poisson random function has no exact coefficients");
    std::lock_guard lock(cache_->mutex);
    auto& g = cache_->exact;
    while (g.size() <= k) {
        if (!cache_->tail) throw ParameterError("gamma index beyond the supplied prefix");
        g.push_back(g.back() * cache_->tail(g.size()));
    }
    return g[k];
}

BigFloat EvenEntireFunction::gamma_float(std::size_t k) const {
    if (!sample_) return BigFloat(gamma_exact(k));
    std::lock_guard lock(cache_->mutex);
    const unsigned bits = current_precision_bits();
    auto& e = cache_->elementary;
    if (cache_->elementary_bits != bits || e.size() <= k) {
        // Recompute e_0..e_K over all points when the precision changes or more
        // terms are needed; grow K geometrically.
        std::size_t K = std::max<std::size_t>(k + 1, 2 * e.size());
        if (cache_->elementary_bits == bits) K = std::max(K, e.size());
        e.assign(K + 1, BigFloat(0));
        e[0] = 1;
        std::size_t filled = 0;
        for (const auto& y : sample_->points) {
            BigFloat yy(y);
            filled = std::min(filled + 1, K);
            for (std::size_t i = filled; i >= 1; --i) e[i] += yy * e[i - 1];
        }
        cache_->elementary_bits = bits;
    }
    BigFloat v = e[k] * factorial<BigFloat>(2 * k);
    return k % 2 == 0 ? v : BigFloat(-v);
}

std::vector<std::string> EvenEntireFunction::gamma_prefix_strings(std::size_t count) const {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(exact() ? format_scalar(gamma_exact(k)) : format_scalar(gamma_float(k)));
    return out;
}

EvenEntireFunction cosine_spec() {
    EvenEntireFunction f("cosine", {}, {Rational(1)}, [](std::size_t) { return Rational(-1); });
    f.density_alpha = 1.0;
    f.density_note = "roots at odd multiples of pi/2, n_+(r) ~ r/pi";
    return f;
}

EvenEntireFunction bessel_spec(const Rational& nu) {
    if (nu < 0) throw ParameterError("bessel_spec requires nu >= 0");
    // gamma_{2k}/gamma_{2(k-1)} = -(2k)(2k-1) / (4 k (nu + k)) = -(2k-1) / (2 (nu + k))
    EvenEntireFunction f("bessel", {{"nu", format_scalar(nu)}}, {Rational(1)}, [nu](std::size_t k) {
        Rational kk(static_cast<long>(k));
        return Rational(-(2 * kk - 1) / (2 * (nu + kk)));
    });
    f.density_alpha = 1.0;
    f.density_note = "positive roots j_{nu,k} ~ pi (k + nu/2 - 1/4)";
    return f;
}

EvenEntireFunction custom_spec(std::vector<Rational> prefix, const Rational& tail_ratio) {
    EvenEntireFunction f("custom", {{"tail_ratio", format_scalar(tail_ratio)}}, std::move(prefix),
                         [tail_ratio](std::size_t) { return tail_ratio; });
    return f;
}

EvenEntireFunction poisson_random_spec(double beta, std::uint64_t seed, double truncation_eps, std::size_t max_points) {
    if (!(beta > 0 && beta < 1)) throw ParameterError("poisson_random_spec requires 0 < beta < 1");
    if (!(truncation_eps > 0)) throw ParameterError("poisson_random_spec requires a positive truncation");
    if (max_points == 0) throw ParameterError("poisson_random_spec requires max_points > 0");
    auto s = std::make_shared<PoissonSample>();
    s->beta = beta;
    s->seed = seed;
    s->requested_eps = truncation_eps;
    s->max_points = max_points;
    // The restricted process on (eps, inf) has eps^{-beta} expected points. If that
    // exceeds the cap, the cut-off is raised until it does not.
    double eps = truncation_eps;
    if (std::pow(eps, -beta) > static_cast<double>(max_points)) eps = std::pow(static_cast<double>(max_points), -1.0 / beta);
    s->eps = eps;
    s->discarded_mass = beta * std::pow(eps, 1.0 - beta) / (1.0 - beta);

    std::mt19937_64 rng(seed);
    std::poisson_distribution<std::size_t> count(std::pow(eps, -beta));
    s->count = std::min(count(rng), max_points);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const BigFloat e(eps);
    const BigFloat inv_beta = BigFloat(-1) / BigFloat(beta);
    s->points.reserve(s->count);
    for (std::size_t i = 0; i < s->count; ++i) {
        double u = unif(rng);
        while (u == 0.0) u = unif(rng);
        s->points.push_back(e * boost::multiprecision::pow(BigFloat(u), inv_beta));
    }
    EvenEntireFunction f(std::move(s));
    f.density_alpha = 2 * beta;
    f.density_note = "roots +-y_k^{-1/2}, Poisson intensity beta x^{-(1+beta)}";
    return f;
}

Rational hermite_moment_display(std::size_t d, std::size_t j) {
    if (d == 0) throw ParameterError("hermite_moment_display needs d >= 1");
    if (j % 2 == 1) return Rational(0);
    const Rational dd(static_cast<long>(d));
    Rational total = 0;
    for (const auto& sigma : enumerate_pair_partitions(j)) {
        auto sizes = sigma.block_sizes();
        for_each_partition(sizes.size(), [&](const SetPartition& rho) {
            auto pi = merged_sizes(rho, sizes);
            // mu(pi, 1_j) = (-1)^{|pi|-1} (|pi|-1)!
            Rational term = Rational(integer_factorial(pi.size() - 1));
            if ((pi.size() - 1) % 2 == 1) term = -term;
            for (auto b : pi) term *= falling(dd, b);
            total += term;
        });
    }
    Rational pref = Rational(1) / (dd * Rational(integer_factorial(j - 1)));
    if ((j / 2 + 1) % 2 == 1) pref = -pref;
    return pref * total;
}

}  // namespace ffp
