#pragma once

// Hermite and Laguerre polynomials, even entire functions given by their even
// Taylor coefficients
//
//     f(z) = sum_k gamma_{2k} z^{2k} / (2k)! = sum_k eta_k z^{2k} / k!,
//
// their Jensen polynomials, and the scaling sequences used by the universality
// experiments.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffp/calculus.hpp"
#include "ffp/polynomial.hpp"

namespace ffp {

// ---------------------------------------------------------------------------
// orthogonal polynomials

/// Probabilists' Hermite He_d.
template <Scalar T>
Polynomial<T> hermite(std::size_t d) {
    std::vector<T> c(d + 1, from_int<T>(0));
    for (std::size_t k = 0; 2 * k <= d; ++k) {
        T v = factorial<T>(d) / (factorial<T>(k) * factorial<T>(d - 2 * k) * pow_int(from_int<T>(2), k));
        c[d - 2 * k] = k % 2 == 0 ? v : T(-v);
    }
    return Polynomial<T>::from_monomial(c);
}

/// Generalized Laguerre L_d^{(alpha)} with its standard leading coefficient (-1)^d/d!.
template <Scalar T>
Polynomial<T> laguerre(std::size_t d, const T& alpha) {
    if (!(alpha > -1)) throw ParameterError("laguerre requires alpha > -1");
    const T top = from_int<T>(static_cast<long long>(d)) + alpha;
    std::vector<T> c(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        T v = falling(top, d - k) / (factorial<T>(k) * factorial<T>(d - k));
        c[k] = k % 2 == 0 ? v : T(-v);
    }
    return Polynomial<T>::from_monomial(c);
}

/// d! (-1)^d L_d^{(alpha)}, the monic Laguerre target.
template <Scalar T>
Polynomial<T> monic_laguerre(std::size_t d, const T& alpha) {
    return laguerre(d, alpha) * T(factorial<T>(d) * from_int<T>(d % 2 == 0 ? 1 : -1));
}

/// The Hermite moment display: a double sum over pair partitions sigma and
/// coarsenings pi of sigma of mu(pi, 1_j) (d)_pi. Zero for odd j.
Rational hermite_moment_display(std::size_t d, std::size_t j);

// ---------------------------------------------------------------------------
// even entire functions

/// Points sampled for a Poisson-process random function, with the truncation
/// that was applied.
struct PoissonSample {
    double beta = 0.5;
    std::uint64_t seed = 0;
    double requested_eps = 1e-8;
    double eps = 1e-8;  // effective lower cut-off after the point cap
    std::size_t max_points = 1000000;
    std::size_t count = 0;
    double discarded_mass = 0;  // expected sum of discarded points, beta eps^{1-beta}/(1-beta)
    std::vector<BigFloat> points;
};

class EvenEntireFunction {
   public:
    /// gamma_{2k}/gamma_{2(k-1)} for k beyond an explicit prefix.
    using RatioRule = std::function<Rational(std::size_t k)>;

    EvenEntireFunction(std::string kind, std::map<std::string, std::string> params, std::vector<Rational> prefix,
                       RatioRule tail);
    explicit EvenEntireFunction(std::shared_ptr<const PoissonSample> sample);

    const std::string& kind() const { return kind_; }
    const std::map<std::string, std::string>& params() const { return params_; }
    bool exact() const { return sample_ == nullptr; }
    const PoissonSample* poisson_sample() const { return sample_.get(); }

    /// Root-density exponent alpha in (0, 2) and slowly varying factor, informational.
    std::optional<double> density_alpha;
    std::string density_note;

    Rational gamma_exact(std::size_t k) const;
    BigFloat gamma_float(std::size_t k) const;

    /// gamma_{2k}. Rational mode requires an exactly defined function.
    template <Scalar T>
    T gamma(std::size_t k) const {
        if constexpr (is_exact_v<T>) {
            return gamma_exact(k);
        } else {
            return gamma_float(k);
        }
    }

    /// eta_k = gamma_{2k} k! / (2k)!.
    template <Scalar T>
    T eta(std::size_t k) const {
        return gamma<T>(k) * factorial<T>(k) / factorial<T>(2 * k);
    }

    /// gamma_{2k} for k < count as strings.
    std::vector<std::string> gamma_prefix_strings(std::size_t count) const;

   private:
    struct Cache;
    std::string kind_;
    std::map<std::string, std::string> params_;
    std::shared_ptr<const PoissonSample> sample_;
    std::shared_ptr<Cache> cache_;
};

/// cos z: gamma_{2k} = (-1)^k.
EvenEntireFunction cosine_spec();

/// Bessel-type series sum (-1)^k z^{2k} / (4^k k! Gamma(nu+k+1)), stored with the
/// constant Gamma(nu+1) dropped: gamma_{2k} = (-1)^k (2k)! / (4^k k! (nu+1)^{(k)}).
EvenEntireFunction bessel_spec(const Rational& nu);

/// A finite gamma prefix continued by gamma_{2k} = ratio * gamma_{2(k-1)}.
EvenEntireFunction custom_spec(std::vector<Rational> prefix, const Rational& tail_ratio);

/// f(z) = prod (1 - y_k z^2) over the points y_k of a Poisson process with
/// intensity beta x^{-1-beta} dx on (eps, infinity).
EvenEntireFunction poisson_random_spec(double beta, std::uint64_t seed, double truncation_eps = 1e-8,
                                       std::size_t max_points = 1000000);

// ---------------------------------------------------------------------------
// Jensen polynomials

/// C_{d,n}(z) = sum_k binom(d,k) gamma_{k+n} z^k for a full coefficient sequence.
template <Scalar T>
Polynomial<T> classical_jensen(const std::function<T(std::size_t)>& gamma_full, std::size_t d, std::size_t n) {
    std::vector<T> c(d + 1);
    for (std::size_t k = 0; k <= d; ++k) c[k] = binomial<T>(d, k) * gamma_full(k + n);
    return Polynomial<T>::from_monomial(c);
}

/// Classical Jensen polynomial of an even function (odd coefficients vanish).
template <Scalar T>
Polynomial<T> classical_jensen(const EvenEntireFunction& f, std::size_t d, std::size_t n) {
    return classical_jensen<T>(
        [&](std::size_t m) { return m % 2 == 0 ? f.gamma<T>(m / 2) : from_int<T>(0); }, d, n);
}

/// J_{d,n}(z) = sum_k binom(d,k) eta_{k+n} z^k.
template <Scalar T>
Polynomial<T> even_jensen(const EvenEntireFunction& f, std::size_t d, std::size_t n) {
    std::vector<T> c(d + 1);
    for (std::size_t k = 0; k <= d; ++k) c[k] = binomial<T>(d, k) * f.eta<T>(k + n);
    return Polynomial<T>::from_monomial(c);
}

template <Scalar T>
struct JensenDerivativeRoutes {
    Polynomial<T> via_operator;  // d!/(n+d)! M^n J_{n+d,0}
    Polynomial<T> via_series;    // sum binom(d,k) gamma_{2(k+n)} k!/(2k)! z^k
    bool agree = false;
};

/// W_{d,n}, the unshifted even Jensen polynomial of f^{(2n)}, by both routes.
/// Rational mode raises InvariantViolation if they differ.
template <Scalar T>
JensenDerivativeRoutes<T> even_jensen_of_derivative(const EvenEntireFunction& f, std::size_t d, std::size_t n) {
    if (n + d > 4096) throw GuardError("even_jensen_of_derivative: d + n too large");
    JensenDerivativeRoutes<T> out;
    Polynomial<T> top = even_jensen<T>(f, n + d, 0);
    out.via_operator = apply_M(top, n) * T(factorial<T>(d) / factorial<T>(n + d));
    std::vector<T> c(d + 1);
    for (std::size_t k = 0; k <= d; ++k)
        c[k] = binomial<T>(d, k) * f.gamma<T>(k + n) * factorial<T>(k) / factorial<T>(2 * k);
    out.via_series = Polynomial<T>::from_monomial(c);
    if constexpr (is_exact_v<T>) {
        out.agree = out.via_operator == out.via_series;
        if (!out.agree) throw InvariantViolation("the two W_{d,n} routes disagree");
    } else {
        T scale = from_int<T>(1);
        for (const auto& v : out.via_series.signed_coeffs()) scale = std::max<T>(scale, abs_value(v));
        const T tol = boost::multiprecision::pow(BigFloat(2), -static_cast<int>(current_precision_bits() / 2));
        out.agree = coeff_linf_distance(out.via_operator, out.via_series) <= tol * scale;
    }
    return out;
}

// ---------------------------------------------------------------------------
// scaling sequences

/// a_n = -gamma_{2n} / gamma_{2(n+1)}.
template <Scalar T>
T scaling_an(const EvenEntireFunction& f, std::size_t n) {
    T next = f.gamma<T>(n + 1);
    if (is_zero(next)) throw DegenerateInput("gamma_{2(n+1)} vanishes");
    return -f.gamma<T>(n) / next;
}

/// (b_n, c_n) for the Hermite universality centering and normalization.
template <Scalar T>
std::pair<T, T> centering_bn_cn(const EvenEntireFunction& f, std::size_t n, std::size_t d) {
    const std::size_t N = n + d;
    if (N < 2) throw ParameterError("centering needs n + d >= 2");
    const T g0 = f.gamma<T>(N);
    if (is_zero(g0)) throw DegenerateInput("gamma_{2(n+d)} vanishes");
    const T r1 = f.gamma<T>(N - 1) / g0;
    const T r2 = f.gamma<T>(N - 2) / g0;
    const T two_n = from_int<T>(static_cast<long long>(2 * N));
    const T b = from_int<T>(-2) * (two_n - 1) * r1;
    const T c = from_int<T>(4) * (two_n - 1) * (two_n - 1) * (r1 * r1 - (two_n - 3) / (two_n - 1) * r2);
    return {b, c};
}

/// kappa_j^m(J_{m,0}) from the specialized Jensen-cumulant display.
template <Scalar T>
T jensen_cumulants(const EvenEntireFunction& f, std::size_t m, std::size_t j) {
    detail::check_single(j);
    if (j > m) throw ParameterError("jensen_cumulants needs j <= m");
    const T mm = from_int<T>(static_cast<long long>(m));
    const T g = f.gamma<T>(m);
    T s = from_int<T>(0);
    for (const auto& t : partition_types(j)) {
        const std::size_t len = t.sizes.size();
        T term = from_integer<T>(t.count) * from_int<T>(len % 2 == 0 ? 1 : -1) * factorial<T>(len - 1);
        for (auto b : t.sizes) term *= falling(T(2 * mm), 2 * b) / falling(mm, b) * f.gamma<T>(m - b);
        s += term / pow_int(g, len);
    }
    return pow_int(mm, j - 1) * s / factorial<T>(j - 1);
}

// ---------------------------------------------------------------------------
// rescaled derivative series

template <Scalar T>
struct DerivativeSeries {
    std::size_t n = 0;
    T a_n;
    std::vector<T> b;  // b_{k,n}, k = 0..K
    double radius = 0;
    T tail_bound;      // bound on sum_{k>K} |b_{k,n}| radius^{2k}
    T probed_ratio;    // largest successive |b_{k+1} r^2 / b_k| over the probe window
};

/// Coefficients of z -> f^{(2n)}(sqrt(a_n) z) / gamma_{2n} as a series in z^2,
/// b_{k,n} = gamma_{2(k+n)} a_n^k / (gamma_{2n} (2k)!), truncated once a geometric
/// tail estimate on |z| <= radius drops below `target`. The estimate takes the
/// largest successive term ratio over a window of `probe` further terms.
template <Scalar T>
DerivativeSeries<T> derivative_series(const EvenEntireFunction& f, std::size_t n, double radius, const T& target,
                                      std::size_t max_terms = 4000, std::size_t probe = 16) {
    DerivativeSeries<T> out;
    out.n = n;
    out.radius = radius;
    out.a_n = scaling_an<T>(f, n);
    const T g = f.gamma<T>(n);
    const T r2 = pow_int(T(radius), 2);  // exact binary value of the double
    auto coeff = [&](std::size_t k) { return f.gamma<T>(k + n) * pow_int(out.a_n, k) / (g * factorial<T>(2 * k)); };
    std::vector<T> terms;  // b_k
    terms.push_back(coeff(0));
    for (std::size_t K = 0; K < max_terms; ++K) {
        while (terms.size() < K + 2 + probe) terms.push_back(coeff(terms.size()));
        T q = from_int<T>(0);
        for (std::size_t k = K + 1; k < K + 1 + probe; ++k) {
            if (is_zero(terms[k])) continue;
            T ratio = abs_value(T(terms[k + 1] / terms[k])) * r2;
            if (ratio > q) q = ratio;
        }
        if (q < 1) {
            T first = abs_value(terms[K + 1]) * pow_int(r2, K + 1);
            T bound = first / (1 - q);
            if (bound < target) {
                out.b.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(K + 1));
                out.tail_bound = bound;
                out.probed_ratio = q;
                return out;
            }
        }
    }
    throw ConvergenceError("derivative_series: tail bound not reached within the term cap");
}

}  // namespace ffp
