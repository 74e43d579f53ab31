#pragma once

// Moments, finite free cumulants and the finite free convolutions.
//
// Each transform direction is its own partition-lattice sum; none is obtained by
// inverting another, so that round trips test something. The summands depend on
// a partition only through its block sizes, and every sum is evaluated over
// partition types weighted by the number of set partitions of that type.

#include <cstddef>
#include <vector>

#include "ffp/partitions.hpp"
#include "ffp/polynomial.hpp"

namespace ffp {

/// m_1..m_J of a degree-n polynomial (values[j-1] = m_j).
template <Scalar T>
struct MomentVector {
    std::size_t n = 0;
    std::vector<T> values;
    std::vector<T> abs_values;  // optional |m|_j, filled when built from roots

    std::size_t size() const { return values.size(); }
    const T& operator[](std::size_t j) const { return values.at(j - 1); }
};

/// kappa_1^n..kappa_J^n (values[j-1] = kappa_j).
template <Scalar T>
struct CumulantVector {
    std::size_t n = 0;
    std::vector<T> values;

    std::size_t size() const { return values.size(); }
    const T& operator[](std::size_t j) const { return values.at(j - 1); }
};

namespace detail {

inline void check_single(std::size_t j) {
    if (j > partition_guards().max_single)
        throw GuardError("partition sum of size " + std::to_string(j) + " exceeds the guard " +
                         std::to_string(partition_guards().max_single));
}

template <Scalar T>
T product_over(const std::vector<std::size_t>& sizes, const std::vector<T>& c) {
    T r = from_int<T>(1);
    for (auto s : sizes) r *= c.at(s);
    return r;
}

template <Scalar T>
T sign(std::size_t e) {
    return from_int<T>(e % 2 == 0 ? 1 : -1);
}

template <Scalar T>
T big(const Integer& v) {
    return from_integer<T>(v);
}

template <Scalar T>
T nat(std::size_t v) {
    return from_int<T>(static_cast<long long>(v));
}

/// 1-based copy with a zero in slot 0.
template <Scalar T>
std::vector<T> one_based(const std::vector<T>& v, std::size_t upto) {
    std::vector<T> out(upto + 1, from_int<T>(0));
    for (std::size_t i = 0; i < v.size() && i < upto; ++i) out[i + 1] = v[i];
    return out;
}

/// Signed coefficients of the monic normalization, padded with zeros to `upto`.
template <Scalar T>
std::vector<T> monic_coeffs(const Polynomial<T>& p, std::size_t upto) {
    auto q = monic(p);
    std::vector<T> a(upto + 1, from_int<T>(0));
    for (std::size_t i = 0; i <= upto; ++i) a[i] = q.a(i);
    return a;
}

/// sum_{rho in P(|sizes|)} g(merged block sizes) for the coarsenings of a
/// partition with the given block sizes, i.e. the sum over pi >= sigma.
template <Scalar T, class G>
T sum_over_coarsenings(const std::vector<std::size_t>& sizes, G g) {
    T total = from_int<T>(0);
    for_each_partition(sizes.size(), [&](const SetPartition& rho) { total += g(merged_sizes(rho, sizes)); });
    return total;
}

template <Scalar T>
T falling_product(const std::vector<std::size_t>& sizes, const T& n) {
    T r = from_int<T>(1);
    for (auto s : sizes) r *= falling(n, s);
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// coefficients <-> moments

template <Scalar T>
MomentVector<T> moments_from_coeffs(const Polynomial<T>& p, std::size_t J) {
    detail::check_single(J);
    if (p.is_zero() || p.degree() == 0) throw DegenerateInput("moments need a polynomial of positive degree");
    const std::size_t n = p.degree();
    const auto a = detail::monic_coeffs(p, J);
    MomentVector<T> out;
    out.n = n;
    for (std::size_t j = 1; j <= J; ++j) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(j)) {
            const std::size_t len = t.sizes.size();
            T term = detail::big<T>(t.count) * detail::sign<T>(len) * detail::big<T>(integer_factorial(len - 1));
            for (auto b : t.sizes) term *= detail::big<T>(integer_factorial(b)) * a[b];
            s += term;
        }
        out.values.push_back(detail::sign<T>(j) * s / (detail::nat<T>(n) * factorial<T>(j - 1)));
    }
    return out;
}

template <Scalar T>
Polynomial<T> coeffs_from_moments(const MomentVector<T>& m, std::size_t n) {
    detail::check_single(n);
    if (m.size() < n) throw ParameterError("coeffs_from_moments needs m_1..m_n");
    const auto mv = detail::one_based(m.values, n);
    std::vector<T> a{from_int<T>(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(k))
            s += detail::big<T>(t.count) * pow_int(detail::nat<T>(n), t.sizes.size()) * detail::big<T>(t.mobius) *
                 detail::product_over(t.sizes, mv);
        a.push_back(s / factorial<T>(k));
    }
    return Polynomial<T>::from_signed(std::move(a));
}

// ---------------------------------------------------------------------------
// coefficients <-> cumulants

template <Scalar T>
CumulantVector<T> cumulants_from_coeffs(const Polynomial<T>& p, std::size_t J) {
    detail::check_single(J);
    if (p.is_zero() || p.degree() == 0) throw DegenerateInput("cumulants need a polynomial of positive degree");
    const std::size_t n = p.degree();
    if (J > n) throw ParameterError("finite free cumulants of order above the degree are undefined");
    const auto a = detail::monic_coeffs(p, J);
    const T nn = detail::nat<T>(n);
    CumulantVector<T> out;
    out.n = n;
    for (std::size_t j = 1; j <= J; ++j) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(j)) {
            const std::size_t len = t.sizes.size();
            T term = detail::big<T>(t.count) * detail::sign<T>(len) * detail::big<T>(integer_factorial(len - 1));
            for (auto b : t.sizes) term *= detail::big<T>(integer_factorial(b)) * a[b] / falling(nn, b);
            s += term;
        }
        out.values.push_back(pow_int(T(-nn), j) * s / (nn * factorial<T>(j - 1)));
    }
    return out;
}

template <Scalar T>
Polynomial<T> coeffs_from_cumulants(const CumulantVector<T>& k, std::size_t n) {
    detail::check_single(n);
    if (k.size() < n) throw ParameterError("coeffs_from_cumulants needs kappa_1..kappa_n");
    const auto kv = detail::one_based(k.values, n);
    const T nn = detail::nat<T>(n);
    std::vector<T> a{from_int<T>(1)};
    for (std::size_t r = 1; r <= n; ++r) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(r))
            s += detail::big<T>(t.count) * pow_int(nn, t.sizes.size()) * detail::big<T>(t.mobius) *
                 detail::product_over(t.sizes, kv);
        a.push_back(falling(nn, r) * s / (pow_int(nn, r) * factorial<T>(r)));
    }
    return Polynomial<T>::from_signed(std::move(a));
}

// ---------------------------------------------------------------------------
// moments <-> cumulants

template <Scalar T>
CumulantVector<T> cumulants_from_moments(const MomentVector<T>& m, std::size_t n, std::size_t J) {
    detail::check_single(J);
    if (J > n) throw ParameterError("finite free cumulants of order above the degree are undefined");
    if (m.size() < J) throw ParameterError("cumulants_from_moments needs m_1..m_J");
    const auto mv = detail::one_based(m.values, J);
    const T nn = detail::nat<T>(n);
    CumulantVector<T> out;
    out.n = n;
    for (std::size_t j = 1; j <= J; ++j) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(j)) {
            T inner = detail::sum_over_coarsenings<T>(t.sizes, [&](const std::vector<std::size_t>& pi) {
                return detail::sign<T>(pi.size() - 1) * factorial<T>(pi.size() - 1) / detail::falling_product(pi, nn);
            });
            s += detail::big<T>(t.count) * pow_int(nn, t.sizes.size()) * detail::big<T>(t.mobius) *
                 detail::product_over(t.sizes, mv) * inner;
        }
        out.values.push_back(pow_int(T(-nn), j - 1) * s / factorial<T>(j - 1));
    }
    return out;
}

template <Scalar T>
MomentVector<T> moments_from_cumulants(const CumulantVector<T>& k, std::size_t n, std::size_t J) {
    detail::check_single(J);
    if (J > n) throw ParameterError("finite free cumulants of order above the degree are undefined");
    if (k.size() < J) throw ParameterError("moments_from_cumulants needs kappa_1..kappa_J");
    const auto kv = detail::one_based(k.values, J);
    const T nn = detail::nat<T>(n);
    MomentVector<T> out;
    out.n = n;
    for (std::size_t j = 1; j <= J; ++j) {
        T s = from_int<T>(0);
        for (const auto& t : partition_types(j)) {
            T inner = detail::sum_over_coarsenings<T>(t.sizes, [&](const std::vector<std::size_t>& pi) {
                return detail::sign<T>(pi.size() - 1) * detail::falling_product(pi, nn) * factorial<T>(pi.size() - 1);
            });
            s += detail::big<T>(t.count) * pow_int(nn, t.sizes.size()) * detail::big<T>(t.mobius) *
                 detail::product_over(t.sizes, kv) * inner;
        }
        out.values.push_back(detail::sign<T>(j - 1) * s / (pow_int(nn, j + 1) * factorial<T>(j - 1)));
    }
    return out;
}

/// Moments straight from a root list, with absolute moments filled in.
template <Scalar T>
MomentVector<T> moments_from_roots(const RootList<T>& roots, std::size_t J) {
    MomentVector<T> out;
    out.n = roots.size();
    for (std::size_t j = 1; j <= J; ++j) {
        out.values.push_back(roots.moment(j));
        out.abs_values.push_back(roots.abs_moment(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// convolutions

template <Scalar T>
Polynomial<T> boxplus(const Polynomial<T>& p, const Polynomial<T>& q) {
    if (p.is_zero() || q.is_zero()) throw DegenerateInput("convolution of the zero polynomial");
    if (p.degree() != q.degree()) throw ParameterError("boxplus needs equal degrees");
    const std::size_t n = p.degree();
    const T n_fact = factorial<T>(n);
    std::vector<T> fact(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fact[i] = factorial<T>(i);
    const auto P = monic(p);
    const auto Q = monic(q);
    std::vector<T> c(n + 1, from_int<T>(0));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; i + j <= n; ++j)
            c[i + j] += fact[n - i] * fact[n - j] / (n_fact * fact[n - i - j]) * P.a(i) * Q.a(j);
    return Polynomial<T>::from_signed(std::move(c));
}

template <Scalar T>
Polynomial<T> boxtimes(const Polynomial<T>& p, const Polynomial<T>& q) {
    if (p.is_zero() || q.is_zero()) throw DegenerateInput("convolution of the zero polynomial");
    if (p.degree() != q.degree()) throw ParameterError("boxtimes needs equal degrees");
    const std::size_t n = p.degree();
    std::vector<T> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = p.a(k) * q.a(k) / binomial<T>(n, k);
    return Polynomial<T>::from_signed(std::move(c));
}

/// q_{d,n}(z) = z^n (z-1)^d.
template <Scalar T>
Polynomial<T> q_dn(std::size_t d, std::size_t n) {
    std::vector<T> a(n + d + 1, from_int<T>(0));
    for (std::size_t i = 0; i <= d; ++i) a[i] = binomial<T>(d, i);
    return Polynomial<T>::from_signed(std::move(a));
}

/// (z-1)^n, the unit of boxtimes in degree n.
template <Scalar T>
Polynomial<T> boxtimes_identity(std::size_t n) {
    return q_dn<T>(n, 0);
}

template <Scalar T>
struct DerivativeConvolution {
    Polynomial<T> via_boxtimes;     // p boxtimes_{n+d} z^n (z-1)^d
    Polynomial<T> via_derivative;   // z^n D^n p / (n+d)_n
    Polynomial<T> normalized;       // D^n p / (n+d)_n, the z^n factor stripped
    bool agree = false;
};

/// Both sides of the derivative-as-convolution identity, computed separately.
/// In rational mode a disagreement raises InvariantViolation.
template <Scalar T>
DerivativeConvolution<T> derivative_as_boxtimes(const Polynomial<T>& p, std::size_t n, std::size_t d) {
    if (p.is_zero()) throw DegenerateInput("derivative_as_boxtimes of the zero polynomial");
    if (p.degree() != n + d) throw ParameterError("derivative_as_boxtimes needs deg p = n + d");
    DerivativeConvolution<T> out;
    out.via_boxtimes = boxtimes(p, q_dn<T>(d, n));
    out.normalized = derivative(p, n) / falling(detail::nat<T>(n + d), n);
    out.via_derivative = out.normalized * Polynomial<T>::monomial_power(n);
    if constexpr (is_exact_v<T>) {
        out.agree = out.via_boxtimes == out.via_derivative;
        if (!out.agree) throw InvariantViolation("derivative-as-convolution sides disagree");
    } else {
        // Floating sides agree to about half the working precision.
        const T tol = boost::multiprecision::pow(BigFloat(2), -static_cast<int>(current_precision_bits() / 2));
        out.agree = coeff_linf_distance(out.via_boxtimes, out.via_derivative) <= tol;
    }
    return out;
}

// ---------------------------------------------------------------------------
// product formulas over pairs (sigma, tau) with sigma v tau = 1_j

namespace detail {

template <Scalar T>
T connected_pair_sum(std::size_t j, std::size_t n, const std::vector<T>& left, const std::vector<T>& right) {
    const auto& types = partition_types(j);
    const auto& counts = connected_pair_counts(j);
    const T nn = nat<T>(n);
    std::vector<T> lw(types.size()), rw(types.size());
    for (std::size_t s = 0; s < types.size(); ++s) {
        const T w = pow_int(nn, types[s].sizes.size()) * big<T>(types[s].mobius);
        lw[s] = w * product_over(types[s].sizes, left);
        rw[s] = w * product_over(types[s].sizes, right);
    }
    T total = from_int<T>(0);
    for (std::size_t s = 0; s < types.size(); ++s)
        for (std::size_t t = 0; t < types.size(); ++t)
            if (counts[s][t] != 0) total += big<T>(counts[s][t]) * lw[s] * rw[t];
    return sign<T>(j - 1) * total / (pow_int(nn, j + 1) * factorial<T>(j - 1));
}

}  // namespace detail

/// kappa_j(p boxtimes_n q) from the cumulants of p and q.
template <Scalar T>
T product_cumulant(const Polynomial<T>& p, const Polynomial<T>& q, std::size_t j) {
    if (p.degree() != q.degree()) throw ParameterError("product formulas need equal degrees");
    if (j > partition_guards().max_pair)
        throw GuardError("double partition sum of size " + std::to_string(j) + " exceeds the guard");
    const std::size_t n = p.degree();
    auto kp = detail::one_based(cumulants_from_coeffs(p, j).values, j);
    auto kq = detail::one_based(cumulants_from_coeffs(q, j).values, j);
    return detail::connected_pair_sum(j, n, kp, kq);
}

/// m_j(p boxtimes_n q) from the cumulants of p and the moments of q.
template <Scalar T>
T product_moment(const Polynomial<T>& p, const Polynomial<T>& q, std::size_t j) {
    if (p.degree() != q.degree()) throw ParameterError("product formulas need equal degrees");
    if (j > partition_guards().max_pair)
        throw GuardError("double partition sum of size " + std::to_string(j) + " exceeds the guard");
    const std::size_t n = p.degree();
    auto kp = detail::one_based(cumulants_from_coeffs(p, j).values, j);
    auto mq = detail::one_based(moments_from_coeffs(q, j).values, j);
    return detail::connected_pair_sum(j, n, kp, mq);
}

// ---------------------------------------------------------------------------
// crude bound

namespace detail {

template <Scalar T>
T abs_bound_from(const std::vector<T>& mags, std::size_t n, std::size_t j) {
    check_single(j);
    if (j > n) throw ParameterError("finite free cumulants of order above the degree are undefined");
    const T nn = nat<T>(n);
    T s = from_int<T>(0);
    for (const auto& t : partition_types(j)) {
        T inner = sum_over_coarsenings<T>(t.sizes, [&](const std::vector<std::size_t>& pi) {
            return factorial<T>(pi.size() - 1) / abs_value(falling_product(pi, nn));
        });
        s += big<T>(t.count) * pow_int(nn, t.sizes.size()) * abs_value(big<T>(t.mobius)) * product_over(t.sizes, mags) *
             inner;
    }
    return pow_int(nn, j - 1) * s / factorial<T>(j - 1);
}

}  // namespace detail

/// Triangle-inequality bound on |kappa_j|: every term of the moment-to-cumulant
/// sum taken in absolute value, using |m_sigma|.
template <Scalar T>
T cumulant_abs_bound(const Polynomial<T>& p, std::size_t j) {
    auto m = moments_from_coeffs(p, j).values;
    for (auto& v : m) v = abs_value(v);
    return detail::abs_bound_from(detail::one_based(m, j), p.degree(), j);
}

/// Same bound with the absolute moments |m|_sigma of a root list.
template <Scalar T>
T cumulant_abs_bound(const RootList<T>& roots, std::size_t j) {
    std::vector<T> mags;
    for (std::size_t k = 1; k <= j; ++k) mags.push_back(roots.abs_moment(k));
    return detail::abs_bound_from(detail::one_based(mags, j), roots.size(), j);
}

}  // namespace ffp
