#pragma once

// Univariate real polynomials stored in the signed convention
//
//     p(z) = sum_{i=0}^{n} (-1)^i a_i z^{n-i},
//
// so that a_i is the i-th elementary symmetric function of the roots when p is
// monic. The raw monomial coefficients c_k (p = sum c_k z^k) are a derived view
// with c_{n-i} = (-1)^i a_i.

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ffp/scalar.hpp"

namespace ffp {

template <Scalar T>
class Polynomial {
   public:
    /// The zero polynomial.
    Polynomial() = default;

    /// From signed coefficients a_0..a_n. Leading zeros are stripped.
    static Polynomial from_signed(std::vector<T> a) {
        Polynomial p;
        p.a_ = std::move(a);
        p.normalize();
        return p;
    }

    /// From monomial coefficients c_0..c_n (c_k multiplies z^k).
    static Polynomial from_monomial(const std::vector<T>& c) {
        std::size_t last = c.size();
        while (last > 0 && ffp::is_zero(c[last - 1])) --last;
        Polynomial p;
        if (last == 0) return p;
        const std::size_t n = last - 1;
        p.a_.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) p.a_[i] = (i % 2 == 0) ? c[n - i] : T(-c[n - i]);
        return p;
    }

    static Polynomial constant(const T& c) { return from_signed({c}); }

    /// z^n
    static Polynomial monomial_power(std::size_t n) {
        std::vector<T> a(n + 1, from_int<T>(0));
        a[0] = from_int<T>(1);
        return from_signed(std::move(a));
    }

    bool is_zero() const { return a_.empty(); }
    bool is_monic() const { return !a_.empty() && a_[0] == 1; }

    /// Degree; 0 for constants and for the zero polynomial (check is_zero()).
    std::size_t degree() const { return a_.empty() ? 0 : a_.size() - 1; }

    const std::vector<T>& signed_coeffs() const { return a_; }

    /// a_i, zero past the degree.
    T a(std::size_t i) const { return i < a_.size() ? a_[i] : from_int<T>(0); }

    const T& leading() const {
        if (a_.empty()) throw DegenerateInput("leading coefficient of the zero polynomial");
        return a_[0];
    }

    /// Coefficient of z^k.
    T coeff(std::size_t k) const {
        if (a_.empty() || k > degree()) return from_int<T>(0);
        const std::size_t i = degree() - k;
        return (i % 2 == 0) ? a_[i] : T(-a_[i]);
    }

    std::vector<T> monomial_coeffs() const {
        std::vector<T> c(a_.empty() ? 1 : a_.size(), from_int<T>(0));
        for (std::size_t k = 0; k < a_.size(); ++k) c[k] = coeff(k);
        return c;
    }

    T operator()(const T& z) const {
        // Horner on z^n - a_1 z^{n-1} + ...
        T v = from_int<T>(0);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            v *= z;
            if (i % 2 == 0) {
                v += a_[i];
            } else {
                v -= a_[i];
            }
        }
        return v;
    }

    friend bool operator==(const Polynomial& x, const Polynomial& y) { return x.a_ == y.a_; }

    Polynomial& operator*=(const T& s) {
        if (ffp::is_zero(s)) {
            a_.clear();
            return *this;
        }
        for (auto& v : a_) v *= s;
        return *this;
    }

    Polynomial& operator/=(const T& s) {
        if (ffp::is_zero(s)) throw ParameterError("division of a polynomial by zero");
        for (auto& v : a_) v /= s;
        return *this;
    }

    friend Polynomial operator*(Polynomial p, const T& s) { return p *= s; }
    friend Polynomial operator/(Polynomial p, const T& s) { return p /= s; }

    friend Polynomial operator+(const Polynomial& x, const Polynomial& y) {
        auto cx = x.monomial_coeffs();
        auto cy = y.monomial_coeffs();
        if (cx.size() < cy.size()) cx.resize(cy.size(), from_int<T>(0));
        for (std::size_t k = 0; k < cy.size(); ++k) cx[k] += cy[k];
        return from_monomial(cx);
    }

    friend Polynomial operator-(const Polynomial& x, const Polynomial& y) { return x + y * from_int<T>(-1); }

    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        if (x.is_zero() || y.is_zero()) return Polynomial{};
        auto cx = x.monomial_coeffs();
        auto cy = y.monomial_coeffs();
        std::vector<T> c(cx.size() + cy.size() - 1, from_int<T>(0));
        for (std::size_t i = 0; i < cx.size(); ++i)
            for (std::size_t j = 0; j < cy.size(); ++j) c[i + j] += cx[i] * cy[j];
        return from_monomial(c);
    }

   private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < a_.size() && ffp::is_zero(a_[lead])) ++lead;
        if (lead == a_.size()) {
            a_.clear();
            return;
        }
        if (lead == 0) return;
        // Dropping k leading zeros lowers the degree by k and flips the parity of
        // every remaining index by k.
        std::vector<T> b(a_.begin() + static_cast<std::ptrdiff_t>(lead), a_.end());
        if (lead % 2 == 1)
            for (auto& v : b) v = -v;
        a_ = std::move(b);
    }

    std::vector<T> a_;
};

/// Real multiset of roots with empirical moment accessors.
template <Scalar T>
struct RootList {
    std::vector<T> roots;

    std::size_t size() const { return roots.size(); }

    /// m_j: the j-th power sum divided by the number of roots.
    T moment(std::size_t j) const {
        if (roots.empty()) throw DegenerateInput("moment of an empty root list");
        T s = from_int<T>(0);
        for (const auto& r : roots) s += pow_int(r, j);
        return s / from_int<T>(static_cast<long long>(roots.size()));
    }

    /// |m|_j: mean of |root|^j.
    T abs_moment(std::size_t j) const {
        if (roots.empty()) throw DegenerateInput("moment of an empty root list");
        T s = from_int<T>(0);
        for (const auto& r : roots) s += pow_int(abs_value(r), j);
        return s / from_int<T>(static_cast<long long>(roots.size()));
    }
};

// ---------------------------------------------------------------------------
// construction and evaluation

/// prod (z - r_i). a_i comes out as the i-th elementary symmetric function.
template <Scalar T>
Polynomial<T> from_roots(std::span<const T> roots) {
    std::vector<T> e(roots.size() + 1, from_int<T>(0));
    e[0] = from_int<T>(1);
    std::size_t filled = 0;
    for (const auto& r : roots) {
        ++filled;
        for (std::size_t k = filled; k >= 1; --k) e[k] += r * e[k - 1];
    }
    return Polynomial<T>::from_signed(std::move(e));
}

template <Scalar T>
Polynomial<T> from_roots(const RootList<T>& roots) {
    return from_roots(std::span<const T>(roots.roots));
}

template <Scalar T>
T evaluate(const Polynomial<T>& p, const T& z) {
    return p(z);
}

// ---------------------------------------------------------------------------
// operators

/// Raw n-th derivative. Differentiating past the degree yields the zero
/// polynomial (is_zero() is the degeneracy flag).
template <Scalar T>
Polynomial<T> derivative(const Polynomial<T>& p, std::size_t n) {
    if (p.is_zero() || n > p.degree()) return Polynomial<T>{};
    if (n == 0) return p;
    const std::size_t deg = p.degree();
    std::vector<T> a(deg - n + 1);
    // D^n z^{deg-i} = (deg-i)_n z^{deg-n-i}; the sign (-1)^i is unchanged.
    for (std::size_t i = 0; i + n <= deg; ++i) a[i] = falling(from_int<T>(static_cast<long long>(deg - i)), n) * p.a(i);
    return Polynomial<T>::from_signed(std::move(a));
}

/// Applies M_{alpha,t} = t((1+alpha) D + z D^2) `times` times. The defaults give
/// M = 2(D + 2 z D^2).
template <Scalar T>
Polynomial<T> apply_M(const Polynomial<T>& p, std::size_t times, const T& alpha, const T& t) {
    if (!(alpha > -1)) throw ParameterError("apply_M requires alpha > -1");
    if (!(t > 0)) throw ParameterError("apply_M requires t > 0");
    Polynomial<T> q = p;
    for (std::size_t step = 0; step < times; ++step) {
        if (q.is_zero() || q.degree() == 0) return Polynomial<T>{};
        const std::size_t deg = q.degree();
        std::vector<T> a(deg);
        // M z^m = t m (m + alpha) z^{m-1}
        for (std::size_t i = 0; i < deg; ++i) {
            const T m = from_int<T>(static_cast<long long>(deg - i));
            a[i] = t * m * (m + alpha) * q.a(i);
        }
        q = Polynomial<T>::from_signed(std::move(a));
    }
    return q;
}

template <Scalar T>
Polynomial<T> apply_M(const Polynomial<T>& p, std::size_t times) {
    return apply_M(p, times, T(from_int<T>(-1) / from_int<T>(2)), from_int<T>(4));
}

/// D_k p(z) = k^{deg p} p(z / k): roots scaled by k, leading coefficient kept.
template <Scalar T>
Polynomial<T> dilate(const Polynomial<T>& p, const T& k) {
    if (is_zero(k)) throw ParameterError("dilation by zero");
    std::vector<T> a = p.signed_coeffs();
    T power = from_int<T>(1);
    for (auto& v : a) {
        v *= power;
        power *= k;
    }
    return Polynomial<T>::from_signed(std::move(a));
}

/// Dilation by sqrt(k2). In rational mode this is exact whenever sqrt(k2) is
/// rational or every odd-index signed coefficient vanishes.
template <Scalar T>
Polynomial<T> dilate_by_sqrt(const Polynomial<T>& p, const T& k2) {
    if (!(k2 > 0)) throw ParameterError("dilation by sqrt requires a positive argument");
    bool odd_vanish = true;
    for (std::size_t i = 1; i < p.signed_coeffs().size(); i += 2) odd_vanish = odd_vanish && is_zero(p.a(i));
    if constexpr (is_exact_v<T>) {
        if (!odd_vanish || exact_sqrt(k2)) {
            return dilate(p, sqrt_scalar(k2));
        }
        std::vector<T> a = p.signed_coeffs();
        T power = from_int<T>(1);
        for (std::size_t i = 0; i < a.size(); i += 2) {
            a[i] *= power;
            power *= k2;
        }
        return Polynomial<T>::from_signed(std::move(a));
    } else {
        (void)odd_vanish;
        return dilate(p, sqrt_scalar(k2));
    }
}

/// q(z) = p(s z), leading coefficient scaled by s^n.
template <Scalar T>
Polynomial<T> scale_argument(const Polynomial<T>& p, const T& s) {
    auto c = p.monomial_coeffs();
    T power = from_int<T>(1);
    for (auto& v : c) {
        v *= power;
        power *= s;
    }
    return Polynomial<T>::from_monomial(c);
}

/// q(z) = p(z + b) by repeated synthetic division (Taylor shift).
template <Scalar T>
Polynomial<T> shift_argument(const Polynomial<T>& p, const T& b) {
    if (p.is_zero()) return p;
    auto c = p.monomial_coeffs();
    const std::size_t n = c.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = n - 1; k + 1 > i; --k) c[k] += b * c[k + 1];
    return Polynomial<T>::from_monomial(c);
}

/// (p / lc(p), lc(p)).
template <Scalar T>
std::pair<Polynomial<T>, T> monic_normalize(const Polynomial<T>& p) {
    if (p.is_zero()) throw DegenerateInput("cannot normalize the zero polynomial");
    T lead = p.leading();
    return {p / lead, lead};
}

template <Scalar T>
Polynomial<T> monic(const Polynomial<T>& p) {
    return monic_normalize(p).first;
}

/// max_k |c_k(p) - c_k(q)| over monomial coefficients.
template <Scalar T>
T coeff_linf_distance(const Polynomial<T>& p, const Polynomial<T>& q) {
    const std::size_t n = std::max(p.degree(), q.degree());
    T best = from_int<T>(0);
    for (std::size_t k = 0; k <= n; ++k) {
        T d = abs_value(T(p.coeff(k) - q.coeff(k)));
        if (d > best) best = d;
    }
    return best;
}

/// max over `points` uniform grid points of [lo, hi] of |p - q|.
template <Scalar T>
T sup_distance(const Polynomial<T>& p, const Polynomial<T>& q, const T& lo, const T& hi, std::size_t points = 512) {
    if (points < 2) throw ParameterError("sup_distance needs at least two grid points");
    T best = from_int<T>(0);
    const T step = (hi - lo) / from_int<T>(static_cast<long long>(points - 1));
    for (std::size_t i = 0; i < points; ++i) {
        T x = lo + step * from_int<T>(static_cast<long long>(i));
        T d = abs_value(T(p(x) - q(x)));
        if (d > best) best = d;
    }
    return best;
}

}  // namespace ffp
