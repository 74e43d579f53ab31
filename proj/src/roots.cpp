#include "ffp/roots.hpp"

#include <algorithm>
#include <cmath>

namespace ffp {

namespace {

using C = ComplexBF;

C add(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
C sub(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
C mul(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
BigFloat norm2(const C& a) { return a.re * a.re + a.im * a.im; }
C div(const C& a, const C& b) {
    BigFloat d = norm2(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
BigFloat modulus(const C& a) { return boost::multiprecision::sqrt(norm2(a)); }

// p(z) and p'(z) for monic monomial coefficients c (c[n] == 1).
void horner(const std::vector<BigFloat>& c, const C& z, C& value, C& deriv) {
    const std::size_t n = c.size() - 1;
    value = {c[n], BigFloat(0)};
    deriv = {BigFloat(0), BigFloat(0)};
    for (std::size_t k = n; k-- > 0;) {
        deriv = add(mul(deriv, z), value);
        value = add(mul(value, z), C{c[k], BigFloat(0)});
    }
}

}  // namespace

RootFindResult find_roots(const Polynomial<BigFloat>& p, const RootFindOptions& opts) {
    if (p.is_zero() || p.degree() == 0) throw ParameterError("find_roots needs a polynomial of positive degree");
    const auto q = monic(p);
    const std::size_t n = q.degree();
    std::vector<BigFloat> c = q.monomial_coeffs();

    RootFindResult out;
    if (n == 1) {
        out.roots.push_back({BigFloat(-c[0]), BigFloat(0)});
    } else {
        // Cauchy-type radius bound; guesses spread on a circle of that radius,
        // rotated off the real axis so symmetric root sets do not stall.
        BigFloat radius = 0;
        for (std::size_t k = 0; k < n; ++k) {
            BigFloat r = boost::multiprecision::pow(abs_value(c[k]), BigFloat(1) / BigFloat(n - k));
            if (r > radius) radius = r;
        }
        radius = radius * 2 + 1;
        BigFloat shift = -c[n - 1] / BigFloat(n);
        const BigFloat two_pi = boost::multiprecision::acos(BigFloat(-1)) * 2;
        std::vector<C> z(n);
        for (std::size_t k = 0; k < n; ++k) {
            BigFloat theta = two_pi * BigFloat(k) / BigFloat(n) + BigFloat("0.4");
            z[k] = {shift + radius * boost::multiprecision::cos(theta), radius * boost::multiprecision::sin(theta)};
        }

        std::vector<bool> done(n, false);
        std::size_t iter = 0;
        for (; iter < opts.max_iterations; ++iter) {
            bool all_done = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (done[k]) continue;
                C value, deriv;
                horner(c, z[k], value, deriv);
                if (norm2(value) == 0) {
                    done[k] = true;
                    continue;
                }
                C ratio = div(value, deriv);
                C s{BigFloat(0), BigFloat(0)};
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == k) continue;
                    C diff = sub(z[k], z[j]);
                    if (norm2(diff) == 0) continue;
                    s = add(s, div(C{BigFloat(1), BigFloat(0)}, diff));
                }
                C denom = sub(C{BigFloat(1), BigFloat(0)}, mul(ratio, s));
                C step = div(ratio, denom);
                z[k] = sub(z[k], step);
                if (modulus(step) <= opts.tol * (1 + modulus(z[k]))) {
                    done[k] = true;
                } else {
                    all_done = false;
                }
            }
            if (all_done) break;
        }
        if (iter == opts.max_iterations) throw ConvergenceError("Aberth iteration did not converge");
        out.iterations = iter + 1;
        out.roots = std::move(z);
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const C& a, const C& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    // Multiple roots converge only to about tol^{1/multiplicity}, so the
    // real-root test uses the square root of the tolerance.
    const BigFloat real_tol = boost::multiprecision::sqrt(opts.tol);
    for (const auto& r : out.roots)
        if (abs_value(r.im) < real_tol) out.real.roots.push_back(r.re);
    return out;
}

}  // namespace ffp
