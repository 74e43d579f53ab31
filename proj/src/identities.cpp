#include "ffp/identities.hpp"

#include <algorithm>
#include <json.hpp>

#include "ffp/calculus.hpp"
#include "ffp/partitions.hpp"

namespace ffp {

namespace {

IdentityCheck result(std::string name, const std::string& mismatch) {
    return IdentityCheck{std::move(name), mismatch.empty(), mismatch};
}

std::string compare(const Polynomial<Rational>& lhs, const Polynomial<Rational>& rhs) {
    if (lhs == rhs) return {};
    return "lhs " + nlohmann::json(format_all(lhs.signed_coeffs())).dump() + " rhs " +
           nlohmann::json(format_all(rhs.signed_coeffs())).dump();
}

}  // namespace

IdentityCheck check_cosine_laguerre(std::size_t d) {
    const auto f = cosine_spec();
    const auto lhs = even_jensen<Rational>(f, d, 0);
    const Rational factor = pow_int(Rational(4), d) * factorial<Rational>(d) * factorial<Rational>(d) /
                            factorial<Rational>(2 * d);
    const auto rhs = scale_argument(laguerre(d, Rational(-1, 2)), Rational(1, 4)) * factor;
    return result("cosine J_{d,0} = Laguerre, d=" + std::to_string(d), compare(lhs, rhs));
}

IdentityCheck check_cosine_hermite(std::size_t d) {
    const auto f = cosine_spec();
    const auto lhs = even_jensen<Rational>(f, d, 0).monomial_coeffs();  // powers of w
    const auto he = hermite<Rational>(2 * d).monomial_coeffs();        // powers of z
    const Rational factor = pow_int(Rational(-2), d) * factorial<Rational>(d) / factorial<Rational>(2 * d);
    std::string mismatch;
    for (std::size_t k = 0; k <= 2 * d; ++k) {
        if (k % 2 == 1) {
            if (he[k] != 0) mismatch = "odd coefficient z^" + std::to_string(k) + " of He_{2d}";
            continue;
        }
        // (z/sqrt 2)^{2i} = w^i / 2^i
        const std::size_t i = k / 2;
        const Rational rhs = factor * he[k] / pow_int(Rational(2), i);
        if (rhs != lhs[i] && mismatch.empty())
            mismatch = "w^" + std::to_string(i) + ": " + format_scalar(lhs[i]) + " vs " + format_scalar(rhs);
    }
    return result("cosine J_{d,0}(z^2) = Hermite, d=" + std::to_string(d), mismatch);
}

IdentityCheck check_hermite_cumulants(std::size_t d) {
    std::string mismatch;
    if (d >= 1) {
        const auto k = cumulants_from_coeffs(hermite<Rational>(d), d);
        for (std::size_t j = 1; j <= d; ++j) {
            const Rational want = j == 2 ? Rational(static_cast<long>(d)) : Rational(0);
            if (k[j] != want && mismatch.empty())
                mismatch = "kappa_" + std::to_string(j) + " = " + format_scalar(k[j]);
        }
    }
    return result("kappa(He_d) = d delta_{j2}, d=" + std::to_string(d), mismatch);
}

IdentityCheck check_hermite_moments(std::size_t d, std::size_t max_j) {
    std::string mismatch;
    const auto m = moments_from_coeffs(hermite<Rational>(d), max_j);
    for (std::size_t j = 1; j <= max_j; ++j) {
        const Rational display = hermite_moment_display(d, j);
        if (display != m[j] && mismatch.empty())
            mismatch = "m_" + std::to_string(j) + ": display " + format_scalar(display) + " vs " + format_scalar(m[j]);
    }
    return result("Hermite moment display, d=" + std::to_string(d), mismatch);
}

IdentityCheck check_w_routes(const EvenEntireFunction& f, std::size_t d, std::size_t n) {
    const auto routes = even_jensen_of_derivative<Rational>(f, d, n);
    return result("W_{d,n} routes (" + f.kind() + "), d=" + std::to_string(d) + " n=" + std::to_string(n),
                  routes.agree ? "" : "routes differ");
}

IdentityCheck check_combinatorial_identity(std::size_t j, std::size_t d) {
    const auto parts = enumerate_partitions(j);
    const auto top = SetPartition::top(j);
    const Rational dd(static_cast<long>(d));
    std::vector<Rational> mu_top, falling_d, tau_weight;
    for (const auto& p : parts) {
        mu_top.emplace_back(mobius(p, top));
        Rational fp = 1;
        for (auto s : p.block_sizes()) fp *= falling(dd, s);
        falling_d.push_back(fp);
        tau_weight.push_back(pow_int(dd, p.num_blocks()) * Rational(mobius_bottom(p)));
    }
    std::string mismatch;
    for (const auto& sigma : parts) {
        Rational lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (refines(sigma, parts[i])) lhs += mu_top[i] * falling_d[i];
            if (join(sigma, parts[i]) == top) rhs += tau_weight[i];
        }
        if (lhs != rhs) {
            mismatch = "sigma " + sigma.to_string() + ": " + format_scalar(lhs) + " vs " + format_scalar(rhs);
            break;
        }
    }
    return result("combinatorial identity, j=" + std::to_string(j) + " d=" + std::to_string(d), mismatch);
}

IdentityCheck check_qdn_moments(std::size_t d, std::size_t n) {
    std::string mismatch;
    const std::size_t N = n + d;
    if (N >= 1) {
        const auto m = moments_from_coeffs(q_dn<Rational>(d, n), N);
        const Rational want(static_cast<long>(d), static_cast<long>(N));
        for (std::size_t k = 1; k <= N; ++k)
            if (m[k] != want && mismatch.empty()) mismatch = "m_" + std::to_string(k) + " = " + format_scalar(m[k]);
    }
    return result("moments of q_{d,n}, d=" + std::to_string(d) + " n=" + std::to_string(n), mismatch);
}

IdentityCheck check_derivative_convolution(const Polynomial<Rational>& p, std::size_t n, std::size_t d) {
    const auto r = derivative_as_boxtimes(p, n, d);
    return result("derivative as convolution, n=" + std::to_string(n) + " d=" + std::to_string(d),
                  r.agree ? "" : "sides differ");
}

std::vector<IdentityCheck> run_identity_suite(std::size_t max_d) {
    std::vector<IdentityCheck> out;
    for (std::size_t d = 0; d <= max_d; ++d) out.push_back(check_cosine_laguerre(d));
    for (std::size_t d = 0; d <= max_d; ++d) out.push_back(check_cosine_hermite(d));
    for (std::size_t d = 1; d <= max_d; ++d) out.push_back(check_hermite_cumulants(d));
    for (std::size_t d = 1; d <= max_d; ++d) out.push_back(check_hermite_moments(d, 8));
    const auto cosine = cosine_spec();
    const auto bessel = bessel_spec(Rational(0));
    for (std::size_t d = 0; d <= std::min<std::size_t>(max_d, 5); ++d)
        for (std::size_t n : {0u, 1u, 2u, 5u, 10u, 20u}) {
            out.push_back(check_w_routes(cosine, d, n));
            out.push_back(check_w_routes(bessel, d, n));
        }
    for (std::size_t j = 1; j <= std::min<std::size_t>(max_d + 1, 7); ++j)
        for (std::size_t d = 1; d <= std::min<std::size_t>(max_d, 5); ++d) out.push_back(check_combinatorial_identity(j, d));
    for (std::size_t N = 1; N <= std::max<std::size_t>(max_d, 10); ++N)
        for (std::size_t d = 0; d <= N; ++d) out.push_back(check_qdn_moments(d, N - d));
    // a fixed rational polynomial of each degree, every split
    for (std::size_t N = 1; N <= std::max<std::size_t>(max_d, 10); ++N) {
        std::vector<Rational> roots;
        for (std::size_t i = 0; i < N; ++i) roots.emplace_back(static_cast<long>(2 * i) - 3, static_cast<long>(i % 3 + 1));
        const auto p = from_roots(std::span<const Rational>(roots));
        for (std::size_t n = 0; n <= N; ++n) out.push_back(check_derivative_convolution(p, n, N - n));
    }
    return out;
}

}  // namespace ffp
