#pragma once

// Exact identity checks shared by the CLI's verify-identities and the tests.
// Each check compares two independently computed sides in rational mode.

#include <string>
#include <vector>

#include "ffp/special.hpp"

namespace ffp {

struct IdentityCheck {
    std::string name;
    bool ok = false;
    std::string detail;  // first mismatch, empty when ok
};

/// Cosine: J_{d,0}(z) = 4^d (d!)^2/(2d)! L_d^{(-1/2)}(z/4).
IdentityCheck check_cosine_laguerre(std::size_t d);

/// Cosine: J_{d,0}(z^2) = (-2)^d d!/(2d)! He_{2d}(z/sqrt 2), compared as series in
/// w = z^2 so only integer powers of 2 appear.
IdentityCheck check_cosine_hermite(std::size_t d);

/// kappa_j^d(He_d) = d [j = 2] for j = 1..d.
IdentityCheck check_hermite_cumulants(std::size_t d);

/// The Hermite moment display against moments_from_coeffs(He_d), j = 1..max_j.
IdentityCheck check_hermite_moments(std::size_t d, std::size_t max_j);

/// Both W_{d,n} routes; a mismatch surfaces as InvariantViolation.
IdentityCheck check_w_routes(const EvenEntireFunction& f, std::size_t d, std::size_t n);

/// For every sigma in P(j): sum_{pi >= sigma} mu(pi, 1_j) (d)_pi equals
/// sum_{tau : sigma v tau = 1_j} d^{|tau|} mu(0_j, tau). Brute force over P(j)^2.
IdentityCheck check_combinatorial_identity(std::size_t j, std::size_t d);

/// m_k(z^n (z-1)^d) = d/(n+d) for k = 1..n+d.
IdentityCheck check_qdn_moments(std::size_t d, std::size_t n);

/// Both sides of the derivative-as-convolution identity for p; mismatch raises
/// InvariantViolation.
IdentityCheck check_derivative_convolution(const Polynomial<Rational>& p, std::size_t n, std::size_t d);

/// The whole suite with degrees capped by max_d (some families are capped lower).
std::vector<IdentityCheck> run_identity_suite(std::size_t max_d);

}  // namespace ffp
