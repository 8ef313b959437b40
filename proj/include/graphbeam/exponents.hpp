#pragma once

#include "graphbeam/params.hpp"

namespace graphbeam {

// Roots of mu^4 - gamma*mu^2 + lambda^2 = 0, principal branches.
// mu2 = -mu1 and mu4 = -mu3 exactly; mu1^2 + mu3^2 = gamma and
// (mu1*mu3)^2 = lambda^2 up to roundoff. The sign of mu1*mu3 relative
// to lambda depends on the branch cuts, so it is recorded instead of
// being normalized away.
struct CharExponents {
    cplx mu1, mu2, mu3, mu4;
    bool product_matches_lambda; // mu1*mu3 == +lambda (else -lambda)
};

// Thrown when gamma^2 - 4*lambda^2 is too close to zero for the two
// exponent pairs to be separated (the confluent case is out of scope).
class degenerate_point_error : public std::domain_error {
public:
    explicit degenerate_point_error(const std::string& what)
        : std::domain_error(what) {}
};

bool is_degenerate(cplx lambda, double gamma);

CharExponents char_exponents(cplx lambda, double gamma);

// Asymptotic parametrisation lambda = i*rho^2, mu1 = rho, mu3 = i*rho.
// Exact only in the gamma -> 0 limit; used for seeding, never for
// residual checks.
struct RhoPoint {
    cplx rho;
    cplx lambda() const { return cplx(0.0, 1.0) * rho * rho; }
};

struct RhoParametrisation {
    cplx lambda;
    CharExponents exps;
};

RhoParametrisation rho_parametrise(cplx rho);

} // namespace graphbeam
