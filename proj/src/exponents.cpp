#include "graphbeam/exponents.hpp"

#include <cmath>

namespace graphbeam {

static double degeneracy_gap(cplx lambda, double gamma) {
    return std::abs(gamma * gamma - 4.0 * lambda * lambda);
}

bool is_degenerate(cplx lambda, double gamma) {
    double scale = std::max(1.0, gamma * gamma);
    return degeneracy_gap(lambda, gamma) <= 1e-10 * scale;
}

CharExponents char_exponents(cplx lambda, double gamma) {
    if (is_degenerate(lambda, gamma))
        throw degenerate_point_error(
            "char_exponents: gamma^2 - 4*lambda^2 ~ 0 (confluent exponents)");

    cplx disc = std::sqrt(gamma * gamma - 4.0 * lambda * lambda);
    CharExponents e;
    e.mu1 = std::sqrt((gamma + disc) / 2.0);
    e.mu3 = std::sqrt((gamma - disc) / 2.0);
    e.mu2 = -e.mu1;
    e.mu4 = -e.mu3;
    e.product_matches_lambda =
        std::abs(e.mu1 * e.mu3 - lambda) <= std::abs(e.mu1 * e.mu3 + lambda);
    return e;
}

RhoParametrisation rho_parametrise(cplx rho) {
    RhoParametrisation p;
    p.lambda = cplx(0.0, 1.0) * rho * rho;
    p.exps.mu1 = rho;
    p.exps.mu3 = cplx(0.0, 1.0) * rho;
    p.exps.mu2 = -p.exps.mu1;
    p.exps.mu4 = -p.exps.mu3;
    p.exps.product_matches_lambda = true;
    return p;
}

} // namespace graphbeam
