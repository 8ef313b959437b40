#include "graphbeam/eigenfunctions.hpp"

#include "graphbeam/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace graphbeam {

namespace {

const QuadRule& rule64() {
    static const QuadRule q = gauss_legendre(64);
    return q;
}

cplx basis_deriv(cplx mu, double s, int deriv) {
    cplx arg = mu * (1.0 - s);
    cplx coef = std::pow(-mu, deriv);
    return coef * ((deriv % 2 == 0) ? std::sinh(arg) : std::cosh(arg));
}

// fix energy norm to 1 and make the first informative vertex slope
// (or else the vertex value) real positive
void normalize(EigenfunctionRep& x, const NetworkParams& p) {
    cplx nrm2 = energy_inner(x, x, p);
    double nrm = std::sqrt(std::abs(nrm2));
    if (nrm < 1e-300)
        throw std::runtime_error("eigenfunction: profile vanished (wrong root?)");
    cplx scale = 1.0 / nrm;
    int j0 = 0;
    while (j0 < kNumEdges && std::abs(x.amplitude[j0]) == 0.0)
        ++j0;
    cplx probe = x.value(j0, 0.0, 1);
    if (std::abs(probe) < 1e-12 * nrm)
        probe = x.value(j0, 0.0, 0);
    if (std::abs(probe) > 0.0)
        scale *= std::conj(probe) / std::abs(probe); // rotate probe to R+
    x.A *= scale;
    x.B *= scale;
    x.normalization *= scale;
}

} // namespace

cplx EigenfunctionRep::value(int j, double s, int deriv) const {
    return amplitude[j] *
           (A * basis_deriv(mu1, s, deriv) + B * basis_deriv(mu3, s, deriv));
}

EigenfunctionRep branch1_mode(const Eigenvalue& ev, const NetworkParams& p) {
    if (ev.branch != Branch::D)
        throw std::invalid_argument("branch1_mode: expects a D-branch root");
    if (!is_zero(Branch::D, ev.value, p))
        throw std::invalid_argument("branch1_mode: value is not a verified root");
    CharExponents e = char_exponents(ev.value, p.gamma);
    EigenfunctionRep x;
    x.lambda = ev.value;
    x.branch = Branch::D;
    x.mu1 = e.mu1;
    x.mu3 = e.mu3;
    x.amplitude = {1.0, 1.0, 1.0};
    x.A = e.mu1 * std::cosh(e.mu3);
    x.B = -e.mu3 * std::cosh(e.mu1);
    normalize(x, p);
    return x;
}

std::pair<EigenfunctionRep, EigenfunctionRep>
branch2_modes(const Eigenvalue& ev, const NetworkParams& p) {
    if (ev.branch != Branch::H)
        throw std::invalid_argument("branch2_modes: expects an H-branch root");
    if (!is_zero(Branch::H, ev.value, p))
        throw std::invalid_argument("branch2_modes: value is not a verified root");
    CharExponents e = char_exponents(ev.value, p.gamma);
    EigenfunctionRep base;
    base.lambda = ev.value;
    base.branch = Branch::H;
    base.mu1 = e.mu1;
    base.mu3 = e.mu3;
    base.A = std::sinh(e.mu3);
    base.B = -std::sinh(e.mu1);
    EigenfunctionRep x1 = base, x2 = base;
    x1.amplitude = {-2.0, 1.0, 1.0};
    x2.amplitude = {0.0, 1.0, -1.0};
    normalize(x1, p);
    normalize(x2, p);
    return {x1, x2};
}

cplx energy_inner(const EigenfunctionRep& x, const EigenfunctionRep& y,
                  const NetworkParams& p) {
    const QuadRule& q = rule64();
    cplx total = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        cplx bend = 0.0, tens = 0.0, kin = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            double s = q.nodes[k], wq = q.weights[k];
            bend += wq * x.value(j, s, 2) * std::conj(y.value(j, s, 2));
            tens += wq * x.value(j, s, 1) * std::conj(y.value(j, s, 1));
            kin += wq * (x.lambda * x.value(j, s, 0)) *
                   std::conj(y.lambda * y.value(j, s, 0));
        }
        total += bend + p.gamma * tens + kin +
                 p.alpha * x.value(j, 0.0, 1) * std::conj(y.value(j, 0.0, 1));
    }
    return total;
}

ResidualReport residual_report(const EigenfunctionRep& x,
                               const NetworkParams& p) {
    const int grid = 200;
    const cplx lam2 = x.lambda * x.lambda;
    double ode_num = 0.0, ode_scale = 0.0;
    double w_scale = 0.0, w2_scale = 0.0, w3_scale = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        if (std::abs(x.amplitude[j]) == 0.0)
            continue;
        for (int k = 0; k <= grid; ++k) {
            double s = static_cast<double>(k) / grid;
            cplx w0 = x.value(j, s, 0), w2 = x.value(j, s, 2),
                 w4 = x.value(j, s, 4);
            ode_num = std::max(ode_num,
                               std::abs(w4 - p.gamma * w2 + lam2 * w0));
            ode_scale = std::max(ode_scale, std::abs(w4) +
                                                p.gamma * std::abs(w2) +
                                                std::abs(lam2 * w0));
            w_scale = std::max(w_scale, std::abs(w0));
            w2_scale = std::max(w2_scale, std::abs(w2));
            w3_scale = std::max(w3_scale, std::abs(x.value(j, s, 3)));
        }
    }
    ResidualReport r;
    r.ode_residual = ode_num / std::max(ode_scale, 1e-300);

    double bc = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        bc = std::max(bc, std::abs(x.value(j, 1.0, 0)) / std::max(w_scale, 1e-300));
        bc = std::max(bc, std::abs(x.value(j, 1.0, 2)) / std::max(w2_scale, 1e-300));
    }
    r.bc_residual = bc;

    double conn = 0.0;
    const cplx ab = p.alpha + x.lambda * p.beta;
    for (int j = 1; j < kNumEdges; ++j)
        conn = std::max(conn, std::abs(x.value(j, 0.0, 0) - x.value(0, 0.0, 0)) /
                                  std::max(w_scale, 1e-300));
    for (int j = 0; j < kNumEdges; ++j) {
        cplx m = x.value(j, 0.0, 2) - ab * x.value(j, 0.0, 1);
        double ms = std::abs(x.value(j, 0.0, 2)) +
                    std::abs(ab) * std::abs(x.value(j, 0.0, 1)) + w2_scale;
        conn = std::max(conn, std::abs(m) / ms);
    }
    cplx force = 0.0;
    double force_scale = w3_scale;
    for (int j = 0; j < kNumEdges; ++j) {
        force += x.value(j, 0.0, 3) - p.gamma * x.value(j, 0.0, 1);
        force_scale += std::abs(x.value(j, 0.0, 3)) +
                       p.gamma * std::abs(x.value(j, 0.0, 1));
    }
    conn = std::max(conn, std::abs(force) / force_scale);
    r.connectivity_residual = conn;
    return r;
}

cplx adjoint_pairing(const EigenfunctionRep& x, const NetworkParams& p) {
    const QuadRule& q = rule64();
    cplx sum_sq = 0.0, slope_sq = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            cplx w = x.value(j, q.nodes[k], 0);
            sum_sq += q.weights[k] * w * w;
        }
        cplx wp0 = x.value(j, 0.0, 1);
        slope_sq += wp0 * wp0;
    }
    return -2.0 * x.lambda * x.lambda * sum_sq - x.lambda * p.beta * slope_sq;
}

cplx adjoint_inner(const EigenfunctionRep& x, const EigenfunctionRep& y,
                   const NetworkParams& p) {
    // z is the adjoint eigenvector built from y: w-part conj(w_y),
    // v-part -conj(lambda_y) conj(w_y). Conjugations cancel inside the
    // sesquilinear energy form, leaving an analytic bilinear pairing.
    const QuadRule& q = rule64();
    cplx total = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        cplx bend = 0.0, tens = 0.0, kin = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            double s = q.nodes[k], wq = q.weights[k];
            bend += wq * x.value(j, s, 2) * y.value(j, s, 2);
            tens += wq * x.value(j, s, 1) * y.value(j, s, 1);
            kin += wq * (x.lambda * x.value(j, s, 0)) *
                   (-y.lambda * y.value(j, s, 0));
        }
        total += bend + p.gamma * tens + kin +
                 p.alpha * x.value(j, 0.0, 1) * y.value(j, 0.0, 1);
    }
    return total;
}

cplx branch1_pairing_closed_form(cplx lambda, const NetworkParams& p, cplx c) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx m1 = e.mu1, m3 = e.mu3;
    const cplx c1 = std::cosh(m1), c3 = std::cosh(m3);
    const cplx s1 = std::sinh(m1), s3 = std::sinh(m3);
    const cplx lam2 = lambda * lambda;
    cplx br = -lam2 * c1 * c3 * (m1 * s1 * c3 + m3 * c1 * s3) -
              4.0 * lam2 * (m1 * m3 / (m3 * m3 - m1 * m1)) * c1 * c3 *
                  (m1 * c1 * s3 - m3 * s1 * c3) -
              lambda * p.beta * std::pow(m3 * m3 - m1 * m1, 2) * c1 * c1 * c3 * c3 +
              lam2 * (m1 * m1 * c3 * c3 + m3 * m3 * c1 * c1);
    return 3.0 * c * c * br;
}

double case1_b_denominator_scale(cplx lambda, const NetworkParams& p) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx m1 = e.mu1, m3 = e.mu3;
    const double r1 = std::abs(m1.real()), r3 = std::abs(m3.real());
    cplx den = m1 * m1 *
               (m1 * std::sinh(m1) * std::exp(-r1) +
                (p.alpha + lambda * p.beta) * std::cosh(m1) * std::exp(-r1)) *
               std::cosh(m3) * std::exp(-r3);
    double ref = std::abs(m1) * std::abs(m1) * std::abs(m1) *
                 (1.0 + std::abs(p.alpha + lambda * p.beta));
    return std::abs(den) / std::max(ref, 1e-300);
}

} // namespace graphbeam
