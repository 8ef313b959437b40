#pragma once

#include "graphbeam/rootfinding.hpp"

#include <array>
#include <utility>

namespace graphbeam {

// Closed-form mode: on edge j,
//   w_j(s) = amplitude[j] * (A*sinh(mu1*(1-s)) + B*sinh(mu3*(1-s))),
// with v_j = lambda*w_j. Derivatives are analytic.
struct EigenfunctionRep {
    cplx lambda;
    Branch branch = Branch::D;
    std::array<cplx, kNumEdges> amplitude{};
    cplx A{}, B{};
    cplx mu1{}, mu3{};
    cplx normalization{1.0, 0.0}; // scale folded into A, B

    // deriv-th s-derivative of w_j at s
    cplx value(int j, double s, int deriv = 0) const;
};

struct ResidualReport {
    double ode_residual = 0;
    double bc_residual = 0;
    double connectivity_residual = 0;
};

EigenfunctionRep branch1_mode(const Eigenvalue& ev, const NetworkParams& p);

// The orthogonal pair on amplitude vectors {-2,1,1} and {0,1,-1}.
std::pair<EigenfunctionRep, EigenfunctionRep>
branch2_modes(const Eigenvalue& ev, const NetworkParams& p);

// Energy inner product (bending + vertex elasticity + tension + kinetic),
// 64-node Gauss-Legendre per edge.
cplx energy_inner(const EigenfunctionRep& x, const EigenfunctionRep& y,
                  const NetworkParams& p);

ResidualReport residual_report(const EigenfunctionRep& x,
                               const NetworkParams& p);

// Pairing with the matching adjoint eigenvector:
//   -2*lambda^2 * sum_j int w_j^2 - lambda*beta * sum_j (w_j'(0))^2
// (analytic squares, not moduli).
cplx adjoint_pairing(const EigenfunctionRep& x, const NetworkParams& p);

// Same pairing evaluated through the energy form against the adjoint
// eigenvector built from mode y; vanishes for distinct eigenvalues.
cplx adjoint_inner(const EigenfunctionRep& x, const EigenfunctionRep& y,
                   const NetworkParams& p);

// Independent bracket expansion of the first-branch pairing (times 3c^2);
// cross-checks adjoint_pairing against a second transcription.
cplx branch1_pairing_closed_form(cplx lambda, const NetworkParams& p, cplx c);

// Denominator of the internal constant b in the first-branch
// construction, reported on the scaled magnitude level; there is no
// a-priori guarantee it is nonzero at the roots, so callers check it
// numerically.
double case1_b_denominator_scale(cplx lambda, const NetworkParams& p);

} // namespace graphbeam
