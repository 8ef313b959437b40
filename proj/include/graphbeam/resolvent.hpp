#pragma once

#include "graphbeam/state.hpp"

namespace graphbeam {

// Workspace of the explicit inverse: the double integrals, the per-edge
// 2x2 solves and the two vertex scalars.
struct ResolventWork {
    std::array<Eigen::VectorXcd, kNumEdges> Vtilde;
    std::array<cplx, kNumEdges> a;
    std::array<cplx, kNumEdges> force_const; // w'''(0) - gamma w'(0)
    cplx b_scalar{}, c_scalar{};
};

// Tx = {(v_j, -w_j'''' + gamma w_j'')}; requires the domain tag.
StateVector apply_T(const StateVector& x, const NetworkParams& p);

StateVector apply_Tinv(const StateVector& xt, const NetworkParams& p,
                       ResolventWork* work = nullptr);

// The beta = 0 inverse (skewadjoint part).
StateVector apply_T0inv(const StateVector& xt, const NetworkParams& p);

// Rank-2 correction: apply_Tinv = apply_T0inv + beta * apply_S.
StateVector apply_S(const StateVector& xt, const NetworkParams& p);

} // namespace graphbeam
