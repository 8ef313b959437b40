#pragma once

#include "graphbeam/chebyshev.hpp"
#include "graphbeam/eigenfunctions.hpp"
#include "graphbeam/params.hpp"

#include <array>
#include <functional>
#include <memory>

namespace graphbeam {

// Sampled (w, v) data on a shared Chebyshev grid per edge.
struct StateVector {
    enum class Tag { generic, domain_of_T };

    std::shared_ptr<const ChebGrid> grid;
    std::array<Eigen::VectorXcd, kNumEdges> w;
    std::array<Eigen::VectorXcd, kNumEdges> v;
    Tag tag = Tag::generic;

    int nodes() const { return grid ? grid->n : 0; }
};

using EdgeFn = std::function<cplx(double)>;

StateVector zero_state(int N);

// Sample per-edge functions; validates state-space membership
// (w_j(1) = 0, continuity at the vertex) and upgrades the tag when the
// operator-domain conditions also hold.
StateVector sample_state(const std::array<EdgeFn, kNumEdges>& g,
                         const std::array<EdgeFn, kNumEdges>& h, int N,
                         const NetworkParams& p);

StateVector sample_mode(const EigenfunctionRep& mode, int N,
                        const NetworkParams& p);

// Throws std::invalid_argument naming the violated condition.
void check_state_space(const StateVector& x);
void check_domain(const StateVector& x, const NetworkParams& p,
                  double tol = 1e-6);

cplx state_inner(const StateVector& x, const StateVector& y,
                 const NetworkParams& p);
double state_energy(const StateVector& x, const NetworkParams& p);
double state_norm(const StateVector& x, const NetworkParams& p);

// Spectral antiderivative: (A f)(s) = integral of f from 0 to s.
Eigen::MatrixXd antiderivative_matrix(const ChebGrid& g);

} // namespace graphbeam
