#pragma once

#include "graphbeam/rootfinding.hpp"
#include "graphbeam/state.hpp"

namespace graphbeam {

// First-order (w, v) collocation pencil B*xdot = A*x on 3 edges with
// the boundary and vertex conditions imposed by row replacement. The
// moment/friction condition couples v'(0) = d/dt w'(0), so its row has
// a nonzero B part; the remaining condition rows are static (B row 0).
struct DiscretizedOperator {
    int nodes_per_edge = 0;
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    std::shared_ptr<const ChebGrid> grid;
    double condition_estimate = 0.0;

    int size() const { return 6 * nodes_per_edge; }
    // flat layout: per edge, w block then v block
    int w_row(int edge, int k) const { return 2 * edge * nodes_per_edge + k; }
    int v_row(int edge, int k) const {
        return (2 * edge + 1) * nodes_per_edge + k;
    }
};

DiscretizedOperator assemble(const NetworkParams& p, int N);

// Dense eigensolve filtered by agreement between resolutions N and
// 3N/2; returns the k upper-half eigenvalues of smallest |Im|.
std::vector<cplx> oracle_spectrum(const NetworkParams& p, int N, int k);

struct MatchPair {
    cplx root;
    cplx oracle;
    double distance;
};

struct MultiplicityCluster {
    cplx center;
    int size;
};

struct MatchReport {
    std::vector<MatchPair> pairs;
    std::vector<cplx> unmatched_roots;
    std::vector<cplx> unmatched_oracle;
    std::vector<MultiplicityCluster> clusters;
};

MatchReport cross_validate(const SpectrumReport& report,
                           const std::vector<cplx>& oracle, double tol);

Eigen::VectorXcd lift_state(const DiscretizedOperator& op,
                            const StateVector& x);

// Eigenpairs of the pencil with |lambda| <= cap and Re lambda <= 0 (up
// to roundoff), both half-planes; the basis the simulator evolves on.
// Columns of V are the eigenvectors in the lift_state layout.
void stable_eigenbasis(const NetworkParams& p, int N, double cap,
                       Eigen::MatrixXcd& V, Eigen::VectorXcd& lambda);

} // namespace graphbeam
