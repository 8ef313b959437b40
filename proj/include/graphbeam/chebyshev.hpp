#pragma once

#include <Eigen/Dense>

namespace graphbeam {

// Chebyshev-Lobatto collocation on [0,1] with n nodes, s(0)=0, s(n-1)=1.
// D1 differentiates sampled values with spectral accuracy; w are the
// matching Clenshaw-Curtis quadrature weights.
struct ChebGrid {
    int n = 0;
    Eigen::VectorXd s;
    Eigen::MatrixXd D1;
    Eigen::MatrixXd D2;
    Eigen::VectorXd w;
};

ChebGrid cheb_grid(int n);

} // namespace graphbeam
