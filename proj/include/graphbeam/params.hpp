#pragma once

#include <complex>
#include <stdexcept>

namespace graphbeam {

using cplx = std::complex<double>;

// Physical parameters of the star-graph beam network: tension gamma,
// vertex elasticity alpha, vertex friction beta.
struct NetworkParams {
    double gamma = 1.0;
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const {
        if (!(gamma > 0.0))
            throw std::invalid_argument("NetworkParams: gamma must be > 0");
        if (alpha < 0.0)
            throw std::invalid_argument("NetworkParams: alpha must be >= 0");
        if (beta < 0.0)
            throw std::invalid_argument("NetworkParams: beta must be >= 0");
    }
};

constexpr int kNumEdges = 3;

} // namespace graphbeam
