#pragma once

#include <vector>

namespace graphbeam {

// Gauss-Legendre rule mapped to [0,1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadRule gauss_legendre(int n);

} // namespace graphbeam
