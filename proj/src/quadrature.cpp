#include "graphbeam/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace graphbeam {

QuadRule gauss_legendre(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-angle estimate
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        double wgt = 2.0 / ((1.0 - x * x) * pp * pp);
        q.nodes[i] = 0.5 * (1.0 - x);
        q.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        q.weights[i] = 0.5 * wgt;
        q.weights[n - 1 - i] = 0.5 * wgt;
    }
    return q;
}

} // namespace graphbeam
