#include "graphbeam/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace graphbeam {

ChebGrid cheb_grid(int n) {
    if (n < 4)
        throw std::invalid_argument("cheb_grid: need at least 4 nodes");
    const int N = n - 1;
    const double pi = std::numbers::pi;

    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j)
        x(j) = std::cos(pi * j / N);

    Eigen::VectorXd c(n);
    for (int j = 0; j < n; ++j)
        c(j) = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);

    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            D(i, j) = (i == j) ? 0.0 : (c(i) / c(j)) / (x(i) - x(j));
    for (int i = 0; i < n; ++i)
        D(i, i) = -D.row(i).sum(); // negative-sum trick

    ChebGrid g;
    g.n = n;
    g.s = (1.0 - x.array()) / 2.0; // ascending, maps d/dx to -2 d/dx
    g.D1 = -2.0 * D;
    g.D2 = g.D1 * g.D1;

    // Clenshaw-Curtis weights on [-1,1], halved for the unit interval
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    if (N % 2 == 0) {
        w(0) = w(N) = 1.0 / (N * N - 1);
        for (int i = 1; i < N; ++i) {
            double th = pi * i / N, v = 1.0;
            for (int k = 1; k <= N / 2 - 1; ++k)
                v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1);
            v -= std::cos(N * th) / (N * N - 1);
            w(i) = 2.0 * v / N;
        }
    } else {
        w(0) = w(N) = 1.0 / (N * N);
        for (int i = 1; i < N; ++i) {
            double th = pi * i / N, v = 1.0;
            for (int k = 1; k <= (N - 1) / 2; ++k)
                v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1);
            w(i) = 2.0 * v / N;
        }
    }
    g.w = 0.5 * w.reverse(); // reorder to match ascending s
    return g;
}

} // namespace graphbeam
