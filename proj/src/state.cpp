#include "graphbeam/state.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace graphbeam {

namespace {

std::shared_ptr<const ChebGrid> shared_grid(int N) {
    static std::map<int, std::shared_ptr<const ChebGrid>> cache;
    auto it = cache.find(N);
    if (it == cache.end())
        it = cache.emplace(N, std::make_shared<ChebGrid>(cheb_grid(N))).first;
    return it->second;
}

double state_scale(const StateVector& x) {
    double m = 0.0;
    for (int j = 0; j < kNumEdges; ++j)
        m = std::max({m, x.w[j].cwiseAbs().maxCoeff(),
                      x.v[j].cwiseAbs().maxCoeff()});
    return std::max(m, 1e-300);
}

} // namespace

StateVector zero_state(int N) {
    StateVector x;
    x.grid = shared_grid(N);
    for (int j = 0; j < kNumEdges; ++j) {
        x.w[j] = Eigen::VectorXcd::Zero(N);
        x.v[j] = Eigen::VectorXcd::Zero(N);
    }
    return x;
}

void check_state_space(const StateVector& x) {
    double scale = state_scale(x);
    for (int j = 0; j < kNumEdges; ++j) {
        if (std::abs(x.w[j](x.nodes() - 1)) > 1e-10 * scale)
            throw std::invalid_argument("state: w(1) = 0 violated");
        if (std::abs(x.w[j](0) - x.w[0](0)) > 1e-10 * scale)
            throw std::invalid_argument("state: vertex continuity violated");
    }
}

void check_domain(const StateVector& x, const NetworkParams& p, double tol) {
    check_state_space(x);
    const ChebGrid& g = *x.grid;
    const int n = g.n;
    double scale = state_scale(x);
    Eigen::MatrixXcd D1 = g.D1.cast<cplx>(), D2 = (g.D1 * g.D1).cast<cplx>();
    Eigen::MatrixXcd D3 = D2 * D1;
    cplx force = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        Eigen::VectorXcd w1 = D1 * x.w[j], w2 = D1 * w1;
        Eigen::VectorXcd v1 = D1 * x.v[j];
        if (std::abs(w2(n - 1)) > tol * scale * g.D2.norm() / n)
            throw std::invalid_argument("state: w''(1) = 0 violated");
        cplx moment = w2(0) - p.alpha * w1(0) - p.beta * v1(0);
        if (std::abs(moment) > tol * scale * g.D2.norm() / n)
            throw std::invalid_argument("state: moment/friction condition violated");
        force += (D3 * x.w[j])(0) - p.gamma * w1(0);
        if (std::abs(x.v[j](n - 1)) > 1e-8 * scale)
            throw std::invalid_argument("state: v(1) = 0 violated");
    }
    if (std::abs(force) > tol * scale * g.D2.norm())
        throw std::invalid_argument("state: force balance violated");
}

StateVector sample_state(const std::array<EdgeFn, kNumEdges>& g,
                         const std::array<EdgeFn, kNumEdges>& h, int N,
                         const NetworkParams& p) {
    StateVector x = zero_state(N);
    for (int j = 0; j < kNumEdges; ++j)
        for (int k = 0; k < N; ++k) {
            double s = x.grid->s(k);
            x.w[j](k) = g[j](s);
            x.v[j](k) = h[j](s);
        }
    check_state_space(x);
    try {
        check_domain(x, p);
        x.tag = StateVector::Tag::domain_of_T;
    } catch (const std::invalid_argument&) {
        x.tag = StateVector::Tag::generic;
    }
    return x;
}

StateVector sample_mode(const EigenfunctionRep& mode, int N,
                        const NetworkParams& p) {
    StateVector x = zero_state(N);
    for (int j = 0; j < kNumEdges; ++j)
        for (int k = 0; k < N; ++k) {
            double s = x.grid->s(k);
            x.w[j](k) = mode.value(j, s, 0);
            x.v[j](k) = mode.lambda * mode.value(j, s, 0);
        }
    x.tag = StateVector::Tag::domain_of_T;
    (void)p;
    return x;
}

cplx state_inner(const StateVector& x, const StateVector& y,
                 const NetworkParams& p) {
    if (!x.grid || !y.grid || x.nodes() != y.nodes())
        throw std::invalid_argument("state_inner: grid mismatch");
    const ChebGrid& g = *x.grid;
    Eigen::MatrixXcd D1 = g.D1.cast<cplx>();
    Eigen::VectorXcd cw = g.w.cast<cplx>();
    cplx total = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        Eigen::VectorXcd xw1 = D1 * x.w[j], yw1 = D1 * y.w[j];
        Eigen::VectorXcd xw2 = D1 * xw1, yw2 = D1 * yw1;
        total += (xw2.array() * yw2.conjugate().array() * cw.array()).sum();
        total += p.gamma *
                 (xw1.array() * yw1.conjugate().array() * cw.array()).sum();
        total += (x.v[j].array() * y.v[j].conjugate().array() * cw.array()).sum();
        total += p.alpha * xw1(0) * std::conj(yw1(0));
    }
    return total;
}

double state_energy(const StateVector& x, const NetworkParams& p) {
    return state_inner(x, x, p).real();
}

double state_norm(const StateVector& x, const NetworkParams& p) {
    return std::sqrt(std::max(0.0, state_energy(x, p)));
}

Eigen::MatrixXd antiderivative_matrix(const ChebGrid& g) {
    Eigen::MatrixXd A = g.D1;
    A.row(0).setZero();
    A(0, 0) = 1.0; // pin the constant: antiderivative vanishes at s = 0
    Eigen::MatrixXd M = A.inverse();
    M.col(0).setZero(); // drop the pinned value's contribution
    return M;
}

} // namespace graphbeam
