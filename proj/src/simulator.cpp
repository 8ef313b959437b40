#include "graphbeam/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace graphbeam {

Simulator::Simulator(const NetworkParams& p, int N, double dt)
    : params_(p), op_(assemble(p, N)), dt_(dt) {
    if (dt <= 0.0)
        throw std::invalid_argument("Simulator: dt must be positive");
    const int sz = op_.size();
    const ChebGrid& g = *op_.grid;
    Eigen::MatrixXd D2 = g.D1 * g.D1;
    slope_row_ = g.D1.row(0);

    // resolved stable modes; the cap tracks the grid's resolution limit
    double cap = 0.4 * static_cast<double>(N) * N;
    stable_eigenbasis(p, N, cap, V_, lambda_);
    if (lambda_.size() == 0)
        throw std::runtime_error("Simulator: empty stable eigenbasis");
    proj_.compute(V_);
    gain_.resize(lambda_.size());
    for (int i = 0; i < lambda_.size(); ++i) {
        cplx z = 0.5 * dt_ * lambda_(i);
        gain_(i) = (1.0 + z) / (1.0 - z); // trapezoidal one-step map
    }

    // energy Gram matrix: x^H G x is the squared state norm
    Eigen::MatrixXd W = g.w.asDiagonal();
    Eigen::MatrixXd Gw = D2.transpose() * W * D2 +
                         p.gamma * g.D1.transpose() * W * g.D1 +
                         p.alpha * slope_row_.transpose() * slope_row_;
    gram_ = Eigen::MatrixXd::Zero(sz, sz);
    for (int j = 0; j < kNumEdges; ++j) {
        auto ws = Eigen::seqN(2 * j * g.n, g.n);
        auto vs = Eigen::seqN((2 * j + 1) * g.n, g.n);
        gram_(ws, ws) = Gw;
        gram_(vs, vs) = W;
    }
    c_ = Eigen::VectorXcd::Zero(lambda_.size());
}

void Simulator::set_state(const StateVector& x) {
    check_state_space(x);
    Eigen::VectorXcd x0 = lift_state(op_, x);
    c_ = proj_.solve(x0);
    Eigen::VectorXcd res = x0 - V_ * c_;
    double e0 = (x0.adjoint() * gram_.cast<cplx>() * x0)(0).real();
    double er = (res.adjoint() * gram_.cast<cplx>() * res)(0).real();
    projection_residual_ = e0 > 0.0 ? er / e0 : 0.0;
    t_ = 0.0;
}

StateVector Simulator::state() const {
    Eigen::VectorXcd x_ = V_ * c_;
    StateVector x = zero_state(op_.nodes_per_edge);
    for (int j = 0; j < kNumEdges; ++j)
        for (int k = 0; k < op_.nodes_per_edge; ++k) {
            x.w[j](k) = x_(op_.w_row(j, k));
            x.v[j](k) = x_(op_.v_row(j, k));
        }
    return x;
}

void Simulator::step() {
    c_.array() *= gain_.array();
    t_ += dt_;
}

double Simulator::energy() const {
    Eigen::VectorXcd x = V_ * c_;
    return (x.adjoint() * gram_.cast<cplx>() * x)(0).real();
}

double Simulator::dissipation() const {
    Eigen::VectorXcd x = V_ * c_;
    double d = 0.0;
    const int n = op_.nodes_per_edge;
    for (int j = 0; j < kNumEdges; ++j) {
        cplx vp0 = 0.0;
        for (int k = 0; k < n; ++k)
            vp0 += slope_row_(k) * x(op_.v_row(j, k));
        d += std::norm(vp0);
    }
    return 2.0 * params_.beta * d;
}

EnergyTrace Simulator::run(double t_final, int sample_every) {
    if (sample_every < 1)
        sample_every = 1;
    EnergyTrace trace;
    auto record = [&] {
        trace.times.push_back(t_);
        trace.energy.push_back(energy());
        trace.boundary_dissipation.push_back(dissipation());
    };
    record();
    long steps = std::lround(t_final / dt_);
    for (long i = 1; i <= steps; ++i) {
        step();
        if (i % sample_every == 0 || i == steps)
            record();
    }
    return trace;
}

StateVector init_state(const std::array<EdgeFn, kNumEdges>& g,
                       const std::array<EdgeFn, kNumEdges>& h, int N,
                       const NetworkParams& p) {
    return sample_state(g, h, N, p);
}

DecayEstimate decay_fit(const EnergyTrace& trace) {
    DecayEstimate est;
    const size_t n = trace.times.size();
    if (n < 4)
        throw std::invalid_argument("decay_fit: trace too short");
    size_t i0 = n / 5; // discard the transient fifth
    double e0 = trace.energy.front();
    if (e0 <= 0.0)
        throw std::invalid_argument("decay_fit: zero initial energy");

    // least squares on 0.5 log E(t); delta is the state-norm rate
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    size_t m = 0;
    for (size_t i = i0; i < n; ++i) {
        if (trace.energy[i] <= 0.0)
            break;
        double x = trace.times[i];
        double y = 0.5 * std::log(trace.energy[i] / e0);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++m;
    }
    if (m < 3)
        throw std::runtime_error("decay_fit: energy trace not positive");
    double det = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / det;
    double icept = (sy * sxx - sx * sxy) / det;
    est.delta = -slope;
    est.M = std::exp(icept);
    est.t_start = trace.times[i0];
    est.t_end = trace.times[i0 + m - 1];
    double ssr = syy - sy * sy / m -
                 slope * slope * (sxx - sx * sx / m);
    double sst = syy - sy * sy / m;
    est.r_squared = sst > 0.0 ? 1.0 - std::max(0.0, ssr) / sst : 1.0;
    est.no_decay = est.delta <= 1e-12 ||
                   trace.energy.back() > (1.0 - 1e-9) * e0;
    return est;
}

} // namespace graphbeam
