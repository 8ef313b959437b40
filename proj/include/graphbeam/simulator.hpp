#pragma once

#include "graphbeam/oracle.hpp"

namespace graphbeam {

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> boundary_dissipation; // 2*beta*sum |v_j'(0)|^2
};

struct DecayEstimate {
    bool no_decay = false;
    double delta = 0.0; // state-norm decay rate
    double M = 1.0;
    double t_start = 0.0, t_end = 0.0;
    double r_squared = 0.0;
};

// Crank-Nicolson evolution of xdot = Tx on the collocation pencil.
// The trapezoidal update is applied through the pencil's spectral
// calculus, restricted to the resolved stable modes: the row-replaced
// collocation matrix carries spurious unstable modes far above the
// resolution limit, and any direct linear-solve stepping amplifies
// them from roundoff. Truncating them is a spectral filter; smooth
// initial data loses only a projection residual at roundoff level.
class Simulator {
public:
    Simulator(const NetworkParams& p, int N = 48, double dt = 1e-4);

    void set_state(const StateVector& x);
    StateVector state() const;

    void step();
    EnergyTrace run(double t_final, int sample_every = 10);

    double energy() const;
    double dissipation() const;
    double time() const { return t_; }
    double dt() const { return dt_; }
    int mode_count() const { return static_cast<int>(lambda_.size()); }
    // relative energy lost when projecting the last set_state input
    double projection_residual() const { return projection_residual_; }

private:
    NetworkParams params_;
    DiscretizedOperator op_;
    Eigen::MatrixXcd V_;       // kept eigenvectors, columns
    Eigen::VectorXcd lambda_;  // their eigenvalues
    Eigen::VectorXcd gain_;    // trapezoidal amplification per step
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> proj_;
    Eigen::MatrixXd gram_;
    Eigen::RowVectorXd slope_row_; // D1 row 0
    Eigen::VectorXcd c_;           // modal coordinates
    double projection_residual_ = 0.0;
    double dt_;
    double t_ = 0.0;
};

// Sampled initial data; throws when the state-space conditions fail.
StateVector init_state(const std::array<EdgeFn, kNumEdges>& g,
                       const std::array<EdgeFn, kNumEdges>& h, int N,
                       const NetworkParams& p);

DecayEstimate decay_fit(const EnergyTrace& trace);

} // namespace graphbeam
