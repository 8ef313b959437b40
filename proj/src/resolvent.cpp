#include "graphbeam/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace graphbeam {

namespace {

struct VertexConstants {
    double q;        // sqrt(gamma)
    double sh, ch;   // sinh q, cosh q
    double Is;       // int_0^1 (1-r) sinh(qr) dr
    double Ic;       // int_0^1 (1-r) cosh(qr) dr
    double denom;    // gamma sinh q + alpha q sqrt... see below
};

VertexConstants vertex_constants(const NetworkParams& p) {
    VertexConstants c;
    c.q = std::sqrt(p.gamma);
    c.sh = std::sinh(c.q);
    c.ch = std::cosh(c.q);
    c.Is = c.sh / (c.q * c.q) - 1.0 / c.q;
    c.Ic = (c.ch - 1.0) / (c.q * c.q);
    c.denom = p.gamma * c.sh + p.alpha * c.q * c.ch;
    return c;
}

// particular solution kernel: (1/q) int_s^1 (1-r) sinh(q(s-r)) dr
double fconst_kernel(double q, double s) {
    double L = 1.0 - s;
    return L / (q * q) - std::sinh(q * L) / (q * q * q);
}

} // namespace

StateVector apply_T(const StateVector& x, const NetworkParams& p) {
    check_domain(x, p);
    const ChebGrid& g = *x.grid;
    Eigen::MatrixXcd D2 = (g.D1 * g.D1).cast<cplx>();
    Eigen::MatrixXcd D4 = (D2 * D2);
    StateVector y = zero_state(g.n);
    for (int j = 0; j < kNumEdges; ++j) {
        y.w[j] = x.v[j];
        y.v[j] = -(D4 * x.w[j]) + p.gamma * (D2 * x.w[j]);
    }
    y.tag = StateVector::Tag::generic;
    return y;
}

StateVector apply_Tinv(const StateVector& xt, const NetworkParams& p,
                       ResolventWork* work) {
    p.validate();
    check_state_space(xt);
    const ChebGrid& g = *xt.grid;
    const int n = g.n;
    const VertexConstants vc = vertex_constants(p);
    const double q = vc.q;

    Eigen::MatrixXcd J = antiderivative_matrix(g).cast<cplx>();
    Eigen::MatrixXcd D1 = g.D1.cast<cplx>();
    Eigen::VectorXd cw = g.w;

    Eigen::VectorXd shqr(n), chqr(n);
    for (int k = 0; k < n; ++k) {
        shqr(k) = std::sinh(q * g.s(k));
        chqr(k) = std::cosh(q * g.s(k));
    }

    ResolventWork wk;
    std::array<cplx, kNumEdges> T1, T2, Vt0, wt_p0;
    cplx sumT1 = 0.0, b_num = 0.0;
    for (int j = 0; j < kNumEdges; ++j) {
        // Vtilde(s) = -int_s^1 dt int_0^t vtilde(r) dr
        Eigen::VectorXcd P = J * xt.v[j];
        Eigen::VectorXcd P2 = J * P;
        wk.Vtilde[j] = P2.array() - P2(n - 1);
        Vt0[j] = wk.Vtilde[j](0);
        wt_p0[j] = (D1 * xt.w[j])(0);
        T1[j] = (wk.Vtilde[j].array() * shqr.cast<cplx>().array() *
                 cw.cast<cplx>().array())
                    .sum();
        T2[j] = (wk.Vtilde[j].array() *
                 (q * shqr + p.alpha * chqr).cast<cplx>().array() *
                 cw.cast<cplx>().array())
                    .sum();
        sumT1 += T1[j];
        b_num += Vt0[j] + p.beta * wt_p0[j] + T2[j];
    }
    wk.b_scalar = b_num / vc.denom;
    wk.c_scalar = (wk.b_scalar * vc.sh - sumT1 / q) / 3.0;

    // per-edge 2x2 systems for a_j and the force constant
    const double a11 = q * vc.sh, a12 = -vc.Is;
    const double a21 = vc.denom, a22 = -(vc.sh / q + p.alpha * vc.Ic);
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12 * (std::abs(a11 * a22) + std::abs(a12 * a21) + 1.0))
        throw std::runtime_error("apply_Tinv: singular vertex system");

    StateVector x = zero_state(n);
    for (int j = 0; j < kNumEdges; ++j) {
        cplx r1 = q * wk.c_scalar + T1[j];
        cplx r2 = T2[j] + Vt0[j] + p.beta * wt_p0[j];
        wk.a[j] = (r1 * a22 - a12 * r2) / det;
        wk.force_const[j] = (a11 * r2 - r1 * a21) / det;

        // cumulative integrals for the convolution kernel
        Eigen::VectorXcd C =
            J * (chqr.array().cast<cplx>() * wk.Vtilde[j].array()).matrix();
        Eigen::VectorXcd S =
            J * (shqr.array().cast<cplx>() * wk.Vtilde[j].array()).matrix();
        for (int k = 0; k < n; ++k) {
            double s = g.s(k);
            cplx conv = (std::sinh(q * s) * (C(n - 1) - C(k)) -
                         std::cosh(q * s) * (S(n - 1) - S(k))) /
                        q;
            x.w[j](k) = wk.a[j] * std::sinh(q * (1.0 - s)) +
                        wk.force_const[j] * fconst_kernel(q, s) + conv;
        }
        x.v[j] = xt.w[j];
    }
    x.tag = StateVector::Tag::domain_of_T;
    if (work)
        *work = wk;
    return x;
}

StateVector apply_T0inv(const StateVector& xt, const NetworkParams& p) {
    NetworkParams p0 = p;
    p0.beta = 0.0;
    return apply_Tinv(xt, p0);
}

StateVector apply_S(const StateVector& xt, const NetworkParams& p) {
    p.validate();
    check_state_space(xt);
    const ChebGrid& g = *xt.grid;
    const int n = g.n;
    const VertexConstants vc = vertex_constants(p);
    const double q = vc.q;
    Eigen::MatrixXcd D1 = g.D1.cast<cplx>();

    cplx sum_slopes = 0.0;
    std::array<cplx, kNumEdges> wt_p0;
    for (int j = 0; j < kNumEdges; ++j) {
        wt_p0[j] = (D1 * xt.w[j])(0);
        sum_slopes += wt_p0[j];
    }
    cplx b_w = sum_slopes / vc.denom;
    cplx c_w = b_w * vc.sh / 3.0;

    // the beta-coefficient rows of the vertex system
    const double a11 = q * vc.sh, a12 = -vc.Is;
    const double a21 = p.alpha * vc.ch, a22 = -(p.alpha * vc.Ic + 1.0) / q;
    const double det = a11 * a22 - a12 * a21;

    StateVector y = zero_state(n);
    for (int j = 0; j < kNumEdges; ++j) {
        cplx F12 = q * c_w;
        cplx F22 = wt_p0[j] / q - q * c_w;
        cplx aj = (F12 * a22 - a12 * F22) / det;
        cplx fj = (a11 * F22 - F12 * a21) / det;
        for (int k = 0; k < n; ++k) {
            double s = g.s(k);
            y.w[j](k) =
                aj * std::sinh(q * (1.0 - s)) + fj * fconst_kernel(q, s);
        }
        // v-part of the correction vanishes: v_j = wtilde_j sits in T0^-1
    }
    y.tag = StateVector::Tag::generic;
    return y;
}

} // namespace graphbeam
