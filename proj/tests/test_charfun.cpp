#include <doctest.h>

#include "graphbeam/charfun.hpp"

#include <cmath>
#include <numbers>

using namespace graphbeam;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

NetworkParams unit_params() { return {1.0, 1.0, 1.0}; }
}

TEST_CASE("D reduction in the gamma->0 limit") {
    // at gamma=alpha=beta=0 and lambda=i*pi^2: D = pi^3 * sinh(pi)
    NetworkParams p{0.0, 0.0, 0.0};
    CharFunValue d = eval_D(I * pi * pi, p);
    CHECK(std::abs(d.raw - 358.0834078198017) < 1e-10 * 358.0);
    // H vanishes there: sinh(i*pi) = 0
    CharFunValue h = eval_H(I * pi * pi, p);
    CHECK(std::abs(h.scaled) < 1e-12 * std::abs(d.scaled));
}

TEST_CASE("frozen scaled values at default parameters") {
    NetworkParams p = unit_params();
    {
        CharFunValue d = eval_D(cplx{-1.0, std::pow(1.5 * pi, 2)}, p);
        cplx ref{2.026491715067011, 16.944373092757452};
        CHECK(std::abs(d.log_scale - 4.874137137892160) < 1e-9);
        CHECK(std::abs(d.scaled - ref) < 1e-10 * std::abs(ref));
    }
    {
        CharFunValue h = eval_H(cplx{-2.0, std::pow(1.25 * pi, 2)}, p);
        cplx ref{0.8265312015374303, 0.6710101836263365};
        CHECK(std::abs(h.log_scale - 4.257062960587737) < 1e-9);
        CHECK(std::abs(h.scaled - ref) < 1e-10 * std::abs(ref));
    }
}

TEST_CASE("conjugation symmetry") {
    NetworkParams p = unit_params();
    for (cplx lam : {cplx{-1.0, 22.0}, cplx{-0.4, 2.5}, cplx{-2.0, 140.0}}) {
        CharFunValue d = eval_D(lam, p), dc = eval_D(std::conj(lam), p);
        CHECK(std::abs(dc.scaled - std::conj(d.scaled)) <
              1e-12 * std::abs(d.scaled));
        CHECK(dc.log_scale == doctest::Approx(d.log_scale).epsilon(1e-12));
        CharFunValue h = eval_H(lam, p), hc = eval_H(std::conj(lam), p);
        CHECK(std::abs(hc.scaled - std::conj(h.scaled)) <
              1e-12 * std::abs(h.scaled));
    }
}

TEST_CASE("raw agrees with scaled*exp(log_scale)") {
    NetworkParams p = unit_params();
    for (int k = 0; k < 25; ++k) {
        cplx lam{-2.0 + 0.13 * k, 1.0 + 2.0 * k};
        for (const CharFunValue& f : {eval_D(lam, p), eval_H(lam, p)}) {
            cplx rebuilt = f.scaled * std::exp(f.log_scale);
            CHECK(std::isfinite(f.raw.real()));
            CHECK(std::abs(f.raw - rebuilt) < 1e-10 * std::abs(f.raw));
        }
    }
}

TEST_CASE("scaled value stays finite far up the axis") {
    NetworkParams p = unit_params();
    for (double im : {1e4, 1e5, 1e6}) {
        CharFunValue d = eval_D(cplx{-1.0, im}, p);
        CharFunValue h = eval_H(cplx{-2.0, im}, p);
        CHECK(std::isfinite(std::abs(d.scaled)));
        CHECK(std::isfinite(std::abs(h.scaled)));
        CHECK(std::abs(d.scaled) > 0.0);
        CHECK(std::abs(h.scaled) > 0.0);
    }
}

TEST_CASE("alternate D form equals 2D") {
    NetworkParams p = unit_params();
    for (int k = 0; k < 20; ++k) {
        cplx lam{-1.5 + 0.1 * k, 0.5 + 3.1 * k};
        CharFunValue d = eval_D(lam, p);
        CharFunValue alt = eval_D_alt(lam, p);
        cplx a = alt.scaled * std::exp(alt.log_scale - d.log_scale);
        CHECK(std::abs(a - 2.0 * d.scaled) < 1e-10 * std::abs(d.scaled));
    }
    {
        NetworkParams p0{1.0, 0.0, 0.0};
        cplx lam = I * std::pow(0.5 * pi, 2);
        CharFunValue d = eval_D(lam, p0);
        CharFunValue alt = eval_D_alt(lam, p0);
        CHECK(std::abs(alt.raw - 2.0 * d.raw) <
              1e-10 * std::max(1.0, std::abs(d.raw)));
    }
    {
        cplx lam{-1.0, 1e4};
        CharFunValue d = eval_D(lam, p);
        CharFunValue alt = eval_D_alt(lam, p);
        cplx a = alt.scaled * std::exp(alt.log_scale - d.log_scale);
        CHECK(std::abs(a - 2.0 * d.scaled) < 1e-8 * std::abs(d.scaled));
    }
}

TEST_CASE("regularized variants and the zero test") {
    NetworkParams p = unit_params();
    // frozen roots of both branches
    const cplx d0{-0.4445825667675626, 2.516219757266427};
    const cplx h1{-1.858330120701774, 15.206535466120119};
    CHECK(is_zero(Branch::D, d0, p));
    CHECK(is_zero(Branch::H, h1, p));
    CHECK_FALSE(is_zero(Branch::D, d0 + cplx{0.01, 0.0}, p));
    CHECK_FALSE(is_zero(Branch::H, d0, p));

    // the removed prefactor zeros at lambda = +-gamma/2 (and 0 for H)
    // are not zeros of the regularized functions; probe just outside
    // the confluent-exponent guard band
    for (cplx lam : {cplx{0.5001, 0.0}, cplx{-0.5001, 0.0}}) {
        CHECK_FALSE(is_zero(Branch::D, lam, p));
        CHECK_FALSE(is_zero(Branch::H, lam, p));
    }
    CHECK_FALSE(is_zero(Branch::H, cplx{0.0, 0.0}, p));

    // scale-referenced evaluation matches the free evaluation
    double ls = 0.0;
    cplx f = eval_reg(Branch::D, cplx{-1.0, 30.0}, p, &ls);
    cplx g = eval_reg_at_scale(Branch::D, cplx{-1.0, 30.0}, p, ls);
    CHECK(std::abs(f - g) < 1e-13 * std::abs(f));
    // shifting the reference scale rescales the value accordingly
    cplx g2 = eval_reg_at_scale(Branch::D, cplx{-1.0, 30.0}, p, ls + 1.0);
    CHECK(std::abs(g2 * std::exp(1.0) - f) < 1e-10 * std::abs(f));
}

TEST_CASE("derivative scale is positive near the spectrum") {
    NetworkParams p = unit_params();
    CHECK(reg_derivative_scale(Branch::D, cplx{-0.44, 2.5}, p) > 0.0);
    CHECK(reg_derivative_scale(Branch::H, cplx{-1.86, 15.2}, p) > 0.0);
}
