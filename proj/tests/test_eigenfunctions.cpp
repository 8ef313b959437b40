#include <doctest.h>

#include "graphbeam/eigenfunctions.hpp"

#include <cmath>

using namespace graphbeam;

namespace {

NetworkParams unit_params() { return {1.0, 1.0, 1.0}; }

Eigenvalue refined(Branch b, cplx seed) {
    return newton_refine(b, seed, unit_params());
}

// frozen roots (gamma=alpha=beta=1)
const cplx kD0{-0.4445825667675626, 2.516219757266427};
const cplx kD3{-0.9900335625989395, 121.35013874752914};
const cplx kH1{-1.858330120701774, 15.206535466120119};
const cplx kH2{-1.9560179820776098, 50.08996196573993};

} // namespace

TEST_CASE("branch 1 mode satisfies the hinged end") {
    NetworkParams p = unit_params();
    EigenfunctionRep x = branch1_mode(refined(Branch::D, kD0), p);
    for (int j = 0; j < kNumEdges; ++j) {
        CHECK(std::abs(x.value(j, 1.0, 0)) < 1e-10);
        CHECK(std::abs(x.value(j, 1.0, 2)) < 1e-10);
    }
    // identical profile on all three edges
    CHECK(x.amplitude[0] == x.amplitude[1]);
    CHECK(x.amplitude[1] == x.amplitude[2]);
}

TEST_CASE("branch 1 residuals at a frozen root") {
    NetworkParams p = unit_params();
    EigenfunctionRep x = branch1_mode(refined(Branch::D, kD3), p);
    ResidualReport r = residual_report(x, p);
    CHECK(r.ode_residual <= 1e-8);
    CHECK(r.bc_residual <= 1e-8);
    CHECK(r.connectivity_residual <= 1e-8);
    CHECK(std::abs(energy_inner(x, x, p) - 1.0) < 1e-10);
}

TEST_CASE("branch 1 rejects wrong inputs") {
    NetworkParams p = unit_params();
    Eigenvalue fake;
    fake.value = kD0 + cplx{0.05, 0.0};
    fake.branch = Branch::D;
    CHECK_THROWS_AS(branch1_mode(fake, p), std::invalid_argument);
    Eigenvalue h = refined(Branch::H, kH1);
    CHECK_THROWS_AS(branch1_mode(h, p), std::invalid_argument);
}

TEST_CASE("branch 2 pair structure") {
    NetworkParams p = unit_params();
    auto [x1, x2] = branch2_modes(refined(Branch::H, kH1), p);
    // the shared scalar profile vanishes at the vertex
    CHECK(std::abs(x1.A * std::sinh(x1.mu1) + x1.B * std::sinh(x1.mu3)) <
          1e-10 * (std::abs(x1.A) + std::abs(x1.B)));
    // amplitude vectors sum to zero
    for (const EigenfunctionRep* x : {&x1, &x2}) {
        cplx s = x->amplitude[0] + x->amplitude[1] + x->amplitude[2];
        CHECK(std::abs(s) < 1e-14);
    }
    // orthogonal and normalized
    CHECK(std::abs(energy_inner(x1, x2, p)) <= 1e-10);
    CHECK(std::abs(energy_inner(x1, x1, p) - 1.0) < 1e-10);
    CHECK(std::abs(energy_inner(x2, x2, p) - 1.0) < 1e-10);
}

TEST_CASE("branch 2 residuals at a frozen root") {
    NetworkParams p = unit_params();
    auto [x1, x2] = branch2_modes(refined(Branch::H, kH2), p);
    for (const EigenfunctionRep* x : {&x1, &x2}) {
        ResidualReport r = residual_report(*x, p);
        CHECK(r.ode_residual <= 1e-8);
        CHECK(r.bc_residual <= 1e-8);
        CHECK(r.connectivity_residual <= 1e-8);
    }
}

TEST_CASE("adjoint pairing is nondegenerate") {
    NetworkParams p = unit_params();
    EigenfunctionRep d = branch1_mode(refined(Branch::D, kD0), p);
    CHECK(std::abs(adjoint_pairing(d, p)) > 1e-6);
    auto [h1a, h1b] = branch2_modes(refined(Branch::H, kH1), p);
    CHECK(std::abs(adjoint_pairing(h1a, p)) > 1e-6);
    CHECK(std::abs(adjoint_pairing(h1b, p)) > 1e-6);
}

TEST_CASE("pairing cross-check against the bracket expansion") {
    NetworkParams p = unit_params();
    for (cplx root : {kD0, kD3}) {
        Eigenvalue ev = refined(Branch::D, root);
        EigenfunctionRep x = branch1_mode(ev, p);
        cplx quad = adjoint_pairing(x, p);
        cplx closed = branch1_pairing_closed_form(ev.value, p, x.normalization);
        CHECK(std::abs(quad - closed) < 1e-8 * std::abs(closed));
    }
}

TEST_CASE("frozen bracket value at the first complex root") {
    NetworkParams p = unit_params();
    cplx ref = 3.0 * cplx{86.57945818814723, 71.70357563437240};
    cplx got = branch1_pairing_closed_form(kD0, p, 1.0);
    CHECK(std::abs(got - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("biorthogonality across eigenvalues") {
    NetworkParams p = unit_params();
    EigenfunctionRep d0 = branch1_mode(refined(Branch::D, kD0), p);
    EigenfunctionRep d3 = branch1_mode(refined(Branch::D, kD3), p);
    auto [h1a, h1b] = branch2_modes(refined(Branch::H, kH1), p);
    CHECK(std::abs(adjoint_inner(d0, d3, p)) < 1e-8);
    CHECK(std::abs(adjoint_inner(d0, h1a, p)) < 1e-8);
    CHECK(std::abs(adjoint_inner(d3, h1b, p)) < 1e-8);
    CHECK(std::abs(adjoint_inner(h1a, d0, p)) < 1e-8);
    // self-pairing does not vanish
    CHECK(std::abs(adjoint_inner(d0, d0, p)) > 1e-6);
}

TEST_CASE("case 1 internal denominator stays away from zero") {
    NetworkParams p = unit_params();
    for (cplx root : {kD0, kD3})
        CHECK(case1_b_denominator_scale(root, p) > 1e-6);
}
