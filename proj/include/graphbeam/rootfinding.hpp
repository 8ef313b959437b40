#pragma once

#include "graphbeam/charfun.hpp"

#include <optional>
#include <vector>

namespace graphbeam {

struct Box {
    double re_min, re_max, im_min, im_max;
    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    bool contains(cplx z, double margin = 0.0) const {
        return z.real() >= re_min - margin && z.real() <= re_max + margin &&
               z.imag() >= im_min - margin && z.imag() <= im_max + margin;
    }
};

struct Eigenvalue {
    cplx value;
    Branch branch = Branch::D;
    int index = 0;              // rank within branch, upper half, by Im
    int multiplicity = 1;       // algebraic; 1 on the D-branch, 2 on H
    double newton_residual = 0; // |last Newton step|
    cplx asymptotic_ref{0, 0};  // nearest asymptotic prediction (beta>0)
};

struct SpectrumReport {
    NetworkParams params;
    std::vector<Eigenvalue> eigenvalues; // upper half-plane, sorted by Im
    bool interlacing_ok = false;

    // upper-half list plus conjugates of the non-real entries
    std::vector<Eigenvalue> full_list() const;
};

// Winding number of the (regularized) characteristic function around
// the box boundary = number of zeros inside, with multiplicity.
int count_zeros(Branch b, Box box, const NetworkParams& p);

Eigenvalue newton_refine(Branch b, cplx seed, const NetworkParams& p);

// Large-n asymptotic predictions; requires beta > 0.
cplx asymptotic_seed(Branch b, int n, const NetworkParams& p);

// Locate and enumerate all zeros of both branches with Im up to the
// n_max seed level. re_window overrides the default real-part search
// window [-4/beta - 2, 0].
SpectrumReport compute_spectrum(const NetworkParams& p, int n_max,
                                std::optional<double> re_window_min = {});

} // namespace graphbeam
