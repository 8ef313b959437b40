#pragma once

#include "graphbeam/exponents.hpp"
#include "graphbeam/params.hpp"

namespace graphbeam {

// Value of a characteristic function with the exponential growth
// factored out: raw = scaled * exp(log_scale) whenever raw is
// representable. scaled stays finite far up the imaginary axis.
struct CharFunValue {
    cplx raw;
    cplx scaled;
    double log_scale;
};

enum class Branch { D, H };

CharFunValue eval_D(cplx lambda, const NetworkParams& p);
CharFunValue eval_H(cplx lambda, const NetworkParams& p);

// Sum/difference-angle rewrite; equals 2*D(lambda). Cross-check only.
CharFunValue eval_D_alt(cplx lambda, const NetworkParams& p);

// Single-valued entire variants used by the root finder:
//   D / (mu3^2 - mu1^2)            for the first branch,
//   H / (mu1*mu3*(mu3^2 - mu1^2))  for the second.
// The prefactors remove the non-eigenvalue zeros at lambda = +-gamma/2
// (both functions) and lambda = 0 (H only). Returned with the same
// scaled/log_scale convention, and rescaled so that
// scaled = true_value * exp(-ref_log_scale) when a reference scale is
// supplied (needed for difference quotients).
cplx eval_reg(Branch b, cplx lambda, const NetworkParams& p,
              double* log_scale_out = nullptr);
cplx eval_reg_at_scale(Branch b, cplx lambda, const NetworkParams& p,
                       double ref_log_scale);

// |f'| of the regularized function by central differences with step
// 1e-6*(1+|lambda|), on the scale exp(-log_scale(lambda)).
double reg_derivative_scale(Branch b, cplx lambda, const NetworkParams& p);

// Zero acceptance test: |scaled| <= 1e-9 * |f'|*(1+|lambda|).
bool is_zero(Branch b, cplx lambda, const NetworkParams& p);

} // namespace graphbeam
