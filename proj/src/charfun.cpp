#include "graphbeam/charfun.hpp"

#include <cmath>

namespace graphbeam {

namespace {

// cosh/sinh with exp(r) factored out, r >= |Re mu| so both exponents
// in the half-sum have non-positive real part.
cplx sc_cosh(cplx mu, double r) {
    return 0.5 * (std::exp(mu - r) + std::exp(-mu - r));
}
cplx sc_sinh(cplx mu, double r) {
    return 0.5 * (std::exp(mu - r) - std::exp(-mu - r));
}

cplx to_raw(cplx scaled, double log_scale) {
    // overflows to inf for large scales, by design
    return scaled * std::exp(log_scale);
}

} // namespace

CharFunValue eval_D(cplx lambda, const NetworkParams& p) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx m1 = e.mu1, m3 = e.mu3;
    const double r1 = std::abs(m1.real()), r3 = std::abs(m3.real());
    const cplx c1 = sc_cosh(m1, r1), s1 = sc_sinh(m1, r1);
    const cplx c3 = sc_cosh(m3, r3), s3 = sc_sinh(m3, r3);
    const cplx ab = p.alpha + lambda * p.beta;

    CharFunValue v;
    v.log_scale = r1 + r3;
    v.scaled = m3 * m3 * m3 * c1 * s3 - m1 * m1 * m1 * s1 * c3
             + (m3 * m3 - m1 * m1) * ab * c1 * c3;
    v.raw = to_raw(v.scaled, v.log_scale);
    return v;
}

CharFunValue eval_H(cplx lambda, const NetworkParams& p) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx m1 = e.mu1, m3 = e.mu3;
    const double r1 = std::abs(m1.real()), r3 = std::abs(m3.real());
    const cplx c1 = sc_cosh(m1, r1), s1 = sc_sinh(m1, r1);
    const cplx c3 = sc_cosh(m3, r3), s3 = sc_sinh(m3, r3);
    const cplx ab = p.alpha + lambda * p.beta;

    CharFunValue v;
    v.log_scale = r1 + r3;
    v.scaled = (m3 * m3 - m1 * m1) * s1 * s3
             + ab * (m3 * s1 * c3 - m1 * c1 * s3);
    v.raw = to_raw(v.scaled, v.log_scale);
    return v;
}

CharFunValue eval_D_alt(cplx lambda, const NetworkParams& p) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx m1 = e.mu1, m3 = e.mu3;
    const double r = std::abs(m1.real()) + std::abs(m3.real());
    // r bounds |Re(mu1 +- mu3)|, so one common scale works for all terms
    const cplx sp = sc_sinh(m1 + m3, r), sm = sc_sinh(m3 - m1, r);
    const cplx cp = sc_cosh(m1 + m3, r), cm = sc_cosh(m3 - m1, r);
    const cplx ab = p.alpha + lambda * p.beta;
    const cplx m1c = m1 * m1 * m1, m3c = m3 * m3 * m3;

    CharFunValue v;
    v.log_scale = r;
    v.scaled = (m3c - m1c) * sp + (m1c + m3c) * sm
             + (m3 * m3 - m1 * m1) * ab * (cp + cm);
    v.raw = to_raw(v.scaled, v.log_scale);
    return v;
}

cplx eval_reg(Branch b, cplx lambda, const NetworkParams& p,
              double* log_scale_out) {
    CharExponents e = char_exponents(lambda, p.gamma);
    const cplx denom_base = e.mu3 * e.mu3 - e.mu1 * e.mu1;
    CharFunValue v = (b == Branch::D) ? eval_D(lambda, p) : eval_H(lambda, p);
    cplx denom = denom_base;
    if (b == Branch::H)
        denom *= e.mu1 * e.mu3;
    if (log_scale_out)
        *log_scale_out = v.log_scale;
    return v.scaled / denom;
}

cplx eval_reg_at_scale(Branch b, cplx lambda, const NetworkParams& p,
                       double ref_log_scale) {
    double ls = 0.0;
    cplx f = eval_reg(b, lambda, p, &ls);
    return f * std::exp(ls - ref_log_scale);
}

double reg_derivative_scale(Branch b, cplx lambda, const NetworkParams& p) {
    const double h = 1e-6 * (1.0 + std::abs(lambda));
    double ls = 0.0;
    (void)eval_reg(b, lambda, p, &ls);
    cplx fp = eval_reg_at_scale(b, lambda + h, p, ls);
    cplx fm = eval_reg_at_scale(b, lambda - h, p, ls);
    return std::abs(fp - fm) / (2.0 * h);
}

bool is_zero(Branch b, cplx lambda, const NetworkParams& p) {
    cplx f = eval_reg(b, lambda, p);
    double dscale = reg_derivative_scale(b, lambda, p);
    return std::abs(f) <= 1e-9 * dscale * (1.0 + std::abs(lambda));
}

} // namespace graphbeam
