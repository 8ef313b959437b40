#include "graphbeam/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace graphbeam {

namespace {

constexpr double kPi = std::numbers::pi;

// Phase increment along a segment, subdividing until each piece turns
// by less than pi/2 so no winding is lost.
double phase_delta(Branch b, cplx z1, cplx z2, cplx f1, cplx f2,
                   const NetworkParams& p, int depth) {
    double d = std::arg(f2 / f1);
    if (std::abs(d) <= kPi / 2.0)
        return d;
    if (depth > 48) // unresolvable turn means a zero is on the path
        throw std::domain_error("boundary-zero");
    cplx zm = 0.5 * (z1 + z2);
    cplx fm = eval_reg(b, zm, p);
    return phase_delta(b, z1, zm, f1, fm, p, depth + 1) +
           phase_delta(b, zm, z2, fm, f2, p, depth + 1);
}

bool boundary_too_close(Branch b, cplx z, const NetworkParams& p) {
    cplx f = eval_reg(b, z, p);
    double ds = reg_derivative_scale(b, z, p);
    return std::abs(f) < 1e-8 * ds * (1.0 + std::abs(z));
}

int count_zeros_once(Branch b, const Box& box, const NetworkParams& p) {
    const cplx corners[4] = {
        {box.re_min, box.im_min}, {box.re_max, box.im_min},
        {box.re_max, box.im_max}, {box.re_min, box.im_max}};
    // initial sampling: a handful of points per edge, denser for tall boxes
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        cplx a = corners[e], c = corners[(e + 1) % 4];
        int n0 = 8 + static_cast<int>(std::sqrt(std::abs(c - a)) * 4.0);
        cplx zprev = a, fprev = eval_reg(b, zprev, p);
        for (int k = 1; k <= n0; ++k) {
            cplx z = a + (c - a) * (static_cast<double>(k) / n0);
            cplx f = eval_reg(b, z, p);
            if (boundary_too_close(b, z, p))
                throw std::domain_error("boundary-zero");
            total += phase_delta(b, zprev, z, fprev, f, p, 0);
            zprev = z;
            fprev = f;
        }
    }
    double w = total / (2.0 * kPi);
    double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.1)
        throw std::runtime_error(
            "count_zeros: non-integer winding number; subdivide the box");
    return static_cast<int>(rounded);
}

} // namespace

int count_zeros(Branch b, Box box, const NetworkParams& p) {
    for (int nudge = 0; nudge < 5; ++nudge) {
        try {
            return count_zeros_once(b, box, p);
        } catch (const std::domain_error&) {
            double dr = 1.3e-6 * (1.0 + box.width());
            double di = 1.3e-6 * (1.0 + box.height());
            box.re_min -= dr;
            box.re_max += dr;
            box.im_min -= di;
            box.im_max += di;
        }
    }
    throw std::runtime_error("count_zeros: zero stuck on boundary after 5 nudges");
}

Eigenvalue newton_refine(Branch b, cplx seed, const NetworkParams& p) {
    cplx lam = seed;
    double last_step = 0.0;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        double ls = 0.0;
        cplx f = eval_reg(b, lam, p, &ls);
        const double h = 1e-7 * (1.0 + std::abs(lam));
        cplx fp = eval_reg_at_scale(b, lam + h, p, ls);
        cplx fm = eval_reg_at_scale(b, lam - h, p, ls);
        cplx deriv = (fp - fm) / (2.0 * h);
        if (std::abs(deriv) < 1e-300)
            throw std::runtime_error("newton_refine: derivative underflow");
        cplx step = f / deriv;
        lam -= step;
        last_step = std::abs(step);
        if (last_step <= 1e-13 * (1.0 + std::abs(lam))) {
            converged = true;
            break;
        }
    }
    if (!converged && !is_zero(b, lam, p))
        throw std::runtime_error("newton_refine: max iterations exceeded");
    if (!is_zero(b, lam, p))
        throw std::runtime_error("newton_refine: converged away from a zero");
    Eigenvalue ev;
    ev.value = lam;
    ev.branch = b;
    ev.multiplicity = (b == Branch::H) ? 2 : 1;
    ev.newton_residual = last_step;
    return ev;
}

cplx asymptotic_seed(Branch b, int n, const NetworkParams& p) {
    if (n < 0)
        throw std::invalid_argument("asymptotic_seed: n must be >= 0");
    if (!(p.beta > 0.0))
        throw std::invalid_argument("asymptotic_seed: beta must be > 0");
    double rho = (b == Branch::D) ? (n + 0.5) * kPi : (n + 0.25) * kPi;
    double re = (b == Branch::D) ? -1.0 / p.beta : -2.0 / p.beta;
    return {re, rho * rho};
}

namespace {

// Tall contours alias: the phase can slip a full turn on a kilounit
// edge even with adaptive splitting. Sum bounded-height bands instead.
int count_zeros_banded(Branch b, const Box& box, const NetworkParams& p) {
    const double band = 500.0;
    int total = 0;
    double lo = box.im_min;
    while (lo < box.im_max) {
        double hi = std::min(box.im_max, lo + band);
        total += count_zeros(b, Box{box.re_min, box.re_max, lo, hi}, p);
        lo = hi;
    }
    return total;
}

bool already_found(const std::vector<cplx>& roots, cplx z) {
    for (cplx r : roots)
        if (std::abs(r - z) <= 1e-6 * (1.0 + std::abs(z)))
            return true;
    return false;
}

// Exhaustive bisection: split until each box holds at most one zero,
// then polish with Newton.
void scan_region(Branch b, const Box& box, const NetworkParams& p,
                 std::vector<cplx>& roots, int depth = 0) {
    int n = count_zeros(b, box, p);
    if (n == 0)
        return;
    if (depth > 60)
        throw std::runtime_error("compute_spectrum: box subdivision stalled");
    if (n == 1) {
        Box cur = box;
        while (std::max(cur.width(), cur.height()) > 1e-3) {
            bool vertical = cur.height() > cur.width();
            Box lo = cur, hi = cur;
            // slightly off-center cut: midlines of symmetric boxes tend
            // to land exactly on axes that carry zeros
            if (vertical) {
                double mid = 0.5 * (cur.im_min + cur.im_max) +
                             1e-4 * cur.height();
                lo.im_max = mid;
                hi.im_min = mid;
            } else {
                double mid = 0.5 * (cur.re_min + cur.re_max) +
                             1e-4 * cur.width();
                lo.re_max = mid;
                hi.re_min = mid;
            }
            cur = (count_zeros(b, lo, p) == 1) ? lo : hi;
        }
        cplx center{0.5 * (cur.re_min + cur.re_max),
                    0.5 * (cur.im_min + cur.im_max)};
        Eigenvalue ev = newton_refine(b, center, p);
        if (box.contains(ev.value, 1e-6) && !already_found(roots, ev.value))
            roots.push_back(ev.value);
        return;
    }
    Box lo = box, hi = box;
    if (box.height() > box.width()) {
        double mid = 0.5 * (box.im_min + box.im_max) + 1e-4 * box.height();
        lo.im_max = mid;
        hi.im_min = mid;
    } else {
        double mid = 0.5 * (box.re_min + box.re_max) + 1e-4 * box.width();
        lo.re_max = mid;
        hi.re_min = mid;
    }
    scan_region(b, lo, p, roots, depth + 1);
    scan_region(b, hi, p, roots, depth + 1);
}

} // namespace

std::vector<Eigenvalue> SpectrumReport::full_list() const {
    std::vector<Eigenvalue> out = eigenvalues;
    for (const Eigenvalue& ev : eigenvalues) {
        if (std::abs(ev.value.imag()) <= 1e-9)
            continue;
        Eigenvalue c = ev;
        c.value = std::conj(ev.value);
        c.index = -ev.index;
        c.asymptotic_ref = std::conj(ev.asymptotic_ref);
        out.push_back(c);
    }
    return out;
}

SpectrumReport compute_spectrum(const NetworkParams& p, int n_max,
                                std::optional<double> re_window_min) {
    p.validate();
    SpectrumReport rep;
    rep.params = p;

    const bool seeded = p.beta > 0.0;
    const double re_lo =
        re_window_min.value_or(seeded ? -4.0 / p.beta - 2.0 : -2.0);
    const double re_hi = seeded ? 1e-6 : 2.0;
    const double im_cap = std::pow((n_max + 0.75) * kPi, 2);

    for (Branch b : {Branch::D, Branch::H}) {
        std::vector<cplx> roots;
        if (seeded) {
            for (int n = 0; n <= n_max; ++n) {
                try {
                    Eigenvalue ev = newton_refine(b, asymptotic_seed(b, n, p), p);
                    if (ev.value.imag() >= -0.5 && ev.value.imag() <= im_cap &&
                        !already_found(roots, ev.value))
                        roots.push_back(ev.value);
                } catch (const std::runtime_error&) {
                    // low-index seeds may miss their basin; the box scan
                    // below picks those roots up
                }
            }
        }

        Box full{re_lo, re_hi, -0.5, im_cap};
        int expected = count_zeros_banded(b, full, p);
        int have = 0;
        for (cplx r : roots)
            if (full.contains(r))
                ++have;
        if (have < expected) {
            // exhaustive sweep of the low-frequency region first; extend
            // upward only if still short
            double low_cap = seeded ? std::min(im_cap, std::pow(1.75 * kPi, 2))
                                    : im_cap;
            scan_region(b, Box{re_lo, re_hi, -0.5, low_cap}, p, roots);
            have = 0;
            for (cplx r : roots)
                if (full.contains(r))
                    ++have;
            if (have < expected)
                scan_region(b, full, p, roots);
            have = 0;
            for (cplx r : roots)
                if (full.contains(r))
                    ++have;
        }
        if (have != expected)
            throw std::runtime_error(
                "compute_spectrum: contour count does not match located roots");

        for (cplx r : roots) {
            if (r.imag() < -1e-9)
                continue; // conjugates are implied
            Eigenvalue ev;
            ev.value = r;
            ev.branch = b;
            ev.newton_residual = 0.0;
            // zero order from a tight contour; algebraic multiplicity is
            // doubled on the H-branch (two independent amplitude vectors)
            double hw = std::max(1e-3, 1e-6 * std::abs(r));
            int order = count_zeros(
                b, Box{r.real() - hw, r.real() + hw, r.imag() - hw, r.imag() + hw},
                p);
            ev.multiplicity = (b == Branch::H) ? 2 * order : order;
            if (seeded) {
                cplx best = asymptotic_seed(b, 0, p);
                for (int n = 1; n <= n_max + 1; ++n) {
                    cplx s = asymptotic_seed(b, n, p);
                    if (std::abs(s.imag() - r.imag()) <
                        std::abs(best.imag() - r.imag()))
                        best = s;
                }
                ev.asymptotic_ref = best;
            } else {
                ev.asymptotic_ref = {std::nan(""), std::nan("")};
            }
            rep.eigenvalues.push_back(ev);
        }
    }

    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const Eigenvalue& a, const Eigenvalue& c) {
                  if (std::abs(a.value.imag() - c.value.imag()) <= 1e-10)
                      return a.branch == Branch::H && c.branch == Branch::D;
                  return a.value.imag() < c.value.imag();
              });
    int idxD = 0, idxH = 0;
    for (Eigenvalue& ev : rep.eigenvalues)
        ev.index = (ev.branch == Branch::D) ? idxD++ : idxH++;

    // exact ordering check: Im h[n] < Im d[n] < Im h[n+1]
    std::vector<double> ds, hs;
    for (const Eigenvalue& ev : rep.eigenvalues)
        (ev.branch == Branch::D ? ds : hs).push_back(ev.value.imag());
    bool ok = !ds.empty() && !hs.empty();
    for (size_t n = 0; ok && n < ds.size(); ++n) {
        if (n < hs.size() && !(hs[n] < ds[n]))
            ok = false;
        if (n + 1 < hs.size() && !(ds[n] < hs[n + 1]))
            ok = false;
    }
    rep.interlacing_ok = ok;
    return rep;
}

} // namespace graphbeam
