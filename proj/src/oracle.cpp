#include "graphbeam/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace graphbeam {

namespace {

std::shared_ptr<const ChebGrid> make_grid(int N) {
    return std::make_shared<ChebGrid>(cheb_grid(N));
}

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// first derivative on the ascending unit-interval Lobatto grid, same
// convention as cheb_grid but at the requested precision
template <class Scalar>
Mat<Scalar> cheb_d1(int n) {
    const Scalar pi = std::acos(Scalar(-1));
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n), c(n);
    for (int j = 0; j < n; ++j) {
        x(j) = std::cos(pi * Scalar(j) / Scalar(n - 1));
        c(j) = ((j == 0 || j == n - 1) ? Scalar(2) : Scalar(1)) *
               ((j % 2) ? Scalar(-1) : Scalar(1));
    }
    Mat<Scalar> D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            D(i, j) = (i == j) ? Scalar(0) : (c(i) / c(j)) / (x(i) - x(j));
    for (int i = 0; i < n; ++i)
        D(i, i) = -D.row(i).sum();
    return Scalar(-2) * D;
}

template <class Scalar>
void assemble_pencil(const NetworkParams& p, int N, Mat<Scalar>& A,
                     Mat<Scalar>& B) {
    Mat<Scalar> D1 = cheb_d1<Scalar>(N);
    Mat<Scalar> D2 = D1 * D1, D3 = D2 * D1, D4 = D2 * D2;
    Mat<Scalar> L = -D4 + Scalar(p.gamma) * D2;

    const int sz = 6 * N;
    A = Mat<Scalar>::Zero(sz, sz);
    B = Mat<Scalar>::Identity(sz, sz);

    auto w_row = [&](int j, int k) { return 2 * j * N + k; };
    auto v_row = [&](int j, int k) { return (2 * j + 1) * N + k; };
    auto wseg = [&](int j) { return Eigen::seqN(2 * j * N, N); };
    auto vseg = [&](int j) { return Eigen::seqN((2 * j + 1) * N, N); };
    auto clear = [&](int r) {
        A.row(r).setZero();
        B.row(r).setZero();
    };

    for (int j = 0; j < kNumEdges; ++j) {
        A(wseg(j), vseg(j)) = Mat<Scalar>::Identity(N, N);
        A(vseg(j), wseg(j)) = L;
    }
    for (int j = 0; j < kNumEdges; ++j) {
        int r = w_row(j, N - 1); // w(1) = 0
        clear(r);
        A(r, w_row(j, N - 1)) = Scalar(1);
        r = w_row(j, N - 2); // w''(1) = 0
        clear(r);
        A.row(r)(wseg(j)) = D2.row(N - 1);
        r = w_row(j, 0); // moment row, dynamic via B
        clear(r);
        A.row(r)(wseg(j)) = D2.row(0) - Scalar(p.alpha) * D1.row(0);
        B.row(r)(wseg(j)) = Scalar(p.beta) * D1.row(0);
        r = v_row(j, N - 1); // v(1) = 0
        clear(r);
        A(r, v_row(j, N - 1)) = Scalar(1);
    }
    for (int j = 1; j < kNumEdges; ++j) { // vertex continuity
        int r = w_row(j, 1);
        clear(r);
        A(r, w_row(j, 0)) = Scalar(1);
        A(r, w_row(0, 0)) = Scalar(-1);
    }
    { // force balance
        int r = w_row(0, 1);
        clear(r);
        for (int j = 0; j < kNumEdges; ++j)
            A.row(r)(wseg(j)) += D3.row(0) - Scalar(p.gamma) * D1.row(0);
    }
}

// two-sided diagonal scaling; pencil eigenvalues are invariant and
// eigenvectors transform by the accumulated column scaling
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> equilibrate(Mat<Scalar>& A,
                                                     Mat<Scalar>& B) {
    const int sz = static_cast<int>(A.rows());
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col_scale =
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Ones(sz);
    for (int sweep = 0; sweep < 6; ++sweep) {
        for (int r = 0; r < sz; ++r) {
            Scalar m = std::sqrt(A.row(r).cwiseAbs().maxCoeff() +
                                 B.row(r).cwiseAbs().maxCoeff());
            A.row(r) /= m;
            B.row(r) /= m;
        }
        for (int c = 0; c < sz; ++c) {
            Scalar m = std::sqrt(A.col(c).cwiseAbs().maxCoeff() +
                                 B.col(c).cwiseAbs().maxCoeff());
            A.col(c) /= m;
            B.col(c) /= m;
            col_scale(c) /= m;
        }
    }
    return col_scale;
}

} // namespace

DiscretizedOperator assemble(const NetworkParams& p, int N) {
    p.validate();
    if (N < 16)
        throw std::invalid_argument("assemble: N must be at least 16");

    DiscretizedOperator op;
    op.nodes_per_edge = N;
    op.grid = make_grid(N);
    assemble_pencil<double>(p, N, op.A, op.B);
    const int sz = 6 * N;

    // Conditioning of the pencil at the shift 1+i (never an eigenvalue:
    // the spectrum sits in the closed left half-plane). Ruiz equilibration
    // strips the pure magnitude spread of the high-order derivative rows.
    Eigen::MatrixXcd M = op.A.cast<cplx>() - cplx(1.0, 1.0) * op.B.cast<cplx>();
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (int r = 0; r < sz; ++r)
            M.row(r) /= std::sqrt(M.row(r).cwiseAbs().maxCoeff());
        for (int c = 0; c < sz; ++c)
            M.col(c) /= std::sqrt(M.col(c).cwiseAbs().maxCoeff());
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(M);
    Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
    op.condition_estimate = diag.maxCoeff() / std::max(diag.minCoeff(), 1e-300);
    if (op.condition_estimate > 1e12)
        throw std::runtime_error(
            "assemble: pencil too ill-conditioned; reduce N");
    return op;
}

namespace {

std::vector<cplx> raw_spectrum(const NetworkParams& p, int N) {
    // assemble() first for the conditioning guard; the actual solve runs
    // in extended precision on the equilibrated pencil, where the D-branch
    // eigenvalues (the ones the force-balance row touches) keep ~9 digits
    assemble(p, N);
    using ld = long double;
    Mat<ld> A, B;
    assemble_pencil<ld>(p, N, A, B);
    equilibrate(A, B);
    Eigen::GeneralizedEigenSolver<Mat<ld>> ges;
    ges.compute(A, B, false);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("oracle_spectrum: eigensolve failed");
    std::vector<cplx> out;
    for (int i = 0; i < ges.alphas().size(); ++i) {
        std::complex<ld> a = ges.alphas()(i);
        ld b = ges.betas()(i);
        if (std::abs(b) < 1e-300L)
            continue;
        std::complex<ld> laml = a / b;
        cplx lam(static_cast<double>(laml.real()),
                 static_cast<double>(laml.imag()));
        // the slack boundary nodes of the row-replaced pencil produce
        // exact zero eigenvalues; drop them with the infinities
        if (std::isfinite(lam.real()) && std::isfinite(lam.imag()) &&
            std::abs(lam) < 1e7 && std::abs(lam) > 1e-8)
            out.push_back(lam);
    }
    return out;
}

} // namespace

std::vector<cplx> oracle_spectrum(const NetworkParams& p, int N, int k) {
    if (k > N / 2)
        throw std::invalid_argument(
            "oracle_spectrum: k beyond the resolved range (k <= N/2)");
    std::vector<cplx> coarse = raw_spectrum(p, N);
    std::vector<cplx> fine = raw_spectrum(p, (3 * N) / 2);

    auto upper = [](std::vector<cplx>& v) {
        std::erase_if(v, [](cplx z) { return z.imag() < -1e-8; });
        std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
            return std::abs(a.imag()) < std::abs(b.imag());
        });
    };
    upper(coarse);
    upper(fine);

    std::vector<bool> used(fine.size(), false);
    std::vector<cplx> accepted;
    for (cplx z : coarse) {
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < fine.size(); ++i) {
            if (used[i])
                continue;
            double d = std::abs(fine[i] - z);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0 && bd <= 1e-6) {
            used[best] = true;
            accepted.push_back(fine[best]); // finer value is the better one
        }
    }
    std::sort(accepted.begin(), accepted.end(), [](cplx a, cplx b) {
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    if (static_cast<int>(accepted.size()) > k)
        accepted.resize(k);
    return accepted;
}

MatchReport cross_validate(const SpectrumReport& report,
                           const std::vector<cplx>& oracle, double tol) {
    MatchReport mr;
    // expand rootfinder list by multiplicity so clusters pair one-to-one
    std::vector<cplx> roots;
    for (const Eigenvalue& ev : report.eigenvalues)
        for (int m = 0; m < ev.multiplicity; ++m)
            roots.push_back(ev.value);

    std::vector<bool> used(roots.size(), false);
    for (cplx z : oracle) {
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (used[i])
                continue;
            double d = std::abs(roots[i] - z);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0 && bd <= tol) {
            used[best] = true;
            mr.pairs.push_back({roots[best], z, bd});
        } else {
            mr.unmatched_oracle.push_back(z);
        }
    }
    for (size_t i = 0; i < roots.size(); ++i)
        if (!used[i])
            mr.unmatched_roots.push_back(roots[i]);

    // gap-threshold clustering of the oracle values
    std::vector<cplx> sorted = oracle;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
        return std::abs(a.imag()) != std::abs(b.imag())
                   ? std::abs(a.imag()) < std::abs(b.imag())
                   : a.real() < b.real();
    });
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i + 1;
        cplx sum = sorted[i];
        while (j < sorted.size() &&
               std::abs(sorted[j] - sorted[j - 1]) <= 100.0 * tol) {
            sum += sorted[j];
            ++j;
        }
        mr.clusters.push_back(
            {sum / static_cast<double>(j - i), static_cast<int>(j - i)});
        i = j;
    }
    return mr;
}

void stable_eigenbasis(const NetworkParams& p, int N, double cap,
                       Eigen::MatrixXcd& V, Eigen::VectorXcd& lambda) {
    using ld = long double;
    Mat<ld> A, B;
    assemble_pencil<ld>(p, N, A, B);
    Eigen::Matrix<ld, Eigen::Dynamic, 1> col_scale = equilibrate(A, B);
    Eigen::GeneralizedEigenSolver<Mat<ld>> ges;
    ges.compute(A, B, true);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("stable_eigenbasis: eigensolve failed");

    const int sz = 6 * N;
    std::vector<int> keep;
    for (int i = 0; i < sz; ++i) {
        if (std::abs(ges.betas()(i)) < 1e-300L)
            continue;
        std::complex<ld> lam = ges.alphas()(i) / ges.betas()(i);
        double re = static_cast<double>(lam.real());
        double mag = static_cast<double>(std::abs(lam));
        if (!std::isfinite(re) || mag > cap || mag < 1e-8)
            continue;
        if (re > 1e-6 * std::max(1.0, mag))
            continue; // spurious unstable artifact
        keep.push_back(i);
    }
    V.resize(sz, static_cast<int>(keep.size()));
    lambda.resize(static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c) {
        int i = keep[c];
        std::complex<ld> lam = ges.alphas()(i) / ges.betas()(i);
        lambda(c) = cplx(static_cast<double>(lam.real()),
                         static_cast<double>(lam.imag()));
        for (int r = 0; r < sz; ++r) {
            std::complex<ld> v = ges.eigenvectors()(r, i) * col_scale(r);
            V(r, c) = cplx(static_cast<double>(v.real()),
                           static_cast<double>(v.imag()));
        }
    }
}

Eigen::VectorXcd lift_state(const DiscretizedOperator& op,
                            const StateVector& x) {
    if (x.nodes() != op.nodes_per_edge)
        throw std::invalid_argument("lift_state: grid mismatch");
    Eigen::VectorXcd y(op.size());
    for (int j = 0; j < kNumEdges; ++j)
        for (int k = 0; k < op.nodes_per_edge; ++k) {
            y(op.w_row(j, k)) = x.w[j](k);
            y(op.v_row(j, k)) = x.v[j](k);
        }
    return y;
}

} // namespace graphbeam
