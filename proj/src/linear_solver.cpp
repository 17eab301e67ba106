#include "tfdiff/linear_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tfdiff/errors.hpp"

namespace tfdiff {

namespace {

double dot(const NodalVector& a, const NodalVector& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const NodalVector& a) { return std::sqrt(dot(a, a)); }

}  // namespace

CgResult cg_solve(const SymTriMatrix& A, const NodalVector& rhs,
                  const NodalVector& x0, const CgConfig& cfg) {
    const int n = A.n();
    if (static_cast<int>(rhs.size()) != n || static_cast<int>(x0.size()) != n) {
        throw std::invalid_argument("cg_solve: dimension mismatch");
    }
    if (!(cfg.rel_tol > 0.0) || cfg.max_iter < 1) {
        throw std::domain_error("cg_solve: rel_tol must be > 0 and max_iter >= 1");
    }

    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        return {NodalVector(n, 0.0), 0, 0.0};
    }

    // Standard Hestenes-Stiefel loop on the residual recurrence. Near the
    // rounding floor of ill-conditioned systems the true residual can sit
    // slightly above the recurrence one; the returned rel_residual is the
    // recomputed true value.
    NodalVector x = x0;
    NodalVector r = rhs;
    {
        const NodalVector Ax = A.multiply(x);
        for (int i = 0; i < n; ++i) r[i] -= Ax[i];
    }
    NodalVector p = r;
    double rs = dot(r, r);
    int iters = 0;
    while (std::sqrt(rs) > cfg.rel_tol * rhs_norm) {
        if (iters >= cfg.max_iter) {
            throw solver_error("cg_solve: no convergence in " +
                               std::to_string(cfg.max_iter) +
                               " iterations, relative residual " +
                               std::to_string(std::sqrt(rs) / rhs_norm));
        }
        const NodalVector Ap = A.multiply(p);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) {
            throw solver_error("cg_solve: matrix is not positive definite");
        }
        const double step = rs / pAp;
        for (int i = 0; i < n; ++i) {
            x[i] += step * p[i];
            r[i] -= step * Ap[i];
        }
        const double rs_next = dot(r, r);
        const double beta = rs_next / rs;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rs = rs_next;
        ++iters;
        if (cfg.observer) cfg.observer(x);
    }

    const NodalVector Ax = A.multiply(x);
    NodalVector tr(n);
    for (int i = 0; i < n; ++i) tr[i] = rhs[i] - Ax[i];
    return {std::move(x), iters, norm2(tr) / rhs_norm};
}

TridiagFactor::TridiagFactor(const SymTriMatrix& A) {
    const int n = A.n();
    d_.resize(n);
    l_.resize(n > 0 ? n - 1 : 0);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(A.diag[i]));
    const double tiny = 1e-14 * (scale > 0.0 ? scale : 1.0);
    double d = A.diag[0];
    for (int i = 0;; ++i) {
        if (std::abs(d) <= tiny) {
            throw solver_error("tridiagonal factorization: zero pivot at row " +
                               std::to_string(i) + " (matrix not SPD?)");
        }
        d_[i] = d;
        if (i + 1 >= n) break;
        l_[i] = A.off[i] / d;
        d = A.diag[i + 1] - l_[i] * A.off[i];
    }
}

NodalVector TridiagFactor::solve(std::span<const double> rhs) const {
    const int n = static_cast<int>(d_.size());
    if (rhs.size() != d_.size()) {
        throw std::invalid_argument("TridiagFactor::solve: dimension mismatch");
    }
    NodalVector y(rhs.begin(), rhs.end());
    for (int i = 1; i < n; ++i) y[i] -= l_[i - 1] * y[i - 1];
    y[n - 1] /= d_[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        y[i] = y[i] / d_[i] - l_[i] * y[i + 1];
    }
    return y;
}

NodalVector tridiag_solve(const SymTriMatrix& A, const NodalVector& rhs) {
    if (static_cast<int>(rhs.size()) != A.n()) {
        throw std::invalid_argument("tridiag_solve: dimension mismatch");
    }
    return TridiagFactor(A).solve(rhs);
}

}  // namespace tfdiff
