#ifndef TFDIFF_LINEAR_SOLVER_HPP
#define TFDIFF_LINEAR_SOLVER_HPP

#include <functional>

#include "tfdiff/fem1d.hpp"

namespace tfdiff {

struct CgConfig {
    double rel_tol = 1e-12;  ///< target on ||rhs - A x|| / ||rhs||
    int max_iter = 20000;
    /// Optional per-iteration hook (receives the current iterate);
    /// used by instrumented tests, ignored when empty.
    std::function<void(const NodalVector&)> observer;
};

struct CgResult {
    NodalVector x;
    int iters;
    double rel_residual;
};

/// Conjugate gradients for an SPD tridiagonal system. Iterates until the
/// residual recurrence meets cfg.rel_tol relative to ||rhs||; throws
/// solver_error with the final residual if max_iter is exhausted first.
/// rhs = 0 returns x = 0 in zero iterations. The reported rel_residual is
/// the recomputed true residual, which can exceed rel_tol marginally on
/// ill-conditioned systems at the rounding floor.
CgResult cg_solve(const SymTriMatrix& A, const NodalVector& rhs,
                  const NodalVector& x0, const CgConfig& cfg);

/// LDL' factorization of a symmetric tridiagonal matrix, reusable across
/// many right-hand sides. No pivoting (valid for the SPD systems here);
/// a vanishing pivot throws solver_error.
class TridiagFactor {
  public:
    explicit TridiagFactor(const SymTriMatrix& A);
    NodalVector solve(std::span<const double> rhs) const;
    /// Pivots of the factorization; all positive iff A is positive definite.
    const std::vector<double>& pivots() const { return d_; }

  private:
    std::vector<double> d_;  // pivots
    std::vector<double> l_;  // subdiagonal multipliers
};

/// One-shot direct solve, the oracle for cg_solve.
NodalVector tridiag_solve(const SymTriMatrix& A, const NodalVector& rhs);

}  // namespace tfdiff

#endif
