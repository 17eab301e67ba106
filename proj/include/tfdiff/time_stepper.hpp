#ifndef TFDIFF_TIME_STEPPER_HPP
#define TFDIFF_TIME_STEPPER_HPP

#include <optional>
#include <vector>

#include "tfdiff/fem1d.hpp"
#include "tfdiff/fractional_time.hpp"
#include "tfdiff/linear_solver.hpp"
#include "tfdiff/problems.hpp"

namespace tfdiff {

/// Ordered states U^0 ... U^k. The scheme is nonlocal in time, so every
/// step reads the whole history; nothing can be discarded while marching.
struct SolutionHistory {
    TimeGrid grid;
    std::vector<NodalVector> states;
};

struct SolveReport {
    NodalVector final_state;
    std::optional<SolutionHistory> history;  // retained on request
    std::vector<int> per_step_cg_iters;      // 0 per step on the direct path
    double wall_time = 0.0;                  // seconds
};

/// Which linear solver the march uses for (M + a0 S) U = rhs: conjugate
/// gradients (the reference pipeline) or the LDL' factorization computed
/// once up front (bitwise-stable, preferred for refinement studies).
enum class SolverPath { cg, direct };

/// Right side of the fully discrete system at step k:
///   M * (a0 * load + sum_m coeff_m U^{k-m})
/// accumulated as one vector and multiplied by M once.
NodalVector form_rhs(const SolutionHistory& history, const SymTriMatrix& M,
                     const L1Weights& w, const NodalVector& load, double alpha0,
                     int k);

/// Marches the fully discrete scheme from t = 0 to t = T:
/// (M + a0 S) U^{k+1} = a0 M f^{k+1} + M * weighted history, k = 0 .. K-1.
/// U^0 is the nodal interpolant of the problem's initial data. Solver
/// failures are rethrown as solver_error tagged with the failing step.
SolveReport march(const Problem& problem, const Mesh1D& mesh,
                  const TimeGrid& grid, const CgConfig& cfg,
                  bool keep_history = false,
                  SolverPath path = SolverPath::cg);

}  // namespace tfdiff

#endif
