#include "tfdiff/time_stepper.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tfdiff/errors.hpp"

namespace tfdiff {

NodalVector form_rhs(const SolutionHistory& history, const SymTriMatrix& M,
                     const L1Weights& w, const NodalVector& load, double alpha0,
                     int k) {
    const int n = M.n();
    if (static_cast<int>(history.states.size()) < k + 1) {
        throw std::invalid_argument("form_rhs: history must hold U^0 .. U^k");
    }
    if (static_cast<int>(load.size()) != n) {
        throw std::invalid_argument("form_rhs: load size does not match system");
    }
    const std::vector<double> coeff = history_coefficients(w, k);
    NodalVector acc(n);
    for (int i = 0; i < n; ++i) acc[i] = alpha0 * load[i];
    for (int m = 0; m <= k; ++m) {
        const NodalVector& state = history.states[k - m];
        if (static_cast<int>(state.size()) != n) {
            throw std::invalid_argument("form_rhs: state size does not match system");
        }
        const double c = coeff[m];
        for (int i = 0; i < n; ++i) acc[i] += c * state[i];
    }
    return M.multiply(acc);
}

SolveReport march(const Problem& problem, const Mesh1D& mesh,
                  const TimeGrid& grid, const CgConfig& cfg, bool keep_history,
                  SolverPath path) {
    const auto start = std::chrono::steady_clock::now();
    const int n = mesh.interior_count();

    if (!problem.forcing || !problem.initial) {
        throw std::invalid_argument("march: problem needs forcing and initial data");
    }
    if (std::abs(problem.initial(0.0)) > 1e-12 ||
        std::abs(problem.initial(1.0)) > 1e-12) {
        throw std::domain_error(
            "march: initial data is incompatible with the homogeneous "
            "Dirichlet boundary");
    }

    const SymTriMatrix M = assemble_mass(mesh);
    const SymTriMatrix S = assemble_stiffness(mesh);
    SymTriMatrix A;
    A.diag.resize(n);
    A.off.resize(n - 1);
    for (int i = 0; i < n; ++i) A.diag[i] = M.diag[i] + grid.alpha0 * S.diag[i];
    for (int i = 0; i + 1 < n; ++i) A.off[i] = M.off[i] + grid.alpha0 * S.off[i];

    const L1Weights w = l1_weights(grid.alpha, grid.K);

    SolutionHistory history;
    history.grid = grid;
    history.states.reserve(grid.K + 1);
    NodalVector u0(n);
    for (int i = 0; i < n; ++i) u0[i] = problem.initial(mesh.nodes[i + 1]);
    history.states.push_back(std::move(u0));

    std::optional<TridiagFactor> factor;
    if (path == SolverPath::direct) factor.emplace(A);

    SolveReport report;
    report.per_step_cg_iters.resize(grid.K, 0);

    for (int k = 0; k < grid.K; ++k) {
        const double t_next = grid.time_at(k + 1);
        const NodalVector load = assemble_load(mesh, problem.forcing, t_next);
        const NodalVector rhs = form_rhs(history, M, w, load, grid.alpha0, k);
        if (path == SolverPath::direct) {
            history.states.push_back(factor->solve(rhs));
        } else {
            try {
                CgResult res = cg_solve(A, rhs, history.states.back(), cfg);
                report.per_step_cg_iters[k] = res.iters;
                history.states.push_back(std::move(res.x));
            } catch (const solver_error& err) {
                throw solver_error("march: linear solve failed at step " +
                                   std::to_string(k + 1) + " of " +
                                   std::to_string(grid.K) + ": " + err.what());
            }
        }
    }

    report.final_state = history.states.back();
    if (keep_history) report.history = std::move(history);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace tfdiff
