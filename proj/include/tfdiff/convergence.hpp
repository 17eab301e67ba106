#ifndef TFDIFF_CONVERGENCE_HPP
#define TFDIFF_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tfdiff/fem1d.hpp"
#include "tfdiff/time_stepper.hpp"

namespace tfdiff {

enum class Axis { time, space };

/// Which error norms a study reports in human-facing output. Rows always
/// carry both (the CSV schema is fixed); rates are always measured in the
/// mass-weighted L2 norm.
enum class NormSet { both, l2, max };

struct StudyLevel {
    int K;  ///< time steps
    int N;  ///< space intervals
};

/// A refinement study: one problem, one refinement axis, at least three
/// (K, N) levels, run for every alpha in the list. Along the time axis
/// the mesh must make the spatial error subdominant:
/// h^2 <= 0.01 * (coarsest dt)^{2-alpha}.
struct StudySpec {
    std::string problem;  ///< label as accepted by problem_from_label
    std::vector<double> alphas;
    Axis axis = Axis::time;
    std::vector<StudyLevel> levels;
    double T = 1.0;
    NormSet norms = NormSet::both;
    double quad_tol = 1e-10;  ///< forwarded to example2
};

struct StudyRow {
    double alpha;
    int K;
    int N;
    double dt;
    double h;
    double l2_error;
    double max_error;
    std::optional<double> rate;  ///< log2 ratio vs previous level, when halved
    double wall_time;            ///< seconds spent in the march
};

/// Runs every (alpha, level) march, measures errors at t = T against the
/// problem's exact solution, and fills per-level observed rates. Levels
/// are dispatched to parallel workers; rows come back in level order.
std::vector<StudyRow> run_study(const StudySpec& spec);

/// Robust summary of a study's rate column for one alpha: the median of
/// the consecutive-halving rates (insensitive to one outlier level).
double observed_rate(const std::vector<StudyRow>& rows, double alpha);

/// Example 1 at the reference operating point dx = 0.001, dt = 0.01,
/// T = 1 for alpha in {0.1, 0.5, 0.9}; reports the max nodal error at T.
std::vector<StudyRow> reproduce_table1();

/// CSV with header alpha,K,N,dt,h,l2_error,max_error,rate,wall_time_s;
/// scientific notation, 9 significant digits, '.' decimal point. The rate
/// field is empty on rows without one.
void emit_csv(const std::vector<StudyRow>& rows, const std::string& path);

/// Per-node profile x,u_exact,u_num,error at time t, one line per mesh
/// node (boundary included), gnuplot-consumable.
void emit_profile(const SolveReport& report, const Mesh1D& mesh,
                  const std::function<double(double, double)>& exact, double t,
                  const std::string& path);

}  // namespace tfdiff

#endif
