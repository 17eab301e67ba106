#ifndef TFDIFF_PROBLEMS_HPP
#define TFDIFF_PROBLEMS_HPP

#include <functional>
#include <string>

namespace tfdiff {

/// A concrete initial-boundary-value problem on [0,1] with homogeneous
/// Dirichlet data: forcing f(x,t), initial u0(x), and (when known) the
/// exact solution used for error measurement.
struct Problem {
    std::function<double(double, double)> forcing;
    std::function<double(double)> initial;
    std::function<double(double, double)> exact;  // empty when unknown
    std::string label;

    bool has_exact() const { return static_cast<bool>(exact); }
};

/// Exact solution u = t^2 sin(2 pi x) with matching power-law forcing
/// f = 2/Gamma(3-a) t^{2-a} sin(2 pi x) + 4 pi^2 t^2 sin(2 pi x), u0 = 0.
Problem example1(double alpha);

/// Exact solution u = sin(pi t) sin(pi x). The forcing needs the Caputo
/// derivative of sin(pi t), evaluated by singularity-aware quadrature to
/// absolute tolerance quad_tol and memoized per time value.
///
/// The spatial term is +pi^2 sin(pi t) sin(pi x), the sign that makes the
/// stated exact solution satisfy the governing equation;
/// flip_spatial_sign = true selects -pi^2 instead for comparison runs
/// against the sign-flipped variant of this forcing.
Problem example2(double alpha, double quad_tol, bool flip_spatial_sign = false);

/// Manufactured family u = t^p sin(q pi x), p in [1, 4], q >= 1:
/// f = Gamma(p+1)/Gamma(p+1-a) t^{p-a} sin(q pi x)
///     + q^2 pi^2 t^p sin(q pi x), u0 = 0.
/// manufactured(2, 2, a) coincides with example1(a).
Problem manufactured(double p, int q, double alpha);

/// Caputo derivative of order alpha of sin(pi t), i.e.
/// (1/Gamma(1-a)) * integral_0^t (t-s)^{-a} pi cos(pi s) ds,
/// by graded composite Gauss quadrature on the substituted integral in
/// tau = t - s. Absolute error at most quad_tol; throws solver_error if
/// panel doubling fails to converge.
double caputo_sin_pi(double alpha, double t, double quad_tol);

/// Problem selection by CLI label: "example1", "example2",
/// "manufactured:p=<real>,q=<int>". Throws std::invalid_argument on an
/// unrecognized label.
Problem problem_from_label(const std::string& label, double alpha,
                           double quad_tol = 1e-10);

}  // namespace tfdiff

#endif
