#ifndef TFDIFF_FRACTIONAL_TIME_HPP
#define TFDIFF_FRACTIONAL_TIME_HPP

#include <span>
#include <vector>

namespace tfdiff {

/// Uniform partition of [0, T] together with the scale a0 = Gamma(2-a) dt^a
/// that multiplies the elliptic operator in every implicit step.
struct TimeGrid {
    double T;       ///< final time
    int K;          ///< number of steps
    double dt;      ///< T / K
    double alpha;   ///< fractional order, in (0, 1)
    double alpha0;  ///< Gamma(2 - alpha) * dt^alpha

    double time_at(int k) const { return dt * k; }
};

/// Weights b_j = (j+1)^{1-a} - j^{1-a}, j = 0 .. K-1, of the piecewise-linear
/// quadrature of the Caputo integral. b_0 = 1 and the sequence is strictly
/// decreasing and positive.
struct L1Weights {
    std::vector<double> b;
    double alpha;
};

TimeGrid make_time_grid(double T, int K, double alpha);

L1Weights l1_weights(double alpha, int K);

/// Multipliers of the past states U^k, U^{k-1}, ..., U^0 on the right side
/// of the marching scheme: [(1-b_1), (b_1-b_2), ..., (b_{k-1}-b_k), b_k].
/// For k = 0 the scheme collapses to a single term and this returns [1].
/// The entries are nonnegative and sum to 1 (telescoping).
std::vector<double> history_coefficients(const L1Weights& w, int k);

/// Discrete Caputo derivative of a scalar sample sequence at t_{k+1}:
/// (1/a0) * (u(t_{k+1}) - sum of history_coefficients times past samples).
/// `samples` must hold u(t_0) ... u(t_{k+1}), i.e. k+2 values.
double apply_l1_operator(std::span<const double> samples, const TimeGrid& grid,
                         const L1Weights& w, int k);

}  // namespace tfdiff

#endif
