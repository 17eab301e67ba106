#include "tfdiff/fractional_time.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tfdiff/special_functions.hpp"

namespace tfdiff {

namespace {

void check_order_and_steps(double alpha, int K) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::domain_error("fractional order alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
    }
    if (K < 1) {
        throw std::domain_error("number of time steps must be >= 1, got " +
                                std::to_string(K));
    }
}

}  // namespace

TimeGrid make_time_grid(double T, int K, double alpha) {
    check_order_and_steps(alpha, K);
    if (!(T > 0.0)) {
        throw std::domain_error("final time must be positive, got " +
                                std::to_string(T));
    }
    TimeGrid grid;
    grid.T = T;
    grid.K = K;
    grid.dt = T / K;
    grid.alpha = alpha;
    grid.alpha0 = gamma(2.0 - alpha) * std::pow(grid.dt, alpha);
    return grid;
}

L1Weights l1_weights(double alpha, int K) {
    check_order_and_steps(alpha, K);
    L1Weights w;
    w.alpha = alpha;
    w.b.resize(K);
    const double e = 1.0 - alpha;
    for (int j = 0; j < K; ++j) {
        w.b[j] = std::pow(j + 1.0, e) - std::pow(static_cast<double>(j), e);
    }
    return w;
}

std::vector<double> history_coefficients(const L1Weights& w, int k) {
    const int K = static_cast<int>(w.b.size());
    if (k < 0 || k >= K) {
        throw std::out_of_range("history_coefficients: step index " +
                                std::to_string(k) + " outside [0, " +
                                std::to_string(K - 1) + "]");
    }
    if (k == 0) {
        return {1.0};
    }
    std::vector<double> c(k + 1);
    c[0] = 1.0 - w.b[1];
    for (int j = 1; j < k; ++j) {
        c[j] = w.b[j] - w.b[j + 1];
    }
    c[k] = w.b[k];
    return c;
}

double apply_l1_operator(std::span<const double> samples, const TimeGrid& grid,
                         const L1Weights& w, int k) {
    if (k < 0 || k + 1 > grid.K) {
        throw std::out_of_range("apply_l1_operator: step index " +
                                std::to_string(k) + " beyond grid");
    }
    if (samples.size() != static_cast<size_t>(k) + 2) {
        throw std::invalid_argument(
            "apply_l1_operator: expected " + std::to_string(k + 2) +
            " samples u(t_0)..u(t_{k+1}), got " + std::to_string(samples.size()));
    }
    const std::vector<double> c = history_coefficients(w, k);
    double past = 0.0;
    for (int m = 0; m <= k; ++m) {
        past += c[m] * samples[k - m];
    }
    return (samples[k + 1] - past) / grid.alpha0;
}

}  // namespace tfdiff
