#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tfdiff/errors.hpp"
#include "tfdiff/fractional_time.hpp"
#include "tfdiff/problems.hpp"

using namespace tfdiff;

namespace {

// Oracle for the Caputo derivative of sin(pi t): term-by-term derivative of
// the Taylor series, sum_n (-1)^n pi^(2n+1) t^(2n+1-a) / Gamma(2n+2-a).
// Converges to machine precision within 30 terms for t <= 1.
double caputo_sin_series(double alpha, double t, int terms = 30) {
    double sum = 0.0;
    for (int n = 0; n < terms; ++n) {
        sum += (n % 2 == 0 ? 1.0 : -1.0) *
               std::pow(M_PI, 2 * n + 1) * std::pow(t, 2 * n + 1 - alpha) /
               std::tgamma(2 * n + 2 - alpha);
    }
    return sum;
}

}  // namespace

TEST_CASE("example 1 forcing and exact solution") {
    const Problem p = example1(0.5);
    CHECK(p.label == "example1");
    REQUIRE(p.has_exact());
    // 2/Gamma(2.5) + 4 pi^2 at (x, t) = (1/4, 1)
    CHECK(p.forcing(0.25, 1.0) ==
          doctest::Approx(40.982923160484785).epsilon(1e-12));
    for (double x : {0.1, 0.37, 0.92}) {
        CHECK(p.exact(x, 0.0) == 0.0);
        CHECK(p.initial(x) == 0.0);
    }
    CHECK(std::abs(p.exact(0.5, 3.0)) < 1e-12);  // sin(pi) ~ 0
    CHECK(p.initial(0.0) == 0.0);
    CHECK(p.initial(1.0) == 0.0);
    CHECK_THROWS_AS(example1(1.0), std::domain_error);
    CHECK_THROWS_AS(example1(0.0), std::domain_error);
}

TEST_CASE("manufactured family") {
    SUBCASE("frozen value at p = q = 1") {
        const Problem p = manufactured(1.0, 1, 0.5);
        // Gamma(2)/Gamma(1.5) + pi^2
        CHECK(p.forcing(0.5, 1.0) ==
              doctest::Approx(10.997983568184871).epsilon(1e-12));
        CHECK(p.exact(0.77, 0.0) == 0.0);
    }
    SUBCASE("coincides with example 1 at p = q = 2") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> ux(0.0, 1.0);
        std::uniform_real_distribution<double> ut(0.01, 2.0);
        for (double alpha : {0.1, 0.5, 0.9}) {
            const Problem a = example1(alpha);
            const Problem b = manufactured(2.0, 2, alpha);
            for (int i = 0; i < 50; ++i) {
                const double x = ux(rng), t = ut(rng);
                const double fa = a.forcing(x, t), fb = b.forcing(x, t);
                CHECK(std::abs(fa - fb) <= 1e-13 * std::max(1.0, std::abs(fa)));
            }
        }
    }
    SUBCASE("gamma recurrence path at p = 4") {
        const double alpha = 0.5;
        const Problem p = manufactured(4.0, 1, alpha);
        const double c = std::tgamma(5.0) / std::tgamma(5.0 - alpha);
        const double x = 0.3, t = 0.8;
        const double expect = c * std::pow(t, 4.0 - alpha) * std::sin(M_PI * x) +
                              M_PI * M_PI * std::pow(t, 4.0) * std::sin(M_PI * x);
        CHECK(p.forcing(x, t) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("domain validation") {
        CHECK_THROWS_AS(manufactured(0.5, 1, 0.5), std::domain_error);
        CHECK_THROWS_AS(manufactured(4.5, 1, 0.5), std::domain_error);
        CHECK_THROWS_AS(manufactured(2.0, 0, 0.5), std::domain_error);
        CHECK_THROWS_AS(manufactured(2.0, 1, 1.5), std::domain_error);
    }
}

TEST_CASE("Caputo derivative of sin(pi t) vanishes at t = 0") {
    for (double alpha : {0.1, 0.5, 0.9}) {
        CHECK(caputo_sin_pi(alpha, 0.0, 1e-10) == 0.0);
    }
    CHECK_THROWS_AS(caputo_sin_pi(0.5, -0.1, 1e-10), std::domain_error);
    CHECK_THROWS_AS(caputo_sin_pi(0.5, 1.0, 0.0), std::domain_error);
}

TEST_CASE("quadrature matches the series oracle") {
    CHECK(caputo_sin_pi(0.2, 1.0, 1e-11) ==
          doctest::Approx(-0.4351758808561548).epsilon(1e-10));
    CHECK(caputo_sin_pi(0.5, 0.7, 1e-11) ==
          doctest::Approx(0.1680572787453793).epsilon(1e-10));
    for (double alpha : {0.2, 0.5, 0.9}) {
        for (double t : {0.05, 0.31, 0.5, 0.77, 1.0}) {
            const double q = caputo_sin_pi(alpha, t, 1e-10);
            CHECK(std::abs(q - caputo_sin_series(alpha, t)) <= 1e-10);
        }
    }
}

TEST_CASE("quadrature degenerates to the classical derivative as alpha -> 0") {
    const double alpha = 1e-6;
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
        CHECK(std::abs(caputo_sin_pi(alpha, t, 1e-10) - std::sin(M_PI * t)) <
              1e-4);
    }
}

TEST_CASE("example 2 forcing wiring") {
    const double alpha = 0.2;
    const Problem p = example2(alpha, 1e-10);
    const Problem flipped = example2(alpha, 1e-10, true);
    const double x = 0.33, t = 0.6;
    // default and sign-flipped forcings differ by 2 pi^2 sin(pi t) sin(pi x)
    const double gap = 2.0 * M_PI * M_PI * std::sin(M_PI * t) * std::sin(M_PI * x);
    CHECK(p.forcing(x, t) - flipped.forcing(x, t) ==
          doctest::Approx(gap).epsilon(1e-12));
    // spatial factor: forcing is sin(pi x) times an x-independent profile
    const double ratio = p.forcing(0.25, t) / std::sin(M_PI * 0.25);
    CHECK(p.forcing(0.75, t) ==
          doctest::Approx(ratio * std::sin(M_PI * 0.75)).epsilon(1e-12));
    CHECK(p.exact(0.5, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(p.initial(0.31) == 0.0);
}

namespace {

// Substitutes the exact solution into the governing equation with the L1
// operator standing in for the Caputo derivative; the defect against the
// forcing must shrink at the scheme's consistency order.
double pde_residual(const Problem& p,
                    const std::function<double(double, double)>& minus_uxx,
                    double alpha, int K) {
    const TimeGrid grid = make_time_grid(1.0, K, alpha);
    const L1Weights w = l1_weights(alpha, K);
    const double probes[] = {0.11, 0.3, 0.52, 0.68, 0.91};
    double worst = 0.0;
    for (double x : probes) {
        std::vector<double> samples(K + 1);
        for (int k = 0; k <= K; ++k) samples[k] = p.exact(x, grid.time_at(k));
        const double lhs = apply_l1_operator(samples, grid, w, K - 1) +
                           minus_uxx(x, grid.T);
        worst = std::max(worst, std::abs(lhs - p.forcing(x, grid.T)));
    }
    return worst;
}

}  // namespace

TEST_CASE("exact solutions satisfy the PDE through the L1 operator") {
    struct Case {
        Problem problem;
        std::function<double(double, double)> minus_uxx;
        double alpha;
    };
    const Case cases[] = {
        {example1(0.3),
         [](double x, double t) {
             return 4.0 * M_PI * M_PI * t * t * std::sin(2.0 * M_PI * x);
         },
         0.3},
        {manufactured(3.0, 1, 0.6),
         [](double x, double t) {
             return M_PI * M_PI * std::pow(t, 3.0) * std::sin(M_PI * x);
         },
         0.6},
        {example2(0.2, 1e-12),
         [](double x, double t) {
             return M_PI * M_PI * std::sin(M_PI * t) * std::sin(M_PI * x);
         },
         0.2},
    };
    for (const Case& c : cases) {
        const double coarse = pde_residual(c.problem, c.minus_uxx, c.alpha, 64);
        const double fine = pde_residual(c.problem, c.minus_uxx, c.alpha, 256);
        const double rate = std::log2(coarse / fine) / 2.0;
        CHECK(rate >= 2.0 - c.alpha - 0.3);
    }
}

TEST_CASE("problem label parsing") {
    CHECK(problem_from_label("example1", 0.4).label == "example1");
    CHECK(problem_from_label("example2", 0.4).label == "example2");

    const Problem m = problem_from_label("manufactured:p=2.5,q=3", 0.4);
    const Problem direct = manufactured(2.5, 3, 0.4);
    CHECK(m.forcing(0.21, 0.8) ==
          doctest::Approx(direct.forcing(0.21, 0.8)).epsilon(1e-14));

    CHECK_THROWS_AS(problem_from_label("example3", 0.4), std::invalid_argument);
    CHECK_THROWS_AS(problem_from_label("manufactured:p=abc,q=1", 0.4),
                    std::invalid_argument);
    CHECK_THROWS_AS(problem_from_label("manufactured:q=1,p=2", 0.4),
                    std::invalid_argument);
    CHECK_THROWS_AS(problem_from_label("manufactured:p=2,q=", 0.4),
                    std::invalid_argument);
    CHECK_THROWS_AS(problem_from_label("manufactured:p=0.5,q=1", 0.4),
                    std::domain_error);
}
