#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tfdiff/errors.hpp"
#include "tfdiff/fem1d.hpp"
#include "tfdiff/linear_solver.hpp"

using namespace tfdiff;

namespace {

SymTriMatrix random_spd(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::uniform_real_distribution<double> margin(0.05, 1.0);
    SymTriMatrix A;
    A.off.resize(n - 1);
    A.diag.resize(n);
    for (double& o : A.off) o = off(rng);
    for (int i = 0; i < n; ++i) {
        double row = margin(rng);
        if (i > 0) row += std::abs(A.off[i - 1]);
        if (i + 1 < n) row += std::abs(A.off[i]);
        A.diag[i] = row;  // strict diagonal dominance => SPD
    }
    return A;
}

NodalVector random_vec(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    NodalVector v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("cg on the identity converges in one iteration") {
    SymTriMatrix A;
    A.diag = {1.0, 1.0, 1.0, 1.0};
    A.off = {0.0, 0.0, 0.0};
    const NodalVector b{0.5, -2.0, 3.0, 0.25};
    const CgResult res = cg_solve(A, b, NodalVector(4, 0.0), CgConfig{});
    CHECK(res.iters == 1);
    for (int i = 0; i < 4; ++i) {
        CHECK(res.x[i] == doctest::Approx(b[i]).epsilon(1e-14));
    }
}

TEST_CASE("cg with zero right-hand side returns zero in zero iterations") {
    const SymTriMatrix A = assemble_stiffness(Mesh1D::uniform(8));
    const CgResult res =
        cg_solve(A, NodalVector(7, 0.0), NodalVector(7, 0.3), CgConfig{});
    CHECK(res.iters == 0);
    for (double x : res.x) CHECK(x == 0.0);
}

TEST_CASE("cg matches the direct solve on the uniform stiffness system") {
    const SymTriMatrix A = assemble_stiffness(Mesh1D::uniform(4));
    const NodalVector b{1.0, 1.0, 1.0};
    const NodalVector direct = tridiag_solve(A, b);
    const CgResult cg = cg_solve(A, b, NodalVector(3, 0.0), CgConfig{});
    for (int i = 0; i < 3; ++i) {
        CHECK(cg.x[i] == doctest::Approx(direct[i]).epsilon(1e-10));
    }
}

TEST_CASE("direct solve on a 2x2 system") {
    SymTriMatrix A;
    A.diag = {2.0, 2.0};
    A.off = {-1.0};
    const NodalVector x = tridiag_solve(A, NodalVector{1.0, 1.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("direct solve round-trips through the mass matrix") {
    const SymTriMatrix M = assemble_mass(Mesh1D::uniform(4));
    const NodalVector v{1.0, 2.0, 3.0};
    const NodalVector x = tridiag_solve(M, M.multiply(v));
    for (int i = 0; i < 3; ++i) {
        CHECK(x[i] == doctest::Approx(v[i]).epsilon(1e-12));
    }
}

TEST_CASE("singular tridiagonal input reports a zero pivot") {
    SymTriMatrix A;
    A.diag = {1.0, 1.0};
    A.off = {-1.0};  // second pivot becomes 0
    CHECK_THROWS_AS(tridiag_solve(A, NodalVector{1.0, 1.0}), solver_error);
}

TEST_CASE("cg and direct solutions agree on random SPD systems") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(2, 400);
    CgConfig cfg;
    cfg.rel_tol = 1e-12;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = dim(rng);
        const SymTriMatrix A = random_spd(rng, n);
        const NodalVector b = random_vec(rng, n);
        const NodalVector direct = tridiag_solve(A, b);
        const CgResult cg = cg_solve(A, b, NodalVector(n, 0.0), cfg);
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(direct[i]));
            diff = std::max(diff, std::abs(direct[i] - cg.x[i]));
        }
        CHECK(diff <= 1e-8 * scale);
    }
}

TEST_CASE("cg error is monotone in the A-norm") {
    std::mt19937 rng(5);
    const int n = 50;
    const SymTriMatrix A = random_spd(rng, n);
    const NodalVector b = random_vec(rng, n);
    const NodalVector sol = tridiag_solve(A, b);

    std::vector<double> anorm;
    CgConfig cfg;
    cfg.observer = [&](const NodalVector& x) {
        NodalVector e(n);
        for (int i = 0; i < n; ++i) e[i] = x[i] - sol[i];
        const NodalVector Ae = A.multiply(e);
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += e[i] * Ae[i];
        anorm.push_back(std::sqrt(std::max(q, 0.0)));
    };
    cg_solve(A, b, NodalVector(n, 0.0), cfg);
    REQUIRE(anorm.size() > 3);
    for (size_t i = 1; i < anorm.size(); ++i) {
        CHECK(anorm[i] <= anorm[i - 1] * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("cg finishes within n + 5 iterations on mass-like systems") {
    std::mt19937 rng(11);
    for (int N : {16, 40, 100}) {
        const SymTriMatrix M = assemble_mass(Mesh1D::uniform(N));
        const NodalVector b = random_vec(rng, M.n());
        const CgResult res = cg_solve(M, b, NodalVector(M.n(), 0.0), CgConfig{});
        CHECK(res.iters <= M.n() + 5);
        CHECK(res.rel_residual <= 1e-12);
    }
}

TEST_CASE("cg reports non-convergence with the final residual") {
    const SymTriMatrix S = assemble_stiffness(Mesh1D::uniform(64));
    NodalVector b(S.n(), 1.0);
    CgConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.max_iter = 2;
    CHECK_THROWS_AS(cg_solve(S, b, NodalVector(S.n(), 0.0), cfg), solver_error);
}

TEST_CASE("solver input validation") {
    const SymTriMatrix M = assemble_mass(Mesh1D::uniform(4));
    CHECK_THROWS_AS(cg_solve(M, NodalVector{1.0}, NodalVector(3, 0.0), CgConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tridiag_solve(M, NodalVector{1.0}), std::invalid_argument);
    CgConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(cg_solve(M, NodalVector(3, 1.0), NodalVector(3, 0.0), bad),
                    std::domain_error);
}
