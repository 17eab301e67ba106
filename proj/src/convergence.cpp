#include "tfdiff/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfdiff/errors.hpp"
#include "tfdiff/problems.hpp"

namespace tfdiff {

namespace {

void validate_study(const StudySpec& spec) {
    if (spec.alphas.empty()) {
        throw std::domain_error("study: alpha list is empty");
    }
    if (spec.levels.size() < 3) {
        throw std::domain_error("study: need at least 3 refinement levels, got " +
                                std::to_string(spec.levels.size()));
    }
    if (!(spec.T > 0.0)) {
        throw std::domain_error("study: final time must be positive");
    }
    for (const StudyLevel& lvl : spec.levels) {
        if (lvl.K < 1 || lvl.N < 2) {
            throw std::domain_error("study: level with K < 1 or N < 2");
        }
    }
    if (spec.axis == Axis::time) {
        int coarsest_K = spec.levels.front().K;
        for (const StudyLevel& lvl : spec.levels) {
            coarsest_K = std::min(coarsest_K, lvl.K);
        }
        const double dt_coarse = spec.T / coarsest_K;
        for (double alpha : spec.alphas) {
            const double budget = 0.01 * std::pow(dt_coarse, 2.0 - alpha);
            for (const StudyLevel& lvl : spec.levels) {
                const double h = 1.0 / lvl.N;
                if (h * h > budget) {
                    throw std::domain_error(
                        "study: spatial error not subdominant on the time axis "
                        "(need h^2 <= 0.01 * coarsest_dt^(2-alpha); N = " +
                        std::to_string(lvl.N) + " is too coarse for alpha = " +
                        std::to_string(alpha) + ")");
                }
            }
        }
    }
}

struct LevelResult {
    ErrorPair errors;
    double wall_time;
};

LevelResult run_level(const StudySpec& spec, double alpha, StudyLevel lvl) {
    // Fresh problem instance per level: keeps example2's quadrature cache
    // thread-local to the level.
    const Problem problem = problem_from_label(spec.problem, alpha, spec.quad_tol);
    if (!problem.has_exact()) {
        throw std::invalid_argument("study: problem '" + spec.problem +
                                    "' has no exact solution to measure against");
    }
    const Mesh1D mesh = Mesh1D::uniform(lvl.N);
    const TimeGrid grid = make_time_grid(spec.T, lvl.K, alpha);
    const SolveReport report =
        march(problem, mesh, grid, CgConfig{}, false, SolverPath::direct);
    return {nodal_errors(report.final_state, problem.exact, mesh, spec.T),
            report.wall_time};
}

}  // namespace

std::vector<StudyRow> run_study(const StudySpec& spec) {
    validate_study(spec);
    // Validate the label before spawning workers.
    (void)problem_from_label(spec.problem, spec.alphas.front(), spec.quad_tol);

    std::vector<std::future<LevelResult>> futures;
    futures.reserve(spec.alphas.size() * spec.levels.size());
    for (double alpha : spec.alphas) {
        for (const StudyLevel& lvl : spec.levels) {
            futures.push_back(std::async(std::launch::async, run_level, spec,
                                         alpha, lvl));
        }
    }

    std::vector<StudyRow> rows;
    rows.reserve(futures.size());
    size_t idx = 0;
    for (size_t a = 0; a < spec.alphas.size(); ++a) {
        const double alpha = spec.alphas[a];
        for (size_t l = 0; l < spec.levels.size(); ++l, ++idx) {
            const StudyLevel& lvl = spec.levels[l];
            LevelResult res;
            const std::string where = "study level (alpha = " +
                                      std::to_string(alpha) +
                                      ", K = " + std::to_string(lvl.K) +
                                      ", N = " + std::to_string(lvl.N) + ")";
            try {
                res = futures[idx].get();
            } catch (const solver_error& err) {
                throw solver_error(where + " failed: " + err.what());
            } catch (const std::exception& err) {
                throw std::runtime_error(where + " failed: " + err.what());
            }
            StudyRow row;
            row.alpha = alpha;
            row.K = lvl.K;
            row.N = lvl.N;
            row.dt = spec.T / lvl.K;
            row.h = 1.0 / lvl.N;
            row.l2_error = res.errors.l2_error;
            row.max_error = res.errors.max_error;
            row.wall_time = res.wall_time;
            if (l > 0) {
                const StudyRow& prev = rows.back();
                const bool halved = (spec.axis == Axis::time)
                                        ? (lvl.K == 2 * prev.K && lvl.N == prev.N)
                                        : (lvl.N == 2 * prev.N);
                if (halved && prev.l2_error > 0.0 && row.l2_error > 0.0) {
                    row.rate = std::log2(prev.l2_error / row.l2_error);
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

double observed_rate(const std::vector<StudyRow>& rows, double alpha) {
    std::vector<double> rates;
    for (const StudyRow& row : rows) {
        if (row.alpha == alpha && row.rate.has_value()) {
            rates.push_back(*row.rate);
        }
    }
    if (rates.empty()) {
        throw std::invalid_argument("observed_rate: no rate entries for alpha = " +
                                    std::to_string(alpha));
    }
    std::sort(rates.begin(), rates.end());
    const size_t m = rates.size() / 2;
    return rates.size() % 2 == 1 ? rates[m] : 0.5 * (rates[m - 1] + rates[m]);
}

std::vector<StudyRow> reproduce_table1() {
    std::vector<StudyRow> rows;
    for (double alpha : {0.1, 0.5, 0.9}) {
        const Problem problem = example1(alpha);
        const Mesh1D mesh = Mesh1D::uniform(1000);   // dx = 0.001
        const TimeGrid grid = make_time_grid(1.0, 100, alpha);  // dt = 0.01
        const SolveReport report = march(problem, mesh, grid, CgConfig{});
        const ErrorPair err =
            nodal_errors(report.final_state, problem.exact, mesh, 1.0);
        StudyRow row;
        row.alpha = alpha;
        row.K = grid.K;
        row.N = mesh.num_elements();
        row.dt = grid.dt;
        row.h = mesh.h_max();
        row.l2_error = err.l2_error;
        row.max_error = err.max_error;
        row.wall_time = report.wall_time;
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<StudyRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    }
    out << "alpha,K,N,dt,h,l2_error,max_error,rate,wall_time_s\n";
    for (const StudyRow& row : rows) {
        out << fmt_sci(row.alpha) << ',' << row.K << ',' << row.N << ','
            << fmt_sci(row.dt) << ',' << fmt_sci(row.h) << ','
            << fmt_sci(row.l2_error) << ',' << fmt_sci(row.max_error) << ','
            << (row.rate ? fmt_sci(*row.rate) : std::string()) << ','
            << fmt_sci(row.wall_time) << '\n';
    }
    if (!out.good()) {
        throw std::runtime_error("emit_csv: write to '" + path + "' failed");
    }
}

void emit_profile(const SolveReport& report, const Mesh1D& mesh,
                  const std::function<double(double, double)>& exact, double t,
                  const std::string& path) {
    if (!exact) {
        throw std::invalid_argument("emit_profile: exact solution required");
    }
    const int n = mesh.interior_count();
    if (static_cast<int>(report.final_state.size()) != n) {
        throw std::invalid_argument("emit_profile: state does not match mesh");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit_profile: cannot open '" + path +
                                 "' for writing");
    }
    out << "x,u_exact,u_num,error\n";
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
        const double x = mesh.nodes[i];
        const bool boundary = (i == 0 || i + 1 == mesh.nodes.size());
        const double u_num = boundary ? 0.0 : report.final_state[i - 1];
        const double u_ex = exact(x, t);
        out << fmt_sci(x) << ',' << fmt_sci(u_ex) << ',' << fmt_sci(u_num) << ','
            << fmt_sci(u_num - u_ex) << '\n';
    }
    if (!out.good()) {
        throw std::runtime_error("emit_profile: write to '" + path + "' failed");
    }
}

}  // namespace tfdiff
