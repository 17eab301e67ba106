// Command-line front end: single-run solves with profile output and
// refinement studies with observed-order reporting.
//
// Exit codes: 0 success, 2 validation/usage error, 3 solver non-convergence.

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tfdiff/convergence.hpp"
#include "tfdiff/errors.hpp"
#include "tfdiff/fem1d.hpp"
#include "tfdiff/problems.hpp"
#include "tfdiff/time_stepper.hpp"

namespace {

std::vector<double> parse_alpha_list(const std::string& csv) {
    std::vector<double> alphas;
    size_t pos = 0;
    while (pos <= csv.size()) {
        const size_t comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty()) {
            throw std::invalid_argument("bad alpha list entry '" + tok + "'");
        }
        alphas.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return alphas;
}

int to_count(double total, double step, const char* what) {
    if (!(step > 0.0)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
    const double ratio = total / step;
    if (!(ratio >= 0.5) || ratio > 2e8) {
        throw std::domain_error(std::string(what) + " = " + std::to_string(step) +
                                " leaves no usable grid");
    }
    return static_cast<int>(std::llround(ratio));
}

int run_solve(const std::string& label, double alpha, double dt, double dx,
              double T, double cg_tol, const std::string& out_path) {
    const int K = to_count(T, dt, "--dt");
    const int N = to_count(1.0, dx, "--dx");
    const tfdiff::Problem problem = tfdiff::problem_from_label(label, alpha);
    const tfdiff::Mesh1D mesh = tfdiff::Mesh1D::uniform(N);
    const tfdiff::TimeGrid grid = tfdiff::make_time_grid(T, K, alpha);

    tfdiff::CgConfig cfg;
    cfg.rel_tol = cg_tol;
    const tfdiff::SolveReport report =
        tfdiff::march(problem, mesh, grid, cfg);

    long total_iters = 0;
    for (int it : report.per_step_cg_iters) total_iters += it;
    std::printf("%s: alpha=%g K=%d (dt=%.6g) N=%d (h=%.6g) T=%g\n",
                label.c_str(), alpha, grid.K, grid.dt, N, mesh.h_max(), T);
    std::printf("cg iterations: %ld total, %.1f per step\n", total_iters,
                static_cast<double>(total_iters) / grid.K);
    if (problem.has_exact()) {
        const tfdiff::ErrorPair err =
            tfdiff::nodal_errors(report.final_state, problem.exact, mesh, T);
        std::printf("error at T: max=%.6e l2=%.6e\n", err.max_error,
                    err.l2_error);
    }
    std::printf("wall time: %.3f s\n", report.wall_time);
    if (!out_path.empty()) {
        tfdiff::emit_profile(report, mesh, problem.exact, T, out_path);
        std::printf("profile written to %s\n", out_path.c_str());
    }
    return 0;
}

int run_converge(const std::string& label, const std::string& alpha_csv,
                 const std::string& axis_name, int levels, int base_K,
                 int base_N, double T, const std::string& out_path) {
    tfdiff::StudySpec spec;
    spec.problem = label;
    spec.alphas = parse_alpha_list(alpha_csv);
    spec.T = T;
    if (axis_name == "time") {
        spec.axis = tfdiff::Axis::time;
    } else if (axis_name == "space") {
        spec.axis = tfdiff::Axis::space;
    } else {
        throw std::invalid_argument("--axis must be 'time' or 'space'");
    }
    for (int i = 0; i < levels; ++i) {
        const int scale = 1 << i;
        if (spec.axis == tfdiff::Axis::time) {
            spec.levels.push_back({base_K * scale, base_N});
        } else {
            spec.levels.push_back({base_K, base_N * scale});
        }
    }

    const std::vector<tfdiff::StudyRow> rows = tfdiff::run_study(spec);
    const bool show_l2 = spec.norms != tfdiff::NormSet::max;
    const bool show_max = spec.norms != tfdiff::NormSet::l2;
    std::printf("alpha      K       N      dt            h            %s%s rate\n",
                show_l2 ? " l2_error     " : "",
                show_max ? " max_error    " : "");
    for (const tfdiff::StudyRow& row : rows) {
        std::printf("%-9g %-7d %-6d %-13.6e %-13.6e", row.alpha, row.K, row.N,
                    row.dt, row.h);
        if (show_l2) std::printf(" %-13.6e", row.l2_error);
        if (show_max) std::printf(" %-13.6e", row.max_error);
        if (row.rate) {
            std::printf(" %.3f\n", *row.rate);
        } else {
            std::printf(" -\n");
        }
    }
    for (double alpha : spec.alphas) {
        std::printf("alpha=%g observed rate (median): %.3f\n", alpha,
                    tfdiff::observed_rate(rows, alpha));
    }
    if (!out_path.empty()) {
        tfdiff::emit_csv(rows, out_path);
        std::printf("study written to %s\n", out_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L1 finite-difference / P1 finite-element solver for the "
                 "Caputo time-fractional diffusion equation on [0,1]"};
    app.require_subcommand(1);

    std::string label;
    double alpha = 0.5;
    double dt = 0.01;
    double dx = 0.01;
    double T = 1.0;
    double cg_tol = 1e-12;
    std::string out_path;

    CLI::App* solve = app.add_subcommand("solve", "run one march");
    solve->add_option("--example", label, "problem label")->required();
    solve->add_option("--alpha", alpha, "fractional order in (0,1)")->required();
    solve->add_option("--dt", dt, "time step")->required();
    solve->add_option("--dx", dx, "space step")->required();
    solve->add_option("--T", T, "final time")->required();
    solve->add_option("--cg-tol", cg_tol, "CG relative residual tolerance");
    solve->add_option("--out", out_path, "profile CSV path");

    std::string alpha_csv;
    std::string axis_name;
    int levels = 4;
    int base_K = 20;
    int base_N = 1000;

    CLI::App* converge = app.add_subcommand("converge", "run a refinement study");
    converge->add_option("--example", label, "problem label")->required();
    converge->add_option("--alpha-list", alpha_csv, "comma-separated alphas")
        ->required();
    converge->add_option("--axis", axis_name, "time | space")->required();
    converge->add_option("--levels", levels, "number of halving levels")
        ->required();
    converge->add_option("--base-K", base_K, "coarsest time-step count")
        ->required();
    converge->add_option("--base-N", base_N, "coarsest space-interval count")
        ->required();
    converge->add_option("--T", T, "final time")->required();
    converge->add_option("--out", out_path, "study CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            return run_solve(label, alpha, dt, dx, T, cg_tol, out_path);
        }
        return run_converge(label, alpha_csv, axis_name, levels, base_K, base_N,
                            T, out_path);
    } catch (const tfdiff::solver_error& err) {
        std::fprintf(stderr, "solver error: %s\n", err.what());
        return 3;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
}
