// Command-line front end: pseudospectral abscissa / radius solves, the grid
// oracle, derivative and curvature self-checks, and boundary polylines.
//
// Exit codes: 0 converged (or checks passed), 1 input or usage error,
// 2 max iterations, 3 degenerate stationary point, 4 non-simple eigenvalue,
// 5 a self-check failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eigcon/eigopt.hpp"
#include "eigcon/error.hpp"
#include "eigcon/gammabound.hpp"
#include "eigcon/matrix_market.hpp"
#include "eigcon/oracle.hpp"
#include "eigcon/pseudospectra.hpp"
#include "eigcon/random.hpp"
#include "eigcon/run_record.hpp"

namespace {

using namespace eigcon;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCheckFailed = 5;

int exit_code(Status s) {
    switch (s) {
    case Status::Converged: return 0;
    case Status::MaxIterations: return 2;
    case Status::DegenerateStationary: return 3;
    case Status::NotSimpleAbort: return 4;
    }
    return kExitInput;
}

struct Loaded {
    MatrixXcd A;
    std::string digest;
};

Loaded load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    std::istringstream text(bytes);
    try {
        return {read_matrix_market(text), sha256_digest(bytes)};
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what(), e.value());
    }
}

std::string print_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15f", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct SolveOptions {
    std::string matrix_file;
    double epsilon = 0.0;
    bool leftmost = false;
    std::optional<double> gamma;
    double tol = SolverConfig{}.step_tol;
    int max_iter = SolverConfig{}.max_iter;
    std::string trace_out;
    std::string json_out;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o) {
    cmd->add_option("matrix_file", o.matrix_file, "Matrix Market file")->required();
    cmd->add_option("--epsilon", o.epsilon, "perturbation level")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", o.gamma, "override the curvature bound")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", o.tol, "relative step tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iter, "iteration limit")->check(CLI::PositiveNumber);
    cmd->add_option("--trace", o.trace_out, "write the iterate trace as CSV");
    cmd->add_option("--json", o.json_out, "write a JSON run record");
}

int run_solve(const std::string& command, const SolveOptions& o, Target target) {
    const Loaded in = load(o.matrix_file);
    const PseudospectrumSpec spec{in.A, o.epsilon, target};
    Problem p = build_problem(spec);
    std::string gamma_source = target == Target::Outermost ? "gershgorin" : "analytic";
    if (o.gamma) {
        p.gamma = *o.gamma;
        gamma_source = "user";
    }
    SolverConfig cfg;
    cfg.step_tol = o.tol;
    cfg.max_iter = o.max_iter;

    const SolveResult res = solve(p, cfg);
    for (const SolverWarning& w : res.warnings)
        std::cerr << "warning: " << to_string(w.kind) << " at iteration " << w.k << " ("
                  << (w.kind == WarningKind::GammaViolation ? "lambda" : "gap") << " = " << w.value << ")\n";

    std::cout << print_value(pseudospectral_value(target, res.omega_star)) << '\n';
    std::cerr << "status: " << to_string(res.status) << ", iterations: " << res.iterations()
              << ", gamma: " << p.gamma << " (" << gamma_source << ")\n";

    if (!o.trace_out.empty()) {
        std::ofstream out(o.trace_out);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + o.trace_out + "'");
        write_trace_csv(out, res.trace);
    }
    if (!o.json_out.empty()) {
        RunRecord rec = make_run_record(command, in.digest, cfg, spec, p, gamma_source, res);
        rec.timestamp = utc_timestamp();
        std::ofstream out(o.json_out);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + o.json_out + "'");
        out << nlohmann::json(rec).dump(2) << '\n';
    }
    return exit_code(res.status);
}

struct OracleOptions {
    std::string matrix_file;
    double epsilon = 0.0;
    std::string target = "abscissa";
    int resolution = 201;
};

int run_oracle(const OracleOptions& o) {
    const Loaded in = load(o.matrix_file);
    const Target target = parse_target(o.target);
    const GridSpec g = default_grid(in.A, o.epsilon, o.resolution);
    OracleResult r;
    switch (target) {
    case Target::Rightmost: r = grid_abscissa(in.A, o.epsilon, g); break;
    case Target::Leftmost: r = grid_leftmost(in.A, o.epsilon, g); break;
    case Target::Outermost: r = grid_radius(in.A, o.epsilon, g); break;
    }
    std::cout << print_value(r.value) << '\n';
    std::cerr << "grid value: " << r.grid_value << ", point: (" << r.point.real() << ", " << r.point.imag()
              << "), half-width: " << r.grid.half_width << '\n';
    return kExitOk;
}

struct CheckOptions {
    std::string matrix_file;
    double epsilon = 0.0;
    int samples = 100;
    std::uint64_t seed = 42;
    std::optional<double> gamma;
    std::string target = "abscissa";
};

int run_check(const CheckOptions& o) {
    const Loaded in = load(o.matrix_file);
    const Target target = parse_target(o.target) == Target::Outermost ? Target::Outermost : Target::Rightmost;
    const PseudospectrumSpec spec{in.A, o.epsilon, target};
    Problem p = build_problem(spec);
    if (o.gamma) p.gamma = *o.gamma;

    // Sample points: the grid box for the abscissa family; w_1 in [0, ||A|| + eps]
    // and a full turn of angles for the radius family.
    Rng rng(o.seed);
    const GridSpec box = default_grid(in.A, o.epsilon, 16);
    const double rmax = spectral_norm(in.A) + o.epsilon;
    std::vector<VectorXd> points;
    for (int i = 0; i < o.samples; ++i) {
        VectorXd w(2);
        if (target == Target::Outermost)
            w << rng.uniform(0.0, rmax), rng.uniform(-std::numbers::pi, std::numbers::pi);
        else
            w << box.center.real() + rng.uniform(-box.half_width, box.half_width),
                box.center.imag() + rng.uniform(-box.half_width, box.half_width);
        points.push_back(w);
    }

    double grad_worst = 0.0, hess_worst = 0.0;
    int skipped = 0;
    for (const VectorXd& w : points) {
        try {
            const DerivativeCheck dc = check_derivatives(p.fam, w, 1e-5);
            grad_worst = std::max(grad_worst, dc.grad_err);
            hess_worst = std::max(hess_worst, dc.hess_err);
        } catch (const Error& e) {
            if (e.code() != Errc::NotSimple) throw;
            ++skipped;
        }
    }

    SolverConfig cfg;
    const SolveResult res = solve(p, cfg);
    double support_worst = std::numeric_limits<double>::infinity();
    const std::size_t stride = std::max<std::size_t>(1, res.trace.size() / 20);
    for (std::size_t k = 0; k < res.trace.size(); k += stride) {
        const Iterate& it = res.trace[k];
        if (it.grad.size() == 0) continue;
        support_worst = std::min(support_worst, sample_support_inequality(p, it, o.samples, 1.0, o.seed + k));
    }

    const GammaReport gr = verify_gamma(p.fam, p.gamma, points);

    struct Row {
        const char* name;
        double observed;
        double threshold;
        bool pass;
    };
    const Row rows[] = {
        {"gradient", grad_worst, 1e-5, grad_worst <= 1e-5},
        {"hessian", hess_worst, 1e-3, hess_worst <= 1e-3},
        {"support", support_worst, -1e-10, support_worst >= -1e-10},
        {"gamma", gr.max_curvature, p.gamma, gr.passed},
    };
    bool all = true;
    std::printf("%-10s %-24s %-24s %s\n", "check", "worst", "threshold", "result");
    for (const Row& r : rows) {
        std::printf("%-10s %-24.16g %-24.16g %s\n", r.name, r.observed, r.threshold, r.pass ? "pass" : "FAIL");
        all = all && r.pass;
    }
    if (skipped > 0) std::printf("(%d derivative samples skipped: eigenvalue not simple on the stencil)\n", skipped);
    return all ? kExitOk : kExitCheckFailed;
}

struct BoundaryOptions {
    std::string matrix_file;
    double epsilon = 0.0;
    int angles = 64;
    std::string out;
};

int run_boundary(const BoundaryOptions& o) {
    const Loaded in = load(o.matrix_file);
    const std::vector<cplx> pts = boundary_samples({in.A, o.epsilon, Target::Rightmost}, o.angles);
    if (o.out.empty()) {
        write_boundary_csv(std::cout, pts);
    } else {
        std::ofstream out(o.out);
        if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + o.out + "'");
        write_boundary_csv(out, pts);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear objectives under a smallest-eigenvalue constraint: pseudospectral abscissa and radius"};
    app.require_subcommand(1);

    SolveOptions psa_opts, psr_opts;
    auto* psa = app.add_subcommand("psa", "pseudospectral abscissa (or leftmost real part)");
    add_solve_options(psa, psa_opts);
    psa->add_flag("--leftmost", psa_opts.leftmost, "compute the leftmost real part instead");
    auto* psr = app.add_subcommand("psr", "pseudospectral radius");
    add_solve_options(psr, psr_opts);

    OracleOptions oracle_opts;
    auto* oracle = app.add_subcommand("oracle", "grid-and-bisection reference value");
    oracle->add_option("matrix_file", oracle_opts.matrix_file, "Matrix Market file")->required();
    oracle->add_option("--epsilon", oracle_opts.epsilon, "perturbation level")->required()->check(CLI::PositiveNumber);
    oracle->add_option("--target", oracle_opts.target, "abscissa | leftmost | radius")
        ->check(CLI::IsMember({"abscissa", "rightmost", "leftmost", "radius", "outermost"}));
    oracle->add_option("--resolution", oracle_opts.resolution, "grid points per axis")->check(CLI::Range(16, 100000));

    CheckOptions check_opts;
    auto* check = app.add_subcommand("check", "derivative, support-function and curvature self-checks");
    check->add_option("matrix_file", check_opts.matrix_file, "Matrix Market file")->required();
    check->add_option("--epsilon", check_opts.epsilon, "perturbation level")->required()->check(CLI::PositiveNumber);
    check->add_option("--samples", check_opts.samples, "samples per check")->check(CLI::Range(1, 1000000));
    check->add_option("--seed", check_opts.seed, "random seed");
    check->add_option("--gamma", check_opts.gamma, "override the curvature bound")->check(CLI::PositiveNumber);
    check->add_option("--target", check_opts.target, "abscissa | radius")
        ->check(CLI::IsMember({"abscissa", "rightmost", "radius", "outermost"}));

    BoundaryOptions boundary_opts;
    auto* boundary = app.add_subcommand("boundary", "sample the boundary of the pseudospectrum");
    boundary->add_option("matrix_file", boundary_opts.matrix_file, "Matrix Market file")->required();
    boundary->add_option("--epsilon", boundary_opts.epsilon, "perturbation level")->required()->check(CLI::PositiveNumber);
    boundary->add_option("--angles", boundary_opts.angles, "number of rays (>= 8)")->check(CLI::Range(8, 1000000));
    boundary->add_option("--out", boundary_opts.out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*psa) return run_solve("psa", psa_opts, psa_opts.leftmost ? Target::Leftmost : Target::Rightmost);
        if (*psr) return run_solve("psr", psr_opts, Target::Outermost);
        if (*oracle) return run_oracle(oracle_opts);
        if (*check) return run_check(check_opts);
        if (*boundary) return run_boundary(boundary_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
