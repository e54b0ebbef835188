// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "eigcon/eigopt.hpp"
#include "eigcon/error.hpp"
#include "eigcon/gammabound.hpp"
#include "eigcon/matrix_market.hpp"
#include "eigcon/oracle.hpp"
#include "eigcon/pseudospectra.hpp"
#include "fixtures.hpp"

using namespace eigcon;
namespace fs = std::filesystem;

namespace {

// Oracle values frozen after their first computation (201 x 201 grid plus
// refinement, eps = 1). Rows: seeded 10 x 10, then the three 5 x 5 seeds.
struct Frozen {
    std::uint64_t seed;
    Index n;
    double abscissa;
    double radius;
};
constexpr Frozen kFrozen[] = {
    {10, 10, 3.6841815021779825, 4.3370680561533206},
    {51, 5, 2.3453839142577655, 4.4038689746177671},
    {52, 5, 3.738697436375046, 3.738697436375046},
    {53, 5, 4.1003915856117583, 4.1003915856117601},
};
constexpr double kFrozenTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Every trace produced here is also checked for feasibility and monotonicity.
std::vector<std::pair<std::string, std::vector<Iterate>>> g_traces;

SolveResult run(const std::string& label, const Problem& p, const SolverConfig& cfg = {}) {
    SolveResult r = solve(p, cfg);
    g_traces.emplace_back(label, r.trace);
    return r;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int g_failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %2d %-28s %s [%.3fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++g_failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double mean_last(const std::vector<double>& v, std::size_t n) {
    if (v.size() < n) return std::nan("");
    return std::accumulate(v.end() - static_cast<std::ptrdiff_t>(n), v.end(), 0.0) / static_cast<double>(n);
}

std::vector<VectorXd> sample_points(Target target, const MatrixXcd& A, double eps, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<VectorXd> pts;
    const GridSpec box = default_grid(A, eps, 16);
    const double rmax = spectral_norm(A) + eps;
    for (int i = 0; i < count; ++i) {
        VectorXd w(2);
        if (target == Target::Outermost)
            w << rng.uniform(0.0, rmax), rng.uniform(-std::numbers::pi, std::numbers::pi);
        else
            w << box.center.real() + rng.uniform(-box.half_width, box.half_width),
                box.center.imag() + rng.uniform(-box.half_width, box.half_width);
        pts.push_back(w);
    }
    return pts;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string strip_timestamp(const std::string& json) {
    std::istringstream in(json);
    std::string out, line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) out += line + '\n';
    return out;
}

}  // namespace

int main() {
    const MatrixXcd A10 = fixtures::seeded10();
    const fs::path tmp = fs::temp_directory_path() / ("eigcon_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);

    report(1, "unit-disk exactness", [] {
        const auto t0 = Clock::now();
        Problem p = build_abscissa_problem({MatrixXcd::Zero(1, 1), 1.0, Target::Rightmost});
        p.omega0 = VectorXd::Zero(2);
        p.omega0[0] = 0.5;
        const SolveResult r = run("unit disk", p);
        const double dt = seconds_since(t0);
        const double err = std::abs(r.objective() - 1.0);
        const bool superlinear = r.diagnostics && r.diagnostics->regime == RateRegime::Superlinear;
        const bool ok = r.status == Status::Converged && err <= 1e-12 && r.iterations() <= 3 &&
                        (r.omega_star - Eigen::Vector2d(1.0, 0.0)).norm() <= 1e-12 && superlinear && dt < 0.1;
        return Outcome{ok, "iterations=" + std::to_string(r.iterations()) + fmt(" |obj-1|=%.2e", err) +
                               " regime=" + (r.diagnostics ? to_string(r.diagnostics->regime) : "none") +
                               fmt(" time=%.4fs", dt)};
    });

    report(2, "normal-matrix analytic values", [] {
        const auto t0 = Clock::now();
        const MatrixXcd A = fixtures::normal_diag();
        const SolveResult ra = run("normal abscissa", build_problem({A, 0.5, Target::Rightmost}));
        const SolveResult rl = run("normal leftmost", build_problem({A, 0.5, Target::Leftmost}));
        const SolveResult rr = run("normal radius", build_problem({A, 0.5, Target::Outermost}));
        const double dt = seconds_since(t0);
        const double ea = std::abs(pseudospectral_value(Target::Rightmost, ra.omega_star) - 0.8);
        const double el = std::abs(pseudospectral_value(Target::Leftmost, rl.omega_star) + 1.5);
        const double er = std::abs(pseudospectral_value(Target::Outermost, rr.omega_star) - 1.5);
        const bool ok = ea <= 1e-8 && el <= 1e-8 && er <= 1e-8 && dt < 1.0;
        return Outcome{ok, fmt("|alpha-0.8|=%.2e", ea) + fmt(" |left+1.5|=%.2e", el) + fmt(" |rho-1.5|=%.2e", er) +
                               fmt(" time=%.4fs", dt)};
    });

    SolveResult abs10, rad10;
    Problem pabs10, prad10;

    report(3, "rate vs projected Hessian", [&] {
        const auto t0 = Clock::now();
        pabs10 = build_problem({A10, 1.0, Target::Rightmost});
        prad10 = build_problem({A10, 1.0, Target::Outermost});
        abs10 = run("seeded abscissa", pabs10);
        rad10 = run("seeded radius", prad10);
        const double dt = seconds_since(t0);
        // Recomputed here rather than read from the solver's diagnostics: the
        // final iterate stands in for w*, and only errors well above its own
        // error (<< 1e-9 at step_tol 1e-12) enter the ratios.
        auto measure = [](const Problem& p, const SolveResult& r, double& mean, double& predicted) {
            const VectorXd& ws = r.omega_star;
            std::vector<double> ratios;
            for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
                const double e0 = (r.trace[k].omega - ws).norm(), e1 = (r.trace[k + 1].omega - ws).norm();
                if (e1 < 1e-7) break;
                ratios.push_back(e1 / e0);
            }
            mean = mean_last(ratios, 5);
            const VectorXd g = grad_lambda_min(p.fam, ws);
            Eigen::Vector2d v(-g[1], g[0]);
            v.normalize();
            const double hv = v.dot(hess_lambda_min(p.fam, ws) * v);
            predicted = std::abs(1.0 - hv / p.gamma);
        };
        double ma, pa, mr, pr;
        measure(pabs10, abs10, ma, pa);
        measure(prad10, rad10, mr, pr);
        const bool ok = abs10.status == Status::Converged && rad10.status == Status::Converged &&
                        std::abs(ma - pa) <= 0.05 && std::abs(mr - pr) <= 0.05 && dt < 10.0;
        return Outcome{ok, fmt("abscissa mean=%.4f", ma) + fmt(" predicted=%.4f", pa) + " (it=" +
                               std::to_string(abs10.iterations()) + ")" + fmt("; radius mean=%.4f", mr) +
                               fmt(" predicted=%.4f", pr) + " (it=" + std::to_string(rad10.iterations()) + ")" +
                               fmt(" time=%.3fs", dt)};
    });

    report(4, "derivative oracle", [&] {
        const auto t0 = Clock::now();
        double gw = 0.0, hw = 0.0;
        int skipped = 0;
        for (Target t : {Target::Rightmost, Target::Outermost}) {
            const MatrixFamily fam = t == Target::Rightmost ? abscissa_family(A10, 1.0) : radius_family(A10, 1.0);
            // The first 100 points with a simple eigenvalue on the whole stencil.
            const std::vector<VectorXd> pts = sample_points(t, A10, 1.0, 400, t == Target::Rightmost ? 401 : 402);
            int used = 0;
            for (std::size_t i = 0; i < pts.size() && used < 100; ++i) {
                const VectorXd& w = pts[i];
                try {
                    const DerivativeCheck dc = check_derivatives(fam, w, 1e-5);
                    gw = std::max(gw, dc.grad_err);
                    hw = std::max(hw, dc.hess_err);
                    ++used;
                } catch (const Error& e) {
                    if (e.code() != Errc::NotSimple) throw;
                    ++skipped;
                }
            }
        }
        const double dt = seconds_since(t0);
        const bool ok = gw <= 1e-5 && hw <= 1e-3 && dt < 10.0 && skipped < 300;
        return Outcome{ok, fmt("worst grad rel err=%.2e", gw) + fmt(" worst hess rel err=%.2e", hw) +
                               " skipped=" + std::to_string(skipped) + fmt(" time=%.3fs", dt)};
    });

    report(5, "support-function inequality", [&] {
        double worst_valid = std::numeric_limits<double>::infinity();
        double worst_invalid = std::numeric_limits<double>::infinity();
        Problem bad = pabs10;
        bad.gamma = 0.5;
        for (const Iterate& it : abs10.trace) {
            if (it.grad.size() == 0) continue;
            worst_valid = std::min(worst_valid, sample_support_inequality(pabs10, it, 1000, 2.0, 500 + it.k));
            worst_invalid = std::min(worst_invalid, sample_support_inequality(bad, it, 1000, 2.0, 500 + it.k));
        }
        const bool ok = worst_valid >= -1e-10 && worst_invalid < -1e-10;
        return Outcome{ok, "iterates=" + std::to_string(abs10.trace.size()) + fmt(" worst(gamma=2)=%.2e", worst_valid) +
                               fmt(" worst(gamma=0.5)=%.2e", worst_invalid)};
    });

    report(8, "oracle agreement", [&] {
        const auto t0 = Clock::now();
        double worst_solver = 0.0, worst_frozen = 0.0;
        for (const Frozen& f : kFrozen) {
            const MatrixXcd A = fixtures::seeded_real_matrix(f.n, f.seed);
            const GridSpec g = default_grid(A, 1.0);
            const OracleResult oa = grid_abscissa(A, 1.0, g);
            const OracleResult orad = grid_radius(A, 1.0, g);
            const SolveResult sa = f.seed == fixtures::kSeed10 ? abs10 : run("5x5 abscissa", build_problem({A, 1.0, Target::Rightmost}));
            const SolveResult sr = f.seed == fixtures::kSeed10 ? rad10 : run("5x5 radius", build_problem({A, 1.0, Target::Outermost}));
            worst_solver = std::max({worst_solver, std::abs(oa.value - pseudospectral_value(Target::Rightmost, sa.omega_star)),
                                     std::abs(orad.value - pseudospectral_value(Target::Outermost, sr.omega_star))});
            worst_frozen = std::max({worst_frozen, std::abs(oa.value - f.abscissa), std::abs(orad.value - f.radius)});
        }
        const double dt = seconds_since(t0);
        const bool ok = worst_solver <= 1e-6 && worst_frozen <= kFrozenTol && dt < 60.0;
        return Outcome{ok, fmt("max |oracle-solver|=%.2e", worst_solver) + fmt(" max |oracle-frozen|=%.2e", worst_frozen) +
                               fmt(" time=%.2fs", dt)};
    });

    report(6, "feasibility and monotonicity", [] {
        double worst_lambda = -std::numeric_limits<double>::infinity();
        double worst_drop = 0.0;
        std::size_t iterates = 0;
        for (const auto& [label, trace] : g_traces) {
            for (std::size_t k = 0; k < trace.size(); ++k) {
                ++iterates;
                worst_lambda = std::max(worst_lambda, trace[k].lambda);
                if (k > 0) {
                    const double slack = 1e-14 * std::max(1.0, std::abs(trace[k - 1].objective));
                    worst_drop = std::max(worst_drop, (trace[k - 1].objective - trace[k].objective) - slack);
                }
            }
        }
        const bool ok = worst_lambda <= 1e-10 && worst_drop <= 0.0;
        return Outcome{ok, "runs=" + std::to_string(g_traces.size()) + " iterates=" + std::to_string(iterates) +
                               fmt(" max lambda=%.2e", worst_lambda) + fmt(" max excess drop=%.2e", worst_drop)};
    });

    report(7, "curvature bound", [&] {
        double worst_block = -std::numeric_limits<double>::infinity();
        double worst_gersh = -std::numeric_limits<double>::infinity();
        int counted[2] = {0, 0};
        const double gersh = gershgorin_gamma_radius(spectral_norm(A10), 1.0);
        for (Target t : {Target::Rightmost, Target::Outermost}) {
            const MatrixFamily fam = t == Target::Rightmost ? abscissa_family(A10, 1.0) : radius_family(A10, 1.0);
            int& used = counted[t == Target::Rightmost ? 0 : 1];
            for (std::uint64_t s = 700; used < 200; ++s) {
                const VectorXd w = sample_points(t, A10, 1.0, 1, s)[0];
                double curv;
                try {
                    const MatrixXd H = hess_lambda_min(fam, w);
                    curv = Eigen::SelfAdjointEigenSolver<MatrixXd>(H, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
                } catch (const Error& e) {
                    if (e.code() != Errc::NotSimple) throw;
                    continue;
                }
                ++used;
                const double block = gamma_from_block_hessian(assemble_block_hessian(fam, w));
                worst_block = std::max(worst_block, curv - block);
                if (t == Target::Outermost) worst_gersh = std::max(worst_gersh, curv - gersh);
            }
        }
        const bool ok = worst_block <= 1e-10 && worst_gersh <= 1e-10;
        return Outcome{ok, "points=" + std::to_string(counted[0]) + "+" + std::to_string(counted[1]) +
                               fmt(" max(curv-block)=%.3g", worst_block) + fmt(" max(curv-gershgorin)=%.3g", worst_gersh)};
    });

    report(9, "tangential approach", [&] {
        if (!abs10.diagnostics || !rad10.diagnostics) return Outcome{false, "missing diagnostics"};
        const auto& ta = abs10.diagnostics->tangential_fractions;
        const auto& tr = rad10.diagnostics->tangential_fractions;
        if (ta.empty() || tr.empty()) return Outcome{false, "no tangential fractions"};
        const bool ok = ta.back() <= 0.05 && tr.back() <= 0.05;
        return Outcome{ok, fmt("abscissa final=%.2e", ta.back()) + fmt(" radius final=%.2e", tr.back())};
    });

    report(10, "determinism", [&] {
        const fs::path mtx = tmp / "seeded10.mtx";
        write_matrix_market_file(mtx.string(), A10);
        std::string outputs[2][2];
        const char* cmds[2] = {"psa", "psr"};
        for (int c = 0; c < 2; ++c)
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path json = tmp / ("run_" + std::to_string(c) + "_" + std::to_string(rep) + ".json");
                const std::string cmd = std::string("\"") + EIGCON_CLI_PATH + "\" " + cmds[c] + " \"" + mtx.string() +
                                        "\" --epsilon 1 --json \"" + json.string() + "\" >/dev/null 2>&1";
                if (std::system(cmd.c_str()) != 0) return Outcome{false, std::string("CLI failed: ") + cmds[c]};
                outputs[c][rep] = read_file(json);
            }
        const bool same = strip_timestamp(outputs[0][0]) == strip_timestamp(outputs[0][1]) &&
                          strip_timestamp(outputs[1][0]) == strip_timestamp(outputs[1][1]);
        const bool nonempty = outputs[0][0].size() > 100 && outputs[1][0].size() > 100;
        return Outcome{same && nonempty, same ? "psa and psr JSON byte-identical across runs" : "JSON differs"};
    });

    std::error_code ec;
    fs::remove_all(tmp, ec);
    std::printf("%s: %d failure(s)\n", g_failures == 0 ? "ALL PASS" : "FAILED", g_failures);
    return g_failures == 0 ? 0 : 1;
}
