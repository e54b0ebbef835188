#pragma once

#include <optional>
#include <vector>

#include "eigcon/problem.hpp"
#include "eigcon/ratediag.hpp"

namespace eigcon {

enum class Status { Converged, MaxIterations, DegenerateStationary, NotSimpleAbort };

const char* to_string(Status s);

enum class WarningKind {
    /// Smallest eigenvalue nearly multiple at an iterate; derivatives still used.
    NearMultiple,
    /// An iterate came out infeasible, so gamma does not bound the curvature.
    GammaViolation,
};

const char* to_string(WarningKind w);

struct SolverWarning {
    WarningKind kind;
    int k = 0;
    double value = 0.0;  // gap or lambda
};

struct SolveResult {
    Status status = Status::MaxIterations;
    VectorXd omega_star;
    std::vector<Iterate> trace;
    std::optional<RateDiagnostics> diagnostics;
    std::vector<SolverWarning> warnings;

    int iterations() const { return trace.empty() ? 0 : static_cast<int>(trace.size()) - 1; }
    double objective() const { return trace.empty() ? 0.0 : trace.back().objective; }
};

/// q_k(w) = lambda_k + grad_k^T (w - w_k) + (gamma/2) ||w - w_k||^2.
double support_value(const Iterate& it, double gamma, const VectorXd& omega);

struct KktStep {
    VectorXd omega_next;
    double mu_plus = 0.0;
};

/// Maximizer of c^T w over {q_k(w) <= 0}:
///   mu_+ = ||c|| / sqrt(||grad_k||^2 - 2 gamma min(lambda_k, 0)),
///   w_{k+1} = w_k + (1/gamma) [c / mu_+ - grad_k].
/// Throws Error(Degenerate, radicand) when the radicand is at or below
/// `radicand_floor` (grad_k ~ 0 with lambda_k ~ 0).
KktStep kkt_step(const Iterate& it, const VectorXd& c, double gamma, double radicand_floor = 1e-20);

/// Evaluates lambda_min, its gradient and gap at omega.
/// The gradient is left empty when the eigenvalue is not simple.
Iterate make_iterate(const Problem& p, const VectorXd& omega, int k, const SimplicityPolicy& policy = {});

/// Runs the support-function iteration from p.omega0.
/// Throws Error(InfeasibleStart) when lambda_min(omega0) > feasibility_tol.
SolveResult solve(const Problem& p, const SolverConfig& cfg = {});

}  // namespace eigcon
