#include "eigcon/eigopt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigcon/error.hpp"

namespace eigcon {

const char* to_string(Status s) {
    switch (s) {
    case Status::Converged: return "Converged";
    case Status::MaxIterations: return "MaxIterations";
    case Status::DegenerateStationary: return "DegenerateStationary";
    case Status::NotSimpleAbort: return "NotSimpleAbort";
    }
    return "Unknown";
}

const char* to_string(WarningKind w) {
    switch (w) {
    case WarningKind::NearMultiple: return "NearMultiple";
    case WarningKind::GammaViolation: return "GammaViolation";
    }
    return "Unknown";
}

void validate(const Problem& p) {
    const Index d = p.fam.dim_omega;
    if (d <= 0 || p.fam.dim_matrix <= 0)
        throw Error(Errc::InvalidArgument, "problem: matrix family has non-positive dimensions");
    if (!p.fam.eval || !p.fam.d_eval || !p.fam.dd_eval)
        throw Error(Errc::InvalidArgument, "problem: matrix family is missing an evaluation map");
    if (p.c.size() != d || p.omega0.size() != d)
        throw Error(Errc::InvalidArgument, "problem: c and omega0 must have the family's parameter dimension");
    if (!p.c.allFinite() || !p.omega0.allFinite())
        throw Error(Errc::NonFinite, "problem: c or omega0 is not finite");
    if (!(p.c.norm() > 0.0)) throw Error(Errc::InvalidArgument, "problem: objective vector c must be nonzero");
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
        throw Error(Errc::InvalidArgument, "problem: gamma must be positive and finite");
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.step_tol > 0.0) || !(cfg.feasibility_tol > 0.0) || !(cfg.radicand_floor > 0.0))
        throw Error(Errc::InvalidArgument, "solver config: tolerances must be positive");
    if (cfg.max_iter <= 0) throw Error(Errc::InvalidArgument, "solver config: max_iter must be positive");
    if (!(cfg.simplicity.fail_tol > 0.0) || cfg.simplicity.warn_tol < cfg.simplicity.fail_tol)
        throw Error(Errc::InvalidArgument, "solver config: need 0 < simplicity fail_tol <= warn_tol");
}

double support_value(const Iterate& it, double gamma, const VectorXd& omega) {
    const VectorXd delta = omega - it.omega;
    return it.lambda + it.grad.dot(delta) + 0.5 * gamma * delta.squaredNorm();
}

KktStep kkt_step(const Iterate& it, const VectorXd& c, double gamma, double radicand_floor) {
    const double lambda = std::min(it.lambda, 0.0);
    const double radicand = it.grad.squaredNorm() - 2.0 * gamma * lambda;
    if (!(radicand > radicand_floor)) {
        std::ostringstream msg;
        msg << "degenerate support step at iteration " << it.k << " (radicand " << radicand << ")";
        throw Error(Errc::Degenerate, msg.str(), radicand);
    }
    KktStep step;
    step.mu_plus = c.norm() / std::sqrt(radicand);
    step.omega_next = it.omega + (c / step.mu_plus - it.grad) / gamma;
    return step;
}

Iterate make_iterate(const Problem& p, const VectorXd& omega, int k, const SimplicityPolicy& policy) {
    Iterate it;
    it.k = k;
    it.omega = omega;
    it.objective = p.c.dot(omega);
    const EigenPair ep = eig_at(p.fam, omega);
    it.lambda = ep.values[0];
    it.gap = ep.gap;
    if (classify_gap(ep.gap, ep.values[0], policy) == Simplicity::Multiple) return it;
    const VectorXcd v = ep.vectors.col(0);
    it.grad.resize(p.fam.dim_omega);
    for (Index j = 0; j < p.fam.dim_omega; ++j) it.grad[j] = v.dot(p.fam.d_eval(omega, j) * v).real();
    return it;
}

SolveResult solve(const Problem& p, const SolverConfig& cfg) {
    validate(p);
    validate(cfg);

    SolveResult res;
    Iterate cur = make_iterate(p, p.omega0, 0, cfg.simplicity);
    if (cur.lambda > cfg.feasibility_tol) {
        std::ostringstream msg;
        msg << "starting point is infeasible (lambda_min = " << cur.lambda << ")";
        throw Error(Errc::InfeasibleStart, msg.str(), cur.lambda);
    }

    auto note_simplicity = [&](const Iterate& it) {
        if (classify_gap(it.gap, it.lambda, cfg.simplicity) == Simplicity::NearMultiple)
            res.warnings.push_back({WarningKind::NearMultiple, it.k, it.gap});
    };
    note_simplicity(cur);
    res.trace.push_back(cur);

    res.status = Status::MaxIterations;
    for (int k = 0;; ++k) {
        if (cur.grad.size() == 0) {
            res.status = Status::NotSimpleAbort;
            break;
        }
        if (k >= cfg.max_iter) break;

        KktStep step;
        try {
            step = kkt_step(cur, p.c, p.gamma, cfg.radicand_floor);
        } catch (const Error& e) {
            if (e.code() != Errc::Degenerate) throw;
            res.status = Status::DegenerateStationary;
            break;
        }
        res.trace.back().mu_plus = step.mu_plus;

        Iterate next = make_iterate(p, step.omega_next, k + 1, cfg.simplicity);
        if (next.lambda > cfg.feasibility_tol)
            res.warnings.push_back({WarningKind::GammaViolation, next.k, next.lambda});
        note_simplicity(next);
        res.trace.push_back(next);

        const double moved = (next.omega - cur.omega).norm();
        cur = std::move(next);
        if (cur.grad.size() == 0) {
            res.status = Status::NotSimpleAbort;
            break;
        }
        if (moved <= cfg.step_tol * (1.0 + res.trace[res.trace.size() - 2].omega.norm())) {
            res.status = Status::Converged;
            break;
        }
    }
    res.omega_star = res.trace.back().omega;

    if (cfg.record_hessian_at_end &&
        (res.status == Status::Converged || res.status == Status::MaxIterations)) {
        try {
            res.diagnostics = diagnose(p, res.trace, 6, cfg.simplicity);
        } catch (const Error&) {
            // ZeroGradient or NotSimple at the limit: no diagnostics to report.
        }
    }
    return res;
}

}  // namespace eigcon
