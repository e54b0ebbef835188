#include "eigcon/ratediag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "eigcon/error.hpp"

namespace eigcon {

const char* to_string(RateRegime r) {
    switch (r) {
    case RateRegime::Linear: return "linear";
    case RateRegime::Superlinear: return "superlinear";
    case RateRegime::Unknown: return "unknown";
    }
    return "unknown";
}

VectorXd fixed_point_map(const Problem& p, const VectorXd& omega, const SolverConfig& cfg) {
    const EigDerivatives der = eig_gradient(p.fam, omega, cfg.simplicity);
    const double lambda = std::min(der.lambda, 0.0);
    const double radicand = der.grad.squaredNorm() - 2.0 * p.gamma * lambda;
    if (!(radicand > cfg.radicand_floor))
        throw Error(Errc::Degenerate, "fixed_point_map: degenerate point", radicand);
    const double scale = std::sqrt(radicand) / p.c.norm();
    return omega + (1.0 / p.gamma) * (scale * p.c - der.grad);
}

MatrixXd orthonormal_complement(const VectorXd& g) {
    const Index d = g.size();
    const double nrm = g.norm();
    if (d == 0 || !(nrm > 0.0)) throw Error(Errc::ZeroGradient, "orthonormal_complement: zero vector");

    // H = I - 2 w w^T / (w^T w) maps g to a multiple of e_0, so columns 1..d-1
    // of H are orthonormal and orthogonal to g.
    VectorXd w = g / nrm;
    w[0] += (w[0] >= 0.0 ? 1.0 : -1.0);
    const MatrixXd h = MatrixXd::Identity(d, d) - (2.0 / w.squaredNorm()) * (w * w.transpose());
    return h.rightCols(d - 1);
}

std::pair<double, double> rate_bounds(const MatrixXd& H_V, double gamma) {
    if (!(gamma > 0.0)) throw Error(Errc::InvalidArgument, "rate_bounds: gamma must be positive");
    if (H_V.size() == 0) return {0.0, 0.0};
    const MatrixXd m = gamma * MatrixXd::Identity(H_V.rows(), H_V.cols()) - 0.5 * (H_V + H_V.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const VectorXd sv = es.eigenvalues().cwiseAbs();
    return {sv.minCoeff() / gamma, sv.maxCoeff() / gamma};
}

RateDiagnostics projected_hessian(const MatrixFamily& fam, const VectorXd& omega_star, double gamma,
                                  const MatrixXd& V, const SimplicityPolicy& policy) {
    const EigDerivatives der = eig_derivatives(fam, omega_star, policy);
    if (!(der.grad.norm() > 0.0)) throw Error(Errc::ZeroGradient, "projected_hessian: gradient vanishes at limit");
    RateDiagnostics out;
    out.H_V = V.transpose() * der.hess * V;
    out.H_V = (out.H_V + out.H_V.transpose()).eval() * 0.5;
    std::tie(out.predicted_lo, out.predicted_hi) = rate_bounds(out.H_V, gamma);
    return out;
}

RateDiagnostics projected_hessian(const MatrixFamily& fam, const VectorXd& omega_star, double gamma,
                                  const SimplicityPolicy& policy) {
    const VectorXd g = grad_lambda_min(fam, omega_star, policy);
    return projected_hessian(fam, omega_star, gamma, orthonormal_complement(g), policy);
}

std::vector<double> error_ratios(std::span<const double> errors) {
    std::vector<double> out;
    for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(errors[i] / errors[i - 1]);
    return out;
}

namespace {

// Errors ||w_k - w*|| up to (excluding) the first one below min_error.
std::vector<double> usable_errors(std::span<const Iterate> trace, const VectorXd& omega_star, double min_error) {
    std::vector<double> errors;
    for (const Iterate& it : trace) {
        const double e = (it.omega - omega_star).norm();
        if (!(e > 0.0) || e < min_error) break;
        errors.push_back(e);
    }
    return errors;
}

}  // namespace

std::vector<double> empirical_rate(std::span<const Iterate> trace, const VectorXd& omega_star, int tail,
                                   double min_error) {
    if (tail < 2) throw Error(Errc::InsufficientTrace, "empirical_rate: tail must be at least 2");
    const std::vector<double> errors = usable_errors(trace, omega_star, min_error);
    if (errors.size() < static_cast<std::size_t>(tail))
        throw Error(Errc::InsufficientTrace, "empirical_rate: only " + std::to_string(errors.size()) +
                                                 " usable iterates for a tail of " + std::to_string(tail));
    return error_ratios(std::span<const double>(errors).last(static_cast<std::size_t>(tail)));
}

double proxy_uncertainty(std::span<const Iterate> trace) {
    if (trace.empty()) return 0.0;
    const VectorXd& last = trace.back().omega;
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + last.norm());
    if (trace.size() < 2) return floor;
    const double s1 = (last - trace[trace.size() - 2].omega).norm();
    double r = 0.99;
    if (trace.size() >= 3) {
        const double s0 = (trace[trace.size() - 2].omega - trace[trace.size() - 3].omega).norm();
        if (s0 > 0.0) r = std::clamp(s1 / s0, 0.0, 0.99);
    }
    return std::max(floor, s1 * r / (1.0 - r));
}

std::vector<double> tangential_fractions(std::span<const Iterate> trace, const VectorXd& omega_star,
                                         const VectorXd& grad_star, double min_error) {
    const double gn = grad_star.norm();
    if (!(gn > 0.0)) throw Error(Errc::ZeroGradient, "tangential_fractions: zero gradient at limit");
    const VectorXd u = grad_star / gn;
    // Iterates satisfy lambda = 0 only up to rounding in lambda_min, so a normal
    // offset this small is noise rather than geometry.
    const double resolvable = 1e3 * std::numeric_limits<double>::epsilon() * (1.0 + omega_star.norm());
    std::vector<double> out;
    for (const Iterate& it : trace) {
        const VectorXd p = it.omega - omega_star;
        const double e = p.norm();
        if (!(e > 0.0) || e < min_error) break;
        const double normal = std::abs(u.dot(p));
        if (normal < resolvable) break;
        const double tangential = std::sqrt(std::max(0.0, e * e - normal * normal));
        out.push_back(tangential > 0.0 ? normal / tangential : std::numeric_limits<double>::infinity());
    }
    return out;
}

RateDiagnostics diagnose(const Problem& p, std::span<const Iterate> trace, int tail,
                         const SimplicityPolicy& policy) {
    if (trace.empty()) throw Error(Errc::InsufficientTrace, "diagnose: empty trace");
    const VectorXd& omega_star = trace.back().omega;
    const EigDerivatives der = eig_gradient(p.fam, omega_star, policy);
    RateDiagnostics out = projected_hessian(p.fam, omega_star, p.gamma, policy);

    const double min_error = 100.0 * proxy_uncertainty(trace);
    const std::vector<double> errors = usable_errors(trace, omega_star, min_error);
    const std::size_t keep = std::min(errors.size(), static_cast<std::size_t>(std::max(tail, 2)));
    out.empirical_ratios = error_ratios(std::span<const double>(errors).last(keep));
    out.tangential_fractions = tangential_fractions(trace, omega_star, der.grad, min_error);

    if (out.empirical_ratios.size() < 2) {
        // Reached the limit from far away in one or two steps.
        out.regime = trace.size() >= 2 ? RateRegime::Superlinear : RateRegime::Unknown;
    } else {
        // Ratios heading to zero: the error settled into the direction the
        // projected Jacobian annihilates.
        out.regime = out.empirical_ratios.back() < 0.01 ? RateRegime::Superlinear : RateRegime::Linear;
    }
    return out;
}

}  // namespace eigcon
