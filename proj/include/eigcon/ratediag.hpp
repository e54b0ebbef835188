#pragma once

#include <span>
#include <vector>

#include "eigcon/problem.hpp"

namespace eigcon {

enum class RateRegime { Linear, Superlinear, Unknown };

const char* to_string(RateRegime r);

/// Local convergence diagnostics at a limit point w*.
///
/// With V an orthonormal basis of the complement of grad lambda(w*), the
/// projected Jacobian of the iteration map at w* is (gamma I - H_V) / gamma,
/// H_V = V^T hess(w*) V. The asymptotic error ratio lies between
/// predicted_lo and predicted_hi unless the error direction degenerates,
/// in which case convergence is superlinear.
struct RateDiagnostics {
    MatrixXd H_V;
    double predicted_lo = 0.0;
    double predicted_hi = 0.0;
    std::vector<double> empirical_ratios;
    std::vector<double> tangential_fractions;
    RateRegime regime = RateRegime::Unknown;
};

/// The iteration map f(w) = w + (1/gamma)[ (sqrt(|g|^2 - 2 gamma lambda)/|c|) c - g ]
/// evaluated from its closed form, independently of kkt_step. lambda is
/// clamped at zero from above as in kkt_step.
VectorXd fixed_point_map(const Problem& p, const VectorXd& omega, const SolverConfig& cfg = {});

/// d x (d-1) matrix with orthonormal columns spanning the complement of g,
/// built from a Householder reflector. Throws Error(ZeroGradient).
MatrixXd orthonormal_complement(const VectorXd& g);

/// (sigma_min(gamma I - H_V) / gamma, ||gamma I - H_V|| / gamma).
std::pair<double, double> rate_bounds(const MatrixXd& H_V, double gamma);

/// H_V and the predicted rate bounds at omega_star.
RateDiagnostics projected_hessian(const MatrixFamily& fam, const VectorXd& omega_star, double gamma,
                                  const SimplicityPolicy& policy = {});

/// Same, for a caller-chosen basis V of the gradient complement.
RateDiagnostics projected_hessian(const MatrixFamily& fam, const VectorXd& omega_star, double gamma,
                                  const MatrixXd& V, const SimplicityPolicy& policy = {});

/// Ratios e[i+1]/e[i] of consecutive error norms.
std::vector<double> error_ratios(std::span<const double> errors);

/// Error ratios ||w_{k+1} - w*|| / ||w_k - w*|| over the last `tail` usable
/// iterates. Iterates whose error is below `min_error` (or zero) are
/// dropped from the end of the trace first. Throws Error(InsufficientTrace)
/// when fewer than `tail` iterates remain or tail < 2.
std::vector<double> empirical_rate(std::span<const Iterate> trace, const VectorXd& omega_star, int tail,
                                   double min_error = 0.0);

/// A-posteriori uncertainty of using the final iterate as w*: the last step
/// length scaled by r/(1-r), with r the ratio of the last two step lengths
/// clamped to [0, 0.99], and floored at a few ulps of ||w_K||.
double proxy_uncertainty(std::span<const Iterate> trace);

/// |u^T (w_k - w*)| / ||V^T (w_k - w*)|| for each iterate k, u = g/||g||.
/// The list stops at the first iterate whose error is below `min_error` or
/// whose normal component |u^T (w_k - w*)| is below 1e3 eps (1 + ||w*||), the rounding level of the iterates.
std::vector<double> tangential_fractions(std::span<const Iterate> trace, const VectorXd& omega_star,
                                         const VectorXd& grad_star, double min_error = 0.0);

/// Full diagnostics for a finished run, taking the final iterate as w*.
/// Ratios and fractions use only iterates whose error exceeds 100x the
/// proxy uncertainty. Throws what projected_hessian throws.
RateDiagnostics diagnose(const Problem& p, std::span<const Iterate> trace, int tail = 6,
                         const SimplicityPolicy& policy = {});

}  // namespace eigcon
