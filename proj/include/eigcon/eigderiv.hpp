#pragma once

#include "eigcon/matfun.hpp"

namespace eigcon {

/// Simplicity thresholds for the smallest eigenvalue, applied to
/// gap / max(1, |lambda_min|). Below `fail_tol` the derivative formulas are
/// rejected; between `fail_tol` and `warn_tol` they are used but flagged.
struct SimplicityPolicy {
    double warn_tol = 1e-8;
    double fail_tol = 1e-12;
};

enum class Simplicity { Simple, NearMultiple, Multiple };

Simplicity classify_gap(double gap, double lambda, const SimplicityPolicy& policy = {});

struct EigDerivatives {
    double lambda = 0.0;
    VectorXd grad;
    MatrixXd hess;
    double gap = 0.0;
    /// max |H - H^T| before symmetrization, relative to max(1, max |H|).
    double hess_asymmetry = 0.0;
    bool near_multiple = false;
};

/// Gradient of lambda_min(A(w)): component j is v^* (dA/dw_j) v.
/// Throws Error(NotSimple, gap) when the gap is below policy.fail_tol.
VectorXd grad_lambda_min(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy = {});

/// Hessian of lambda_min(A(w)) from the full eigendecomposition:
///   H_kl = v^* A_kl v + 2 Re sum_{m>0} (v^* A_k v_m)(v_m^* A_l v) / (lambda_0 - lambda_m),
/// returned symmetrized.
MatrixXd hess_lambda_min(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy = {});

/// Value, gradient and Hessian from one decomposition.
EigDerivatives eig_derivatives(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy = {});

/// Value and gradient only (skips the second-order sum).
EigDerivatives eig_gradient(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy = {});

struct DerivativeCheck {
    double grad_err = 0.0;
    double hess_err = 0.0;
};

/// ||a - b|| / max(||a||, ||b||), falling back to the absolute difference when
/// both norms are below `abs_floor`.
double relative_error(const MatrixXd& analytic, const MatrixXd& reference, double abs_floor = 1e-8);

/// Compares grad_lambda_min with central differences of lambda_min and
/// hess_lambda_min with central differences of grad_lambda_min.
/// Every stencil point must be simple (Error(NotSimple) otherwise).
DerivativeCheck check_derivatives(const MatrixFamily& fam, const VectorXd& omega, double step,
                                  const SimplicityPolicy& policy = {});

}  // namespace eigcon
