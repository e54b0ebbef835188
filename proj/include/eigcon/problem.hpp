#pragma once

#include <optional>

#include "eigcon/eigderiv.hpp"

namespace eigcon {

/// maximize c^T w  subject to  lambda_min(A(w)) <= 0.
///
/// `gamma` must bound lambda_max of the Hessian of lambda_min(A(.)) at every
/// point where the smallest eigenvalue is simple. The solver trusts it.
struct Problem {
    VectorXd c;
    MatrixFamily fam;
    double gamma = 0.0;
    VectorXd omega0;
};

struct SolverConfig {
    double step_tol = 1e-12;
    double feasibility_tol = 1e-10;
    int max_iter = 500;
    double radicand_floor = 1e-20;
    bool record_hessian_at_end = true;
    SimplicityPolicy simplicity{};
};

/// State at one point of the iteration.
struct Iterate {
    int k = 0;
    VectorXd omega;
    double lambda = 0.0;
    /// Empty when the smallest eigenvalue was not simple at omega.
    VectorXd grad;
    /// Multiplier scale of the step taken from this iterate; unset when no
    /// step was taken from it (the final iterate).
    std::optional<double> mu_plus;
    double objective = 0.0;
    double gap = 0.0;
};

/// Throws Error(InvalidArgument) when shapes or signs are off.
void validate(const Problem& p);
void validate(const SolverConfig& cfg);

}  // namespace eigcon
