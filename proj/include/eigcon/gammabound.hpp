#pragma once

#include <span>
#include <vector>

#include "eigcon/eigderiv.hpp"

namespace eigcon {

/// The dn x dn matrix whose (k, l) block is d^2A/(dw_k dw_l).
/// Its largest eigenvalue bounds lambda_max of the Hessian of lambda_min
/// at every point where the smallest eigenvalue is simple.
struct BlockHessian {
    std::vector<std::vector<MatrixXcd>> blocks;
    MatrixXcd assembled;
};

BlockHessian assemble_block_hessian(const MatrixFamily& fam, const VectorXd& omega);

/// lambda_max of the assembled block Hessian. A pointwise bound only; a global
/// gamma needs the supremum over the region the iteration can visit.
double gamma_from_block_hessian(const BlockHessian& bh);

/// Global curvature bound for the pseudospectral radius family on
/// {w : w_1 <= ||A|| + eps}, from block Gershgorin discs:
///   max(2 + 2||A||, 2 eps ||A|| + 2 ||A||^2 + 2 ||A||).
double gershgorin_gamma_radius(double norm_A, double epsilon);

struct GammaReport {
    double max_curvature = -std::numeric_limits<double>::infinity();
    bool passed = true;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

/// Samples lambda_max(hess lambda_min) and compares it against gamma
/// (with absolute slack `tol`). Non-simple samples are skipped.
GammaReport verify_gamma(const MatrixFamily& fam, double gamma, std::span<const VectorXd> samples,
                         double tol = 1e-10, const SimplicityPolicy& policy = {});

}  // namespace eigcon
