#include "eigcon/gammabound.hpp"

#include <algorithm>

#include "eigcon/error.hpp"

namespace eigcon {

BlockHessian assemble_block_hessian(const MatrixFamily& fam, const VectorXd& omega) {
    const Index d = fam.dim_omega;
    const Index n = fam.dim_matrix;
    if (omega.size() != d) throw Error(Errc::InvalidArgument, "assemble_block_hessian: dimension mismatch");
    if (!omega.allFinite()) throw Error(Errc::NonFinite, "assemble_block_hessian: parameter is not finite");

    BlockHessian bh;
    bh.blocks.assign(static_cast<std::size_t>(d), std::vector<MatrixXcd>(static_cast<std::size_t>(d)));
    bh.assembled.resize(d * n, d * n);
    for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
            bh.blocks[k][l] = fam.dd_eval(omega, k, l);
            bh.assembled.block(k * n, l * n, n, n) = bh.blocks[k][l];
        }
    return bh;
}

double gamma_from_block_hessian(const BlockHessian& bh) {
    if (bh.assembled.size() == 0) return 0.0;
    const VectorXd ev = hermitian_eigenvalues(bh.assembled);
    return ev[ev.size() - 1];
}

double gershgorin_gamma_radius(double norm_A, double epsilon) {
    if (!(norm_A >= 0.0) || !(epsilon >= 0.0))
        throw Error(Errc::InvalidArgument, "gershgorin_gamma_radius: arguments must be non-negative");
    return std::max(2.0 + 2.0 * norm_A, 2.0 * epsilon * norm_A + 2.0 * norm_A * norm_A + 2.0 * norm_A);
}

GammaReport verify_gamma(const MatrixFamily& fam, double gamma, std::span<const VectorXd> samples, double tol,
                         const SimplicityPolicy& policy) {
    GammaReport rep;
    for (const VectorXd& w : samples) {
        try {
            const MatrixXd h = hess_lambda_min(fam, w, policy);
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(h, Eigen::EigenvaluesOnly);
            rep.max_curvature = std::max(rep.max_curvature, es.eigenvalues().maxCoeff());
            ++rep.evaluated;
        } catch (const Error& e) {
            if (e.code() != Errc::NotSimple) throw;
            ++rep.skipped;
        }
    }
    rep.passed = rep.evaluated == 0 || rep.max_curvature <= gamma + tol;
    return rep;
}

}  // namespace eigcon
