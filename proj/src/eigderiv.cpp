#include "eigcon/eigderiv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigcon/error.hpp"

namespace eigcon {

Simplicity classify_gap(double gap, double lambda, const SimplicityPolicy& policy) {
    const double scale = std::max(1.0, std::abs(lambda));
    if (gap <= policy.fail_tol * scale) return Simplicity::Multiple;
    if (gap <= policy.warn_tol * scale) return Simplicity::NearMultiple;
    return Simplicity::Simple;
}

namespace {

void require_simple(const EigenPair& ep, const SimplicityPolicy& policy) {
    if (classify_gap(ep.gap, ep.values[0], policy) == Simplicity::Multiple) {
        std::ostringstream msg;
        msg << "smallest eigenvalue is not simple (gap " << ep.gap << ")";
        throw Error(Errc::NotSimple, msg.str(), ep.gap);
    }
}

EigDerivatives derivatives(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy,
                           bool second_order) {
    const EigenPair ep = eig_at(fam, omega);
    require_simple(ep, policy);

    const Index d = fam.dim_omega;
    const Index n = ep.values.size();
    const VectorXcd v = ep.vectors.col(0);

    EigDerivatives out;
    out.lambda = ep.values[0];
    out.gap = ep.gap;
    out.near_multiple = classify_gap(ep.gap, ep.values[0], policy) == Simplicity::NearMultiple;
    out.grad.resize(d);

    // left(k)[m] = v^* A_k v_m and right(k)[m] = v_m^* A_k v.
    MatrixXcd left(n, d), right(n, d);
    for (Index k = 0; k < d; ++k) {
        const MatrixXcd ak = fam.d_eval(omega, k);
        const VectorXcd akv = ak * v;
        right.col(k) = ep.vectors.adjoint() * akv;
        left.col(k) = (v.adjoint() * ak * ep.vectors).transpose();
        out.grad[k] = v.dot(akv).real();
    }
    if (!second_order) return out;

    MatrixXd h(d, d);
    for (Index k = 0; k < d; ++k) {
        for (Index l = 0; l < d; ++l) {
            cplx sum = v.dot(fam.dd_eval(omega, k, l) * v);
            cplx cross = 0.0;
            for (Index m = 1; m < n; ++m)
                cross += left(m, k) * right(m, l) / (ep.values[0] - ep.values[m]);
            h(k, l) = sum.real() + 2.0 * cross.real();
        }
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    out.hess_asymmetry = (h - h.transpose()).cwiseAbs().maxCoeff() / scale;
    out.hess = (h + h.transpose()) * 0.5;
    return out;
}

}  // namespace

EigDerivatives eig_derivatives(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy) {
    return derivatives(fam, omega, policy, true);
}

EigDerivatives eig_gradient(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy) {
    return derivatives(fam, omega, policy, false);
}

VectorXd grad_lambda_min(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy) {
    return derivatives(fam, omega, policy, false).grad;
}

MatrixXd hess_lambda_min(const MatrixFamily& fam, const VectorXd& omega, const SimplicityPolicy& policy) {
    return derivatives(fam, omega, policy, true).hess;
}

double relative_error(const MatrixXd& analytic, const MatrixXd& reference, double abs_floor) {
    const double diff = (analytic - reference).norm();
    const double den = std::max(analytic.norm(), reference.norm());
    if (den < abs_floor) return diff;
    return diff / den;
}

DerivativeCheck check_derivatives(const MatrixFamily& fam, const VectorXd& omega, double step,
                                  const SimplicityPolicy& policy) {
    if (!(step > 0.0)) throw Error(Errc::InvalidArgument, "check_derivatives: step must be positive");
    const Index d = fam.dim_omega;
    const EigDerivatives center = eig_derivatives(fam, omega, policy);

    VectorXd fd_grad(d);
    MatrixXd fd_hess(d, d);
    for (Index j = 0; j < d; ++j) {
        VectorXd plus = omega, minus = omega;
        plus[j] += step;
        minus[j] -= step;
        const EigDerivatives p = eig_gradient(fam, plus, policy);
        const EigDerivatives m = eig_gradient(fam, minus, policy);
        fd_grad[j] = (p.lambda - m.lambda) / (2.0 * step);
        fd_hess.col(j) = (p.grad - m.grad) / (2.0 * step);
    }
    fd_hess = (fd_hess + fd_hess.transpose()).eval() * 0.5;

    return {relative_error(center.grad, fd_grad), relative_error(center.hess, fd_hess)};
}

}  // namespace eigcon
