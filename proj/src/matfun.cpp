#include "eigcon/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "eigcon/error.hpp"

namespace eigcon {

const char* to_string(Errc code) {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonFinite: return "NonFinite";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotSimple: return "NotSimple";
    case Errc::Degenerate: return "Degenerate";
    case Errc::InfeasibleStart: return "InfeasibleStart";
    case Errc::ZeroGradient: return "ZeroGradient";
    case Errc::InsufficientTrace: return "InsufficientTrace";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

namespace {

MatrixXcd hermitian_part(const MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw Error(Errc::InvalidArgument, "hermitian_eig: matrix is not square");
    if (!m.allFinite()) throw Error(Errc::NonFinite, "hermitian_eig: matrix contains NaN or Inf");
    return (m + m.adjoint()) * 0.5;
}

}  // namespace

EigenPair hermitian_eig(const MatrixXcd& m) {
    const MatrixXcd h = hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw Error(Errc::ConvergenceFailure, "hermitian_eig: eigensolver did not converge");
    EigenPair out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    if (out.values.size() > 1) out.gap = out.values[1] - out.values[0];
    return out;
}

VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
    const MatrixXcd h = hermitian_part(m);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(Errc::ConvergenceFailure, "hermitian_eigenvalues: eigensolver did not converge");
    return es.eigenvalues();
}

EigenPair eig_at(const MatrixFamily& fam, const VectorXd& omega) {
    if (omega.size() != fam.dim_omega)
        throw Error(Errc::InvalidArgument, "parameter dimension mismatch: expected " +
                                               std::to_string(fam.dim_omega) + ", got " +
                                               std::to_string(omega.size()));
    if (!omega.allFinite()) throw Error(Errc::NonFinite, "parameter vector is not finite");
    return hermitian_eig(fam.eval(omega));
}

LambdaMin lambda_min(const MatrixFamily& fam, const VectorXd& omega) {
    EigenPair ep = eig_at(fam, omega);
    return {ep.values[0], ep.vectors.col(0), ep.gap};
}

double spectral_norm(const MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    const VectorXd ev = hermitian_eigenvalues(m.adjoint() * m);
    return std::sqrt(std::max(0.0, ev[ev.size() - 1]));
}

double sigma_min(const MatrixXcd& m) {
    const VectorXd ev = hermitian_eigenvalues(m.adjoint() * m);
    return std::sqrt(std::max(0.0, ev[0]));
}

double hermitian_defect(const MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

MatrixFamily quadratic_family(MatrixXcd constant, std::vector<MatrixXcd> linear,
                              std::vector<std::vector<MatrixXcd>> quadratic) {
    const Index n = constant.rows();
    const Index d = static_cast<Index>(linear.size());
    if (constant.cols() != n) throw Error(Errc::InvalidArgument, "quadratic_family: constant term not square");
    for (const auto& a : linear)
        if (a.rows() != n || a.cols() != n)
            throw Error(Errc::InvalidArgument, "quadratic_family: linear term has wrong shape");
    if (!quadratic.empty()) {
        if (static_cast<Index>(quadratic.size()) != d)
            throw Error(Errc::InvalidArgument, "quadratic_family: quadratic term needs d x d blocks");
        for (const auto& row : quadratic) {
            if (static_cast<Index>(row.size()) != d)
                throw Error(Errc::InvalidArgument, "quadratic_family: quadratic term needs d x d blocks");
            for (const auto& b : row)
                if (b.rows() != n || b.cols() != n)
                    throw Error(Errc::InvalidArgument, "quadratic_family: quadratic block has wrong shape");
        }
    }

    struct Terms {
        MatrixXcd a0;
        std::vector<MatrixXcd> a1;
        std::vector<std::vector<MatrixXcd>> a2;
    };
    auto t = std::make_shared<Terms>();
    t->a0 = (constant + constant.adjoint()) * 0.5;
    for (auto& a : linear) t->a1.push_back((a + a.adjoint()) * 0.5);
    t->a2.assign(static_cast<std::size_t>(d), std::vector<MatrixXcd>(static_cast<std::size_t>(d), MatrixXcd::Zero(n, n)));
    if (!quadratic.empty()) {
        for (Index k = 0; k < d; ++k)
            for (Index l = 0; l < d; ++l) {
                const MatrixXcd& bkl = quadratic[k][l];
                const MatrixXcd& blk = quadratic[l][k];
                const MatrixXcd sym = (bkl + blk) * 0.5;
                t->a2[k][l] = (sym + sym.adjoint()) * 0.5;
            }
    }

    MatrixFamily fam;
    fam.dim_omega = d;
    fam.dim_matrix = n;
    fam.eval = [t, d](const VectorXd& w) {
        MatrixXcd m = t->a0;
        for (Index j = 0; j < d; ++j) m += w[j] * t->a1[j];
        for (Index k = 0; k < d; ++k)
            for (Index l = 0; l < d; ++l) m += (0.5 * w[k] * w[l]) * t->a2[k][l];
        return m;
    };
    fam.d_eval = [t, d](const VectorXd& w, Index j) {
        MatrixXcd m = t->a1[j];
        for (Index l = 0; l < d; ++l) m += w[l] * t->a2[j][l];
        return m;
    };
    fam.dd_eval = [t](const VectorXd&, Index k, Index l) { return t->a2[k][l]; };
    return fam;
}

MatrixFamily constant_family(const MatrixXcd& m, Index dim_omega) {
    std::vector<MatrixXcd> zeros(static_cast<std::size_t>(dim_omega), MatrixXcd::Zero(m.rows(), m.cols()));
    return quadratic_family(m, std::move(zeros));
}

}  // namespace eigcon
