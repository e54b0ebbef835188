#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace eigcon {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

/// Analytic Hermitian matrix-valued function A(omega): R^d -> C^{n x n}.
///
/// Derivative indices are zero-based: d_eval(w, j) is dA/dw_j for j in [0, d),
/// dd_eval(w, k, l) is d^2A/(dw_k dw_l). Analyticity of the family is a caller
/// obligation; nothing here can check it. The maps must be reentrant.
struct MatrixFamily {
    Index dim_omega = 0;
    Index dim_matrix = 0;
    std::function<MatrixXcd(const VectorXd&)> eval;
    std::function<MatrixXcd(const VectorXd&, Index)> d_eval;
    std::function<MatrixXcd(const VectorXd&, Index, Index)> dd_eval;
};

/// Family A(w) = A0 + sum_j w_j A1[j] + 1/2 sum_{k,l} w_k w_l A2[k][l].
///
/// A2 must be symmetric in (k, l); entries are symmetrized on construction.
/// Every matrix is Hermitian-projected.
MatrixFamily quadratic_family(MatrixXcd constant,
                              std::vector<MatrixXcd> linear,
                              std::vector<std::vector<MatrixXcd>> quadratic = {});

/// Constant family A(w) = M on R^d.
MatrixFamily constant_family(const MatrixXcd& m, Index dim_omega);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct EigenPair {
    VectorXd values;
    MatrixXcd vectors;
    /// values[1] - values[0]; +infinity for 1 x 1 matrices.
    double gap = std::numeric_limits<double>::infinity();
};

/// Dense Hermitian eigendecomposition of (M + M^*)/2.
/// Throws Error(NonFinite) or Error(ConvergenceFailure).
EigenPair hermitian_eig(const MatrixXcd& m);

/// Eigenvalues only (ascending) of (M + M^*)/2; same error contract.
VectorXd hermitian_eigenvalues(const MatrixXcd& m);

struct LambdaMin {
    double value = 0.0;
    VectorXcd vector;
    double gap = std::numeric_limits<double>::infinity();
};

LambdaMin lambda_min(const MatrixFamily& fam, const VectorXd& omega);

/// Same eigendecomposition lambda_min uses, kept whole for the derivative code.
EigenPair eig_at(const MatrixFamily& fam, const VectorXd& omega);

/// Largest singular value, from the eigenvalues of M^* M.
double spectral_norm(const MatrixXcd& m);

/// Smallest singular value, as sqrt(lambda_min(M^* M)) clamped at zero.
double sigma_min(const MatrixXcd& m);

/// max_ij |M - M^*|_ij relative to max(1, max_ij |M_ij|).
double hermitian_defect(const MatrixXcd& m);

}  // namespace eigcon
