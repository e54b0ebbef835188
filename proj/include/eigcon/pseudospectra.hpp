#pragma once

#include <string_view>
#include <vector>

#include "eigcon/problem.hpp"

namespace eigcon {

enum class Target { Rightmost, Leftmost, Outermost };

const char* to_string(Target t);
/// Accepts "rightmost"/"abscissa", "leftmost", "outermost"/"radius".
Target parse_target(std::string_view s);

/// Lambda_eps(A) = { z : sigma_min(A - z I) <= eps } in the spectral norm.
struct PseudospectrumSpec {
    MatrixXcd A;
    double epsilon = 0.0;
    Target target = Target::Rightmost;
};

void validate(const PseudospectrumSpec& spec);

/// A(w) = (A - z I)^* (A - z I) - eps^2 I with z = w_1 + i w_2.
///   dA/dw_1 = -(A + A^*) + 2 w_1 I,  dA/dw_2 = i (A - A^*) + 2 w_2 I,
///   second derivatives 2I on the diagonal blocks and zero off them.
MatrixFamily abscissa_family(const MatrixXcd& A, double epsilon);

/// A(w) = (A - w_1 e^{i w_2} I)^* (A - w_1 e^{i w_2} I) - eps^2 I.
///   dA/dw_1 = -2 Re(e^{-i w_2} A) + 2 w_1 I,  dA/dw_2 = -2 Im(w_1 e^{-i w_2} A),
/// where Re X = (X + X^*)/2 and Im X = (X - X^*)/(2i).
MatrixFamily radius_family(const MatrixXcd& A, double epsilon);

/// Rightmost: c = (1, 0); Leftmost: c = (-1, 0). gamma = 2 (the block Hessian
/// is the constant 2I). omega0 is the rightmost (leftmost) eigenvalue of A,
/// first in eigensolver order on ties.
Problem build_abscissa_problem(const PseudospectrumSpec& spec);

/// c = (1, 0), gamma = gershgorin_gamma_radius(||A||, eps), omega0 =
/// (|lambda|, arg lambda) for the eigenvalue of largest modulus.
Problem build_radius_problem(const PseudospectrumSpec& spec);

/// Dispatches on spec.target.
Problem build_problem(const PseudospectrumSpec& spec);

/// The real part (Rightmost/Leftmost) or the modulus (Outermost) of the point
/// a solution omega represents.
double pseudospectral_value(Target target, const VectorXd& omega);

/// The complex point a solution omega represents; a negative radius is folded
/// into the angle.
cplx pseudospectral_point(Target target, const VectorXd& omega);

/// Points where sigma_min(A - z I) = eps along rays from the centroid of the
/// spectrum, one per angle 2 pi j / num_angles, in angle order. Along each ray
/// the outermost crossing is located by a coarse scan and bisection to 1e-10;
/// rays that never enter the pseudospectrum are skipped.
std::vector<cplx> boundary_samples(const PseudospectrumSpec& spec, int num_angles);

/// Eigenvalues of a general complex matrix in eigensolver order.
Eigen::VectorXcd eigenvalues(const MatrixXcd& A);

}  // namespace eigcon
