#pragma once

#include <cstdint>

#include "eigcon/eigopt.hpp"

namespace eigcon {

/// Square grid of resolution x resolution points centered at `center`.
struct GridSpec {
    cplx center{0.0, 0.0};
    double half_width = 1.0;
    int resolution = 201;
};

/// Bounding box of the spectrum inflated by eps + 0.5, made square.
GridSpec default_grid(const MatrixXcd& A, double epsilon, int resolution = 201);

/// Throws Error(InvalidArgument) unless resolution >= 16 and the grid holds
/// every eigenvalue together with its eps-disc.
void validate(const GridSpec& g, const MatrixXcd& A, double epsilon);

struct OracleResult {
    /// Lower bound on the pseudospectral abscissa / radius.
    double value = 0.0;
    /// A point of Lambda_eps attaining `value` (inside end of the last bisection).
    cplx point{0.0, 0.0};
    /// Best value on the raw grid, before refinement.
    double grid_value = 0.0;
    /// Grid actually swept; the half-width is doubled while Lambda_eps touches the border.
    GridSpec grid;
};

/// max Re z over Lambda_eps(A) by grid sweep of sigma_min(A - zI) <= eps,
/// refined by bisection along the rows of the near-optimal grid points and a
/// golden-section search over the row offset.
/// Throws Error(EmptyRegion) when no grid point is inside Lambda_eps.
OracleResult grid_abscissa(const MatrixXcd& A, double epsilon, const GridSpec& g);

/// min Re z over Lambda_eps(A), as -grid_abscissa(-A).
OracleResult grid_leftmost(const MatrixXcd& A, double epsilon, const GridSpec& g);

/// max |z| over Lambda_eps(A); refinement bisects along rays from the origin.
OracleResult grid_radius(const MatrixXcd& A, double epsilon, const GridSpec& g);

/// min over `num` seeded points w in the ball of `radius` around it.omega of
/// q_k(w) - lambda_min(A(w)). Non-negative (up to roundoff) whenever p.gamma
/// is a valid curvature bound.
double sample_support_inequality(const Problem& p, const Iterate& it, int num, double radius, std::uint64_t seed);

}  // namespace eigcon
