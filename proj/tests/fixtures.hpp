#pragma once

#include <cstdint>

#include "eigcon/matfun.hpp"
#include "eigcon/random.hpp"

namespace eigcon::fixtures {

/// Real n x n matrix with i.i.d. N(0,1) entries from Rng(seed).
inline MatrixXcd seeded_real_matrix(Index n, std::uint64_t seed) {
    Rng rng(seed);
    return rng.normal_matrix(n, n).cast<cplx>();
}

// Smallest seed whose rightmost and outermost optima both lie off the real
// axis (on the axis the tangential error mode is never excited) and are
// reached from the default starting eigenvalues. Seed 8 is off-axis but its
// radius iteration stops at a local maximum.
constexpr std::uint64_t kSeed10 = 10;
inline const std::uint64_t kSeeds5[3] = {51, 52, 53};

inline MatrixXcd seeded10() { return seeded_real_matrix(10, kSeed10); }

/// diag(-1, 0.3 + 0.4i): alpha_0.5 = 0.8, leftmost -1.5, rho_0.5 = 1.5.
inline MatrixXcd normal_diag() {
    MatrixXcd A = MatrixXcd::Zero(2, 2);
    A(0, 0) = -1.0;
    A(1, 1) = cplx(0.3, 0.4);
    return A;
}

inline MatrixXcd random_unitary(Index n, Rng& rng) {
    MatrixXcd z(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) z(i, j) = cplx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<MatrixXcd> qr(z);
    return qr.householderQ() * MatrixXcd::Identity(n, n);
}

}  // namespace eigcon::fixtures
