#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace eigcon {

/// Seeded generator whose output depends only on the seed.
///
/// std::mt19937_64 is fully specified by the standard, but the distribution
/// adaptors are not, so uniform and normal variates are derived here directly
/// from the raw 64-bit stream. This keeps frozen regression constants stable
/// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (one variate per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Eigen::VectorXd normal_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    /// Matrix with i.i.d. N(0,1) real entries, filled column-major.
    Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
        return m;
    }

    /// Uniformly distributed point in the Euclidean ball of the given radius.
    Eigen::VectorXd in_ball(Eigen::Index d, double radius) {
        Eigen::VectorXd dir = normal_vector(d);
        const double nrm = dir.norm();
        if (nrm == 0.0) return Eigen::VectorXd::Zero(d);
        const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(d));
        return dir * (r / nrm);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace eigcon
