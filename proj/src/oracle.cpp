#include "eigcon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "eigcon/error.hpp"
#include "eigcon/pseudospectra.hpp"
#include "eigcon/random.hpp"

namespace eigcon {

GridSpec default_grid(const MatrixXcd& A, double epsilon, int resolution) {
    const Eigen::VectorXcd ev = eigenvalues(A);
    const double xmin = ev.real().minCoeff(), xmax = ev.real().maxCoeff();
    const double ymin = ev.imag().minCoeff(), ymax = ev.imag().maxCoeff();
    GridSpec g;
    g.center = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    g.half_width = 0.5 * std::max(xmax - xmin, ymax - ymin) + epsilon + 0.5;
    g.resolution = resolution;
    return g;
}

void validate(const GridSpec& g, const MatrixXcd& A, double epsilon) {
    if (g.resolution < 16) throw Error(Errc::InvalidArgument, "grid: resolution must be at least 16");
    if (!(g.half_width > 0.0) || !std::isfinite(g.half_width))
        throw Error(Errc::InvalidArgument, "grid: half_width must be positive");
    const Eigen::VectorXcd ev = eigenvalues(A);
    for (Index i = 0; i < ev.size(); ++i) {
        const cplx off = ev[i] - g.center;
        if (std::abs(off.real()) + epsilon > g.half_width || std::abs(off.imag()) + epsilon > g.half_width)
            throw Error(Errc::InvalidArgument, "grid: region does not cover every eigenvalue plus its eps-disc");
    }
}

namespace {

constexpr int kMaxExpansions = 8;

struct Sweep {
    GridSpec grid;
    double spacing = 0.0;
    std::vector<char> inside;  // row-major, row = imaginary index

    cplx point(int row, int col) const {
        const double x0 = grid.center.real() - grid.half_width;
        const double y0 = grid.center.imag() - grid.half_width;
        return {x0 + spacing * col, y0 + spacing * row};
    }
    bool at(int row, int col) const { return inside[static_cast<std::size_t>(row) * grid.resolution + col] != 0; }
};

Sweep sweep(const MatrixXcd& A, double epsilon, GridSpec g) {
    const MatrixXcd I = MatrixXcd::Identity(A.rows(), A.cols());
    for (int attempt = 0;; ++attempt) {
        Sweep s;
        s.grid = g;
        s.spacing = 2.0 * g.half_width / (g.resolution - 1);
        s.inside.assign(static_cast<std::size_t>(g.resolution) * g.resolution, 0);
        bool touches_border = false;
        for (int r = 0; r < g.resolution; ++r)
            for (int c = 0; c < g.resolution; ++c) {
                const bool in = sigma_min(A - s.point(r, c) * I) <= epsilon;
                s.inside[static_cast<std::size_t>(r) * g.resolution + c] = in;
                if (in && (r == 0 || c == 0 || r == g.resolution - 1 || c == g.resolution - 1))
                    touches_border = true;
            }
        if (!touches_border || attempt == kMaxExpansions) return s;
        g.half_width *= 2.0;
    }
}

// A one-parameter family of rays z = point(t, s); the objective along a ray is s.
using RayPoint = std::function<cplx(double t, double s)>;

struct Candidate {
    double t;
    double s;
};

// Largest s >= (roughly) s_guess with point(t, s) inside, to ~1e-13 relative.
std::optional<double> ray_crossing(const RayPoint& point, double t, double s_guess, double h, double s_min,
                                   const std::function<bool(cplx)>& inside) {
    double lo = s_guess;
    int back = 0;
    while (!inside(point(t, lo))) {
        lo -= h;
        if (++back > 4 || lo < s_min) return std::nullopt;
    }
    double hi = lo + h;
    while (inside(point(t, hi))) {
        lo = hi;
        hi += h;
    }
    // Bracket: point(t, lo) inside, point(t, hi) outside.
    while (hi - lo > 1e-13 * (1.0 + std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inside(point(t, mid)) ? lo : hi) = mid;
    }
    return lo;
}

Candidate refine(const std::vector<Candidate>& candidates, const RayPoint& point, double h, double s_min,
                 const std::function<bool(cplx)>& inside) {
    Candidate best{0.0, -std::numeric_limits<double>::infinity()};
    for (const Candidate& c : candidates) {
        const auto s = ray_crossing(point, c.t, c.s, h, s_min, inside);
        if (s && *s > best.s) best = {c.t, *s};
    }

    auto value = [&](double t) {
        const auto s = ray_crossing(point, t, best.s, h, s_min, inside);
        return s ? *s : -std::numeric_limits<double>::infinity();
    };
    // Golden-section search for the best ray offset around the best candidate.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best.t - 1.5 * h, b = best.t + 1.5 * h;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = value(x1);
        }
    }
    if (f1 > best.s) best = {x1, f1};
    if (f2 > best.s) best = {x2, f2};
    return best;
}

}  // namespace

OracleResult grid_abscissa(const MatrixXcd& A, double epsilon, const GridSpec& g) {
    validate(PseudospectrumSpec{A, epsilon, Target::Rightmost});
    validate(g, A, epsilon);
    const Sweep s = sweep(A, epsilon, g);
    const int res = s.grid.resolution;

    // Rightmost inside column of each row.
    std::vector<int> right(static_cast<std::size_t>(res), -1);
    double grid_best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < res; ++r)
        for (int c = res - 1; c >= 0; --c)
            if (s.at(r, c)) {
                right[r] = c;
                grid_best = std::max(grid_best, s.point(r, c).real());
                break;
            }
    if (!std::isfinite(grid_best)) throw Error(Errc::EmptyRegion, "grid_abscissa: no grid point inside Lambda_eps");

    std::vector<Candidate> candidates;
    for (int r = 0; r < res; ++r)
        if (right[r] >= 0 && s.point(r, right[r]).real() >= grid_best - 2.0 * s.spacing)
            candidates.push_back({s.point(r, 0).imag(), s.point(r, right[r]).real()});

    const MatrixXcd I = MatrixXcd::Identity(A.rows(), A.cols());
    auto inside = [&](cplx z) { return sigma_min(A - z * I) <= epsilon; };
    RayPoint row = [](double t, double x) { return cplx(x, t); };
    const Candidate best = refine(candidates, row, s.spacing, -std::numeric_limits<double>::infinity(), inside);

    OracleResult out;
    out.value = best.s;
    out.point = row(best.t, best.s);
    out.grid_value = grid_best;
    out.grid = s.grid;
    return out;
}

OracleResult grid_leftmost(const MatrixXcd& A, double epsilon, const GridSpec& g) {
    GridSpec mirrored = g;
    mirrored.center = -g.center;
    OracleResult r = grid_abscissa(-A, epsilon, mirrored);
    r.value = -r.value;
    r.grid_value = -r.grid_value;
    r.point = -r.point;
    r.grid.center = -r.grid.center;
    return r;
}

OracleResult grid_radius(const MatrixXcd& A, double epsilon, const GridSpec& g) {
    validate(PseudospectrumSpec{A, epsilon, Target::Outermost});
    validate(g, A, epsilon);
    const Sweep s = sweep(A, epsilon, g);
    const int res = s.grid.resolution;

    double grid_best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < res; ++r)
        for (int c = 0; c < res; ++c)
            if (s.at(r, c)) grid_best = std::max(grid_best, std::abs(s.point(r, c)));
    if (!std::isfinite(grid_best)) throw Error(Errc::EmptyRegion, "grid_radius: no grid point inside Lambda_eps");

    std::vector<Candidate> candidates;
    for (int r = 0; r < res; ++r)
        for (int c = 0; c < res; ++c) {
            const cplx z = s.point(r, c);
            if (s.at(r, c) && std::abs(z) >= grid_best - 2.0 * s.spacing)
                candidates.push_back({std::arg(z), std::abs(z)});
        }

    const MatrixXcd I = MatrixXcd::Identity(A.rows(), A.cols());
    auto inside = [&](cplx z) { return sigma_min(A - z * I) <= epsilon; };
    RayPoint ray = [](double t, double r) { return std::polar(r, t); };
    // Angular offsets are scaled so that one unit of t moves about one grid spacing.
    const double scale = std::max(grid_best, s.spacing);
    RayPoint scaled = [&](double t, double r) { return ray(t / scale, r); };
    for (Candidate& c : candidates) c.t *= scale;
    const Candidate best = refine(candidates, scaled, s.spacing, 0.0, inside);

    OracleResult out;
    out.value = best.s;
    out.point = scaled(best.t, best.s);
    out.grid_value = grid_best;
    out.grid = s.grid;
    return out;
}

double sample_support_inequality(const Problem& p, const Iterate& it, int num, double radius, std::uint64_t seed) {
    if (num <= 0) return std::numeric_limits<double>::infinity();
    Rng rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num; ++i) {
        const VectorXd w = it.omega + rng.in_ball(it.omega.size(), radius);
        const double lam = hermitian_eigenvalues(p.fam.eval(w))[0];
        worst = std::min(worst, support_value(it, p.gamma, w) - lam);
    }
    return worst;
}

}  // namespace eigcon
