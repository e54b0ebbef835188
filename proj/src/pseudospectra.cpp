#include "eigcon/pseudospectra.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "eigcon/error.hpp"
#include "eigcon/gammabound.hpp"

namespace eigcon {

const char* to_string(Target t) {
    switch (t) {
    case Target::Rightmost: return "rightmost";
    case Target::Leftmost: return "leftmost";
    case Target::Outermost: return "outermost";
    }
    return "unknown";
}

Target parse_target(std::string_view s) {
    if (s == "rightmost" || s == "abscissa") return Target::Rightmost;
    if (s == "leftmost") return Target::Leftmost;
    if (s == "outermost" || s == "radius") return Target::Outermost;
    throw Error(Errc::InvalidArgument, "unknown target '" + std::string(s) + "'");
}

void validate(const PseudospectrumSpec& spec) {
    if (spec.A.rows() == 0 || spec.A.rows() != spec.A.cols())
        throw Error(Errc::InvalidArgument, "pseudospectrum: A must be square and non-empty");
    if (!spec.A.allFinite()) throw Error(Errc::NonFinite, "pseudospectrum: A contains NaN or Inf");
    if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon))
        throw Error(Errc::InvalidArgument, "pseudospectrum: epsilon must be positive and finite");
}

namespace {

struct ShiftData {
    MatrixXcd A;
    MatrixXcd Ah;
    MatrixXcd AhA;
    MatrixXcd I;
    double eps2;
};

std::shared_ptr<const ShiftData> shift_data(const MatrixXcd& A, double epsilon) {
    auto d = std::make_shared<ShiftData>();
    d->A = A;
    d->Ah = A.adjoint();
    d->AhA = d->Ah * A;
    d->I = MatrixXcd::Identity(A.rows(), A.cols());
    d->eps2 = epsilon * epsilon;
    return d;
}

// (A - zI)^*(A - zI) - eps^2 I
MatrixXcd shifted_gram(const ShiftData& s, cplx z) {
    MatrixXcd m = s.AhA - z * s.Ah - std::conj(z) * s.A;
    m.diagonal().array() += std::norm(z) - s.eps2;
    return m;
}

}  // namespace

MatrixFamily abscissa_family(const MatrixXcd& A, double epsilon) {
    auto s = shift_data(A, epsilon);
    MatrixFamily fam;
    fam.dim_omega = 2;
    fam.dim_matrix = A.rows();
    fam.eval = [s](const VectorXd& w) { return shifted_gram(*s, cplx(w[0], w[1])); };
    fam.d_eval = [s](const VectorXd& w, Index j) -> MatrixXcd {
        if (j == 0) return -(s->A + s->Ah) + (2.0 * w[0]) * s->I;
        return cplx(0.0, 1.0) * (s->A - s->Ah) + (2.0 * w[1]) * s->I;
    };
    fam.dd_eval = [s](const VectorXd&, Index k, Index l) -> MatrixXcd {
        if (k == l) return 2.0 * s->I;
        return MatrixXcd::Zero(s->I.rows(), s->I.cols());
    };
    return fam;
}

MatrixFamily radius_family(const MatrixXcd& A, double epsilon) {
    auto s = shift_data(A, epsilon);
    MatrixFamily fam;
    fam.dim_omega = 2;
    fam.dim_matrix = A.rows();
    fam.eval = [s](const VectorXd& w) { return shifted_gram(*s, std::polar(1.0, w[1]) * w[0]); };
    fam.d_eval = [s](const VectorXd& w, Index j) -> MatrixXcd {
        const cplx rot = std::polar(1.0, -w[1]);  // e^{-i w_2}
        const MatrixXcd x = rot * s->A;
        if (j == 0) return -(x + x.adjoint()) + (2.0 * w[0]) * s->I;
        return (cplx(0.0, 1.0) * w[0]) * (x - x.adjoint());
    };
    fam.dd_eval = [s](const VectorXd& w, Index k, Index l) -> MatrixXcd {
        const cplx rot = std::polar(1.0, -w[1]);
        const MatrixXcd x = rot * s->A;
        if (k == 0 && l == 0) return 2.0 * s->I;
        if (k == 1 && l == 1) return w[0] * (x + x.adjoint());
        return cplx(0.0, 1.0) * (x - x.adjoint());
    };
    return fam;
}

Eigen::VectorXcd eigenvalues(const MatrixXcd& A) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success)
        throw Error(Errc::ConvergenceFailure, "eigenvalues: complex eigensolver did not converge");
    return es.eigenvalues();
}

Problem build_abscissa_problem(const PseudospectrumSpec& spec) {
    validate(spec);
    if (spec.target == Target::Outermost)
        throw Error(Errc::InvalidArgument, "build_abscissa_problem: target must be rightmost or leftmost");
    const double sign = spec.target == Target::Rightmost ? 1.0 : -1.0;
    const Eigen::VectorXcd ev = eigenvalues(spec.A);
    Index best = 0;
    for (Index i = 1; i < ev.size(); ++i)
        if (sign * ev[i].real() > sign * ev[best].real()) best = i;

    Problem p;
    p.fam = abscissa_family(spec.A, spec.epsilon);
    p.c = VectorXd::Zero(2);
    p.c[0] = sign;
    p.gamma = 2.0;
    p.omega0 = VectorXd(2);
    p.omega0 << ev[best].real(), ev[best].imag();
    return p;
}

Problem build_radius_problem(const PseudospectrumSpec& spec) {
    validate(spec);
    if (spec.target != Target::Outermost)
        throw Error(Errc::InvalidArgument, "build_radius_problem: target must be outermost");
    const Eigen::VectorXcd ev = eigenvalues(spec.A);
    Index best = 0;
    for (Index i = 1; i < ev.size(); ++i)
        if (std::abs(ev[i]) > std::abs(ev[best])) best = i;

    Problem p;
    p.fam = radius_family(spec.A, spec.epsilon);
    p.c = VectorXd::Zero(2);
    p.c[0] = 1.0;
    p.gamma = gershgorin_gamma_radius(spectral_norm(spec.A), spec.epsilon);
    p.omega0 = VectorXd(2);
    p.omega0 << std::abs(ev[best]), std::arg(ev[best]);
    return p;
}

Problem build_problem(const PseudospectrumSpec& spec) {
    return spec.target == Target::Outermost ? build_radius_problem(spec) : build_abscissa_problem(spec);
}

cplx pseudospectral_point(Target target, const VectorXd& omega) {
    if (target == Target::Outermost) {
        if (omega[0] < 0.0) return std::polar(-omega[0], std::remainder(omega[1] + std::numbers::pi, 2.0 * std::numbers::pi));
        return std::polar(omega[0], std::remainder(omega[1], 2.0 * std::numbers::pi));
    }
    return {omega[0], omega[1]};
}

double pseudospectral_value(Target target, const VectorXd& omega) {
    if (target == Target::Outermost) return std::abs(omega[0]);
    return omega[0];
}

std::vector<cplx> boundary_samples(const PseudospectrumSpec& spec, int num_angles) {
    validate(spec);
    if (num_angles < 8) throw Error(Errc::InvalidArgument, "boundary_samples: need at least 8 angles");

    const Eigen::VectorXcd ev = eigenvalues(spec.A);
    const cplx center = ev.mean();
    const double r_max = 1.1 * (spectral_norm(spec.A) + spec.epsilon + std::abs(center)) + 1e-3;
    const MatrixXcd I = MatrixXcd::Identity(spec.A.rows(), spec.A.cols());
    auto inside = [&](cplx z) { return sigma_min(spec.A - z * I) <= spec.epsilon; };

    constexpr int scan = 400;
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(num_angles));
    for (int j = 0; j < num_angles; ++j) {
        const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * j / num_angles);
        int last_in = -1;
        for (int i = 0; i <= scan; ++i)
            if (inside(center + dir * (r_max * i / scan))) last_in = i;
        if (last_in < 0) continue;
        // r_max lies outside Lambda_eps, so last_in < scan.
        double lo = r_max * last_in / scan;
        double hi = r_max * (last_in + 1) / scan;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (inside(center + dir * mid) ? lo : hi) = mid;
        }
        out.push_back(center + dir * (0.5 * (lo + hi)));
    }
    return out;
}

}  // namespace eigcon
