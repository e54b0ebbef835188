#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eigcon/eigopt.hpp"
#include "eigcon/pseudospectra.hpp"

namespace eigcon {

struct RunConfig {
    double step_tol = 0.0;
    double feasibility_tol = 0.0;
    int max_iter = 0;
    double radicand_floor = 0.0;
    bool record_hessian_at_end = true;
    double epsilon = 0.0;
    std::string target;
    double gamma = 0.0;
    /// "analytic", "gershgorin" or "user".
    std::string gamma_source;

    bool operator==(const RunConfig&) const = default;
};

struct RunSummary {
    std::string status;
    double objective = 0.0;
    /// Abscissa / leftmost real part / radius, as printed by the CLI.
    double value = 0.0;
    int iterations = 0;
    std::vector<double> omega_star;

    bool operator==(const RunSummary&) const = default;
};

struct DiagnosticsSummary {
    double predicted_lo = 0.0;
    double predicted_hi = 0.0;
    std::optional<double> final_empirical_ratio;
    std::string regime;

    bool operator==(const DiagnosticsSummary&) const = default;
};

/// Machine-readable record of one CLI solve. Serialized with sorted keys and
/// shortest round-trip doubles, so identical runs give identical bytes apart
/// from `timestamp`.
struct RunRecord {
    std::string command;
    std::string input_digest;
    RunConfig config;
    RunSummary result;
    std::optional<DiagnosticsSummary> diagnostics;
    std::string timestamp;

    bool operator==(const RunRecord&) const = default;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

RunRecord make_run_record(std::string command, std::string input_digest, const SolverConfig& cfg,
                          const PseudospectrumSpec& spec, const Problem& p, std::string gamma_source,
                          const SolveResult& res);

/// "sha256:" followed by the lowercase hex digest of `bytes`.
std::string sha256_digest(std::string_view bytes);

/// Header: k,omega1,...,omegaD,lambda,grad1,...,gradD,objective,gap
void write_trace_csv(std::ostream& out, std::span<const Iterate> trace);

/// Header: re,im
void write_boundary_csv(std::ostream& out, std::span<const cplx> points);

}  // namespace eigcon
