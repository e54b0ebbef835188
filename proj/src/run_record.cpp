#include "eigcon/run_record.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "eigcon/error.hpp"
#include "eigcon/matrix_market.hpp"

namespace eigcon {

using nlohmann::json;

void to_json(json& j, const RunRecord& r) {
    j = json::object();
    j["schema"] = "eigcon.run_record/1";
    j["command"] = r.command;
    j["input_digest"] = r.input_digest;
    j["config"] = {
        {"step_tol", r.config.step_tol},
        {"feasibility_tol", r.config.feasibility_tol},
        {"max_iter", r.config.max_iter},
        {"radicand_floor", r.config.radicand_floor},
        {"record_hessian_at_end", r.config.record_hessian_at_end},
        {"epsilon", r.config.epsilon},
        {"target", r.config.target},
        {"gamma", r.config.gamma},
        {"gamma_source", r.config.gamma_source},
    };
    j["result"] = {
        {"status", r.result.status},
        {"objective", r.result.objective},
        {"value", r.result.value},
        {"iterations", r.result.iterations},
        {"omega_star", r.result.omega_star},
    };
    if (r.diagnostics) {
        const DiagnosticsSummary& d = *r.diagnostics;
        j["diagnostics"] = {
            {"predicted_lo", d.predicted_lo},
            {"predicted_hi", d.predicted_hi},
            {"final_empirical_ratio", d.final_empirical_ratio ? json(*d.final_empirical_ratio) : json(nullptr)},
            {"regime", d.regime},
        };
    } else {
        j["diagnostics"] = nullptr;
    }
    j["timestamp"] = r.timestamp;
}

void from_json(const json& j, RunRecord& r) {
    if (j.value("schema", "") != "eigcon.run_record/1")
        throw Error(Errc::Parse, "run record: unknown or missing schema tag");
    j.at("command").get_to(r.command);
    j.at("input_digest").get_to(r.input_digest);
    const json& c = j.at("config");
    c.at("step_tol").get_to(r.config.step_tol);
    c.at("feasibility_tol").get_to(r.config.feasibility_tol);
    c.at("max_iter").get_to(r.config.max_iter);
    c.at("radicand_floor").get_to(r.config.radicand_floor);
    c.at("record_hessian_at_end").get_to(r.config.record_hessian_at_end);
    c.at("epsilon").get_to(r.config.epsilon);
    c.at("target").get_to(r.config.target);
    c.at("gamma").get_to(r.config.gamma);
    c.at("gamma_source").get_to(r.config.gamma_source);
    const json& res = j.at("result");
    res.at("status").get_to(r.result.status);
    res.at("objective").get_to(r.result.objective);
    res.at("value").get_to(r.result.value);
    res.at("iterations").get_to(r.result.iterations);
    res.at("omega_star").get_to(r.result.omega_star);
    r.diagnostics.reset();
    if (j.contains("diagnostics") && !j.at("diagnostics").is_null()) {
        const json& d = j.at("diagnostics");
        DiagnosticsSummary ds;
        d.at("predicted_lo").get_to(ds.predicted_lo);
        d.at("predicted_hi").get_to(ds.predicted_hi);
        if (!d.at("final_empirical_ratio").is_null()) ds.final_empirical_ratio = d.at("final_empirical_ratio").get<double>();
        d.at("regime").get_to(ds.regime);
        r.diagnostics = ds;
    }
    r.timestamp = j.value("timestamp", "");
}

RunRecord make_run_record(std::string command, std::string input_digest, const SolverConfig& cfg,
                          const PseudospectrumSpec& spec, const Problem& p, std::string gamma_source,
                          const SolveResult& res) {
    RunRecord r;
    r.command = std::move(command);
    r.input_digest = std::move(input_digest);
    r.config = {cfg.step_tol,    cfg.feasibility_tol, cfg.max_iter, cfg.radicand_floor, cfg.record_hessian_at_end,
                spec.epsilon,    to_string(spec.target), p.gamma,   std::move(gamma_source)};
    r.result.status = to_string(res.status);
    r.result.objective = res.objective();
    r.result.value = pseudospectral_value(spec.target, res.omega_star);
    r.result.iterations = res.iterations();
    r.result.omega_star.assign(res.omega_star.data(), res.omega_star.data() + res.omega_star.size());
    if (res.diagnostics) {
        DiagnosticsSummary d;
        d.predicted_lo = res.diagnostics->predicted_lo;
        d.predicted_hi = res.diagnostics->predicted_hi;
        if (!res.diagnostics->empirical_ratios.empty()) d.final_empirical_ratio = res.diagnostics->empirical_ratios.back();
        d.regime = to_string(res.diagnostics->regime);
        r.diagnostics = d;
    }
    return r;
}

std::string sha256_digest(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::InvalidArgument, "sha256 digest failed");
    std::ostringstream hex;
    hex << "sha256:" << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
    return hex.str();
}

void write_trace_csv(std::ostream& out, std::span<const Iterate> trace) {
    const Index d = trace.empty() ? 2 : trace.front().omega.size();
    out << 'k';
    for (Index j = 1; j <= d; ++j) out << ",omega" << j;
    out << ",lambda";
    for (Index j = 1; j <= d; ++j) out << ",grad" << j;
    out << ",objective,gap\n";
    for (const Iterate& it : trace) {
        out << it.k;
        for (Index j = 0; j < d; ++j) out << ',' << format_double(it.omega[j]);
        out << ',' << format_double(it.lambda);
        for (Index j = 0; j < d; ++j) out << ',' << (it.grad.size() == d ? format_double(it.grad[j]) : "nan");
        out << ',' << format_double(it.objective) << ',' << format_double(it.gap) << '\n';
    }
}

void write_boundary_csv(std::ostream& out, std::span<const cplx> points) {
    out << "re,im\n";
    for (const cplx& z : points) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

}  // namespace eigcon
