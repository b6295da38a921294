#include "prony/serialize.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "prony/errors.hpp"

namespace prony {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json cvector_to_json(const cvector& v) {
    json arr = json::array();
    for (const cplx& z : v) arr.push_back(complex_to_json(z));
    return arr;
}

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ArgumentError("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

cvector cvector_from_json(const json& j) {
    cvector out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

} // namespace

std::string signal_to_json(const Signal& signal) {
    json j;
    j["nodes"] = cvector_to_json(signal.nodes);
    j["amplitudes"] = cvector_to_json(signal.amplitudes);
    j["amp_lo"] = signal.amp_lo;
    j["amp_hi"] = signal.amp_hi;
    json cfg;
    cfg["n"] = signal.config.n;
    cfg["partition"] = signal.config.partition;
    cfg["delta"] = signal.config.delta;
    cfg["tau"] = signal.config.tau;
    cfg["big_t"] = signal.config.big_t;
    cfg["eta"] = signal.config.eta;
    cfg["ell_star"] = signal.config.ell_star;
    j["config"] = cfg;
    return j.dump(2) + "\n";
}

Signal signal_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("signal JSON parse error: ") + e.what());
    }
    try {
        Signal s;
        s.nodes = cvector_from_json(j.at("nodes"));
        s.amplitudes = cvector_from_json(j.at("amplitudes"));
        s.amp_lo = j.value("amp_lo", 0.5);
        s.amp_hi = j.value("amp_hi", 1.5);
        const json& cfg = j.at("config");
        s.config.n = cfg.at("n").get<int>();
        s.config.partition = cfg.at("partition").get<std::vector<std::vector<int>>>();
        s.config.delta = cfg.at("delta").get<double>();
        s.config.tau = cfg.at("tau").get<double>();
        s.config.big_t = cfg.at("big_t").get<double>();
        s.config.eta = cfg.at("eta").get<double>();
        s.config.ell_star = cfg.at("ell_star").get<int>();
        s.config.validate();
        if (static_cast<int>(s.nodes.size()) != s.config.n ||
            s.nodes.size() != s.amplitudes.size())
            throw ArgumentError("signal JSON: node/amplitude count mismatch");
        return s;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("signal JSON schema error: ") + e.what());
    }
}

std::string recovery_to_json(const RecoveryResult& result) {
    json j;
    j["method"] = method_name(result.method);
    j["projected"] = result.projected;
    j["lambda"] = result.lambda;
    j["nodes_raw"] = cvector_to_json(result.nodes_raw);
    j["nodes_used"] = cvector_to_json(result.nodes_used);
    j["amplitudes"] = cvector_to_json(result.amplitudes);
    j["residual_moments"] = result.residual_moments;
    if (!result.matching.empty()) {
        j["matching"] = result.matching;
        j["node_errors"] = result.node_errors;
        j["amp_errors"] = result.amp_errors;
    }
    return j.dump(2) + "\n";
}

std::string backward_report_to_json(const BackwardErrorReport& report) {
    json j;
    j["berr1"] = report.berr1;
    j["berr2"] = report.berr2;
    j["berr3"] = report.berr3;
    j["berr1_certificate"] = {
        {"m_hat", cvector_to_json(report.berr1_m_hat)},
        {"residual", report.berr1_certificate_residual},
    };
    j["cn_pinv_norm"] = report.cn_pinv_norm;
    j["machine_eps_ratio"] = report.machine_eps_ratio;
    j["berr3_deltas"] = {
        {"delta1", cvector_to_json(report.berr3_delta1)},
        {"delta2", cvector_to_json(report.berr3_delta2)},
        {"delta2_prime", cvector_to_json(report.berr3_delta2_prime)},
    };
    return j.dump(2) + "\n";
}

} // namespace prony
