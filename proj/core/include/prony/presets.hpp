#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prony {

// Desk-scale reproductions of the reference experiments. Each preset writes
// its CSV data files plus <name>_summary.json into outdir and evaluates its
// slope/threshold checks.
struct SlopeCheck {
    std::string name;
    double value = 0;
    double target = 0; // meaningful when kind == "slope"
    double tol = 0;
    std::string kind = "slope"; // "slope" | "gap" | "max"
    bool pass = false;
};

struct PresetOutcome {
    std::string name;
    std::vector<std::string> files; // paths written
    std::vector<SlopeCheck> checks;
    std::string summary_json;
    bool pass = false;
};

std::vector<std::string> preset_names(); // fig1..fig5

PresetOutcome run_preset(const std::string& name, const std::string& outdir,
                         std::uint64_t seed, int trials_override = 0,
                         int points_override = 0);

// Backward-error audit over random clustered runs (classical method).
struct BackwardAudit {
    int trials = 100;
    std::uint64_t seed = 5;
    double epsilon = 1e-12;
    double delta_lo = 1e-2, delta_hi = 1e-1;
    int n = 3;
    std::vector<int> cluster_sizes{2, 1};
};
struct BackwardTrialRecord {
    int trial = 0;
    double delta = 0, epsilon = 0;
    double berr1 = 0, berr2 = 0, berr3 = 0;
    double certificate_residual = 0, cn_pinv_norm = 0;
    std::uint64_t seed = 0;
};
struct BackwardAuditOutcome {
    double max_berr1 = 0, max_berr2 = 0, max_berr3 = 0;
    double max_certificate_residual = 0;
    double max_cn_pinv_norm = 0;
    double threshold = 0; // 1e3 * machine eps
    bool pass = false;
    std::string summary_json;
    std::vector<BackwardTrialRecord> trials;
};
BackwardAuditOutcome run_backward_audit(const BackwardAudit& spec);
std::string backward_trials_csv(const std::vector<BackwardTrialRecord>& trials);

} // namespace prony
