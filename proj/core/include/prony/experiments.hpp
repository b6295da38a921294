#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prony/recovery.hpp"

namespace prony {

enum class OmegaPolicy { fixed, sampled };
enum class EpsilonPolicy { fixed, log_uniform };

struct SweepSpec {
    Method method = Method::classical;
    int n = 3;
    std::vector<int> cluster_sizes{2, 1};

    // Exactly one of the two grids is used.
    std::vector<double> delta_grid;
    std::vector<double> srf_grid;

    EpsilonPolicy epsilon_policy = EpsilonPolicy::fixed;
    double epsilon_fixed = 1e-15;
    double epsilon_lo = 1e-15, epsilon_hi = 1e-13;

    OmegaPolicy omega_policy = OmegaPolicy::fixed;
    double omega_fixed = 0;           // 0 -> 2n-1
    double omega_lo = 30, omega_hi = 80;

    int trials_per_point = 10;
    bool project = false;
    std::uint64_t seed = 0;
    double regime_c = 0.1;            // threshold constant for eps <= c*delta_eff^(2l*-1)
    bool record_berr = false;         // classical method only
};

struct TrialRecord {
    std::string method;
    int n = 0;
    std::string cluster_sizes; // "2|1"
    double delta = 0, srf = 0, epsilon = 0, omega = 0;
    int node_idx = -1;         // 0-based; -1 marks a failed trial's row
    double kx = 0, ka = 0;
    double discrepancy = 0;    // |V_b|/eps for the non-cluster node row; nan elsewhere
    double berr1 = 0, berr2 = 0, berr3 = 0;
    bool success = false;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<TrialRecord> records;
    std::vector<std::string> warnings; // grid points with > 50% trial failure
};

SweepResult run_sweep(const SweepSpec& spec);

// Fixed column schema:
// method,n,cluster_sizes,delta,srf,epsilon,omega,node_idx,kx,ka,discrepancy,
// berr1,berr2,berr3,success,seed
void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);

enum class Axis { delta, srf };
enum class Metric { kx, ka, discrepancy, berr1, berr2, berr3 };

struct RecordFilter {
    std::vector<int> node_set;      // empty = all nodes
    bool in_regime_only = true;
    double regime_c = 0.1;
    int ell_star = 1;               // for the regime predicate
    double x_min = 0;               // drop grid points below this (asymptotic fits)
};

struct Fit {
    double slope = 0, intercept = 0, r2 = 0;
    double ci_lo = 0, ci_hi = 0; // bootstrap 90% interval
    int points = 0;              // grid points entering the fit
};

// Per-grid-point statistic over trials. Median is the default; the upper
// quantile serves envelope laws whose per-trial strength is bimodal (e.g. the
// projection degradation, which scales with the radial error fraction).
enum class Aggregate { median, q90 };

// OLS on (log10 x, log10 of the per-grid-point aggregate of per-trial maxima
// over the selected node set). Bootstrap resamples trials within each grid
// point. Throws ArgumentError with fewer than 5 usable grid points.
Fit fit_slope(const std::vector<TrialRecord>& records, Axis x, Metric y,
              const RecordFilter& filter, std::uint64_t bootstrap_seed = 17,
              Aggregate aggregate = Aggregate::median);

// Generic slope fit for prepared (x, per-trial-y) data; the sweep-based
// overload reduces to this.
Fit fit_slope_xy(const std::vector<std::pair<double, std::vector<double>>>& per_point_values,
                 std::uint64_t bootstrap_seed = 17, Aggregate aggregate = Aggregate::median);

// kappa_2(H_n) of the signal's exact moments via Jacobi SVD.
double condition_number_hankel(const Signal& signal);

// Prony root errors vs random coefficient perturbations of matched magnitude,
// on a single-cluster geometry.
struct NaiveSpec {
    int ell = 2; // single cluster of this size (n = ell)
    std::vector<double> delta_grid;
    double epsilon = 1e-15;
    int trials_per_point = 8;
    std::uint64_t seed = 0;
};
struct NaiveRecord {
    double delta = 0;
    int trial = 0;
    double dq_norm = 0;          // ||q° - p||_inf
    double prony_root_err = 0;   // max node error of the Prony run
    double random_root_err = 0;  // max root error after the random perturbation
    bool success = false;
    std::uint64_t seed = 0;
};
std::vector<NaiveRecord> naive_comparison(const NaiveSpec& spec);
void write_naive_csv(const std::vector<NaiveRecord>& records, std::ostream& out);

// Condition-number sweep records (single metric).
struct CondRecord {
    double delta = 0;
    int trial = 0;
    double cond = 0;
    std::uint64_t seed = 0;
};
std::vector<CondRecord> condition_sweep(int ell, const std::vector<double>& delta_grid,
                                        int trials, std::uint64_t seed);
void write_cond_csv(const std::vector<CondRecord>& records, std::ostream& out);

std::vector<double> log_grid(double lo, double hi, int points);

// Deterministic parallel map: slot-indexed results, thread count from the
// PRONY_THREADS environment variable (default 1). Output is identical for any
// thread count.
int configured_thread_count();
void parallel_for(int count, const std::function<void(int)>& body);

} // namespace prony
