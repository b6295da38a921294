#include "prony/presets.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "prony/backward.hpp"
#include "prony/errors.hpp"
#include "prony/experiments.hpp"
#include "prony/rng.hpp"
#include "prony/serialize.hpp"

namespace prony {

using nlohmann::json;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

SlopeCheck slope_check(const std::string& name, const Fit& fit, double target, double tol) {
    SlopeCheck c;
    c.name = name;
    c.value = fit.slope;
    c.target = target;
    c.tol = tol;
    c.kind = "slope";
    c.pass = std::abs(fit.slope - target) <= tol;
    return c;
}

SlopeCheck gap_check(const std::string& name, double gap, double required) {
    SlopeCheck c;
    c.name = name;
    c.value = gap;
    c.target = required;
    c.kind = "gap";
    c.pass = gap >= required;
    return c;
}

json fit_to_json(const Fit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r2", fit.r2},
                {"ci", json::array({fit.ci_lo, fit.ci_hi})},
                {"points", fit.points}};
}

json check_to_json(const SlopeCheck& c) {
    return json{{"name", c.name}, {"kind", c.kind},     {"value", c.value},
                {"target", c.target}, {"tol", c.tol},   {"pass", c.pass}};
}

void write_file(const std::filesystem::path& path, const std::string& text,
                std::vector<std::string>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path.string());
    out << text;
    files.push_back(path.string());
}

template <typename Records, typename Writer>
void write_records(const std::filesystem::path& path, const Records& records, Writer writer,
                   std::vector<std::string>& files) {
    std::ostringstream ss;
    writer(records, ss);
    write_file(path, ss.str(), files);
}

// Truth-index node sets for a sequentially generated partition.
void node_sets(const std::vector<int>& sizes, std::vector<int>& cluster, std::vector<int>& rest) {
    const int big = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    int idx = 0;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        for (int k = 0; k < sizes[s]; ++k, ++idx) {
            if (static_cast<int>(s) == big)
                cluster.push_back(idx);
            else
                rest.push_back(idx);
        }
    }
}

std::vector<std::pair<double, std::vector<double>>> naive_per_point(
    const std::vector<NaiveRecord>& records, double NaiveRecord::*field) {
    std::map<double, std::vector<double>> table;
    for (const auto& r : records)
        if (r.success && std::isfinite(r.*field) && r.*field > 0) table[r.delta].push_back(r.*field);
    std::vector<std::pair<double, std::vector<double>>> out;
    for (auto& [x, ys] : table) out.emplace_back(x, std::move(ys));
    return out;
}

PresetOutcome finish(PresetOutcome outcome, json summary, const std::filesystem::path& dir) {
    outcome.pass = true;
    json checks = json::array();
    for (const auto& c : outcome.checks) {
        checks.push_back(check_to_json(c));
        outcome.pass = outcome.pass && c.pass;
    }
    summary["checks"] = checks;
    summary["pass"] = outcome.pass;
    outcome.summary_json = summary.dump(2) + "\n";
    std::ofstream out(dir / (outcome.name + "_summary.json"), std::ios::binary);
    out << outcome.summary_json;
    outcome.files.push_back((dir / (outcome.name + "_summary.json")).string());
    return outcome;
}

PresetOutcome run_fig1(const std::filesystem::path& dir, std::uint64_t seed, int trials, int points) {
    PresetOutcome outcome;
    outcome.name = "fig1";
    json summary{{"preset", "fig1"}, {"seed", seed}};

    const auto cond_grid = log_grid(1e-3, 1e-1, points > 0 ? points : 16);
    const auto cond = condition_sweep(3, cond_grid, trials > 0 ? trials : 5, Rng::mix(seed, 1));
    write_records(dir / "fig1_cond.csv", cond, [](auto& r, std::ostream& o) { write_cond_csv(r, o); },
                  outcome.files);
    std::map<double, std::vector<double>> cond_table;
    for (const auto& r : cond) cond_table[r.delta].push_back(r.cond);
    std::vector<std::pair<double, std::vector<double>>> cond_points(cond_table.begin(),
                                                                    cond_table.end());
    const Fit cond_fit = fit_slope_xy(cond_points, Rng::mix(seed, 2));
    summary["fits"]["cond_hankel"] = fit_to_json(cond_fit);
    outcome.checks.push_back(slope_check("cond_hankel_slope", cond_fit, -4.0, 0.4));

    struct NaiveCase {
        int ell;
        double lo, hi;
        double prony_target, prony_tol, random_target, random_tol;
        const char* tag;
    };
    // l=3 upper end stays below 2e-1: a 3-cluster's arc approaches the
    // inter-cluster scale there and the asymptotic law bends.
    const NaiveCase cases[] = {
        {2, 1e-3, 1e-1, -2.0, 0.35, -3.0, 0.5, "l2"},
        {3, 2e-2, 2e-1, -4.0, 0.35, -6.0, 0.5, "l3"},
    };
    for (const auto& cs : cases) {
        NaiveSpec spec;
        spec.ell = cs.ell;
        spec.delta_grid = log_grid(cs.lo, cs.hi, points > 0 ? points : 14);
        spec.trials_per_point = trials > 0 ? trials : 12;
        spec.seed = Rng::mix(seed, 10 + cs.ell);
        const auto records = naive_comparison(spec);
        write_records(dir / ("fig1_naive_" + std::string(cs.tag) + ".csv"), records,
                      [](auto& r, std::ostream& o) { write_naive_csv(r, o); }, outcome.files);
        const Fit prony_fit =
            fit_slope_xy(naive_per_point(records, &NaiveRecord::prony_root_err), Rng::mix(seed, 20));
        const Fit random_fit =
            fit_slope_xy(naive_per_point(records, &NaiveRecord::random_root_err), Rng::mix(seed, 21));
        summary["fits"][std::string("prony_root_") + cs.tag] = fit_to_json(prony_fit);
        summary["fits"][std::string("random_root_") + cs.tag] = fit_to_json(random_fit);
        outcome.checks.push_back(slope_check(std::string("prony_root_slope_") + cs.tag, prony_fit,
                                             cs.prony_target, cs.prony_tol));
        outcome.checks.push_back(slope_check(std::string("random_root_slope_") + cs.tag, random_fit,
                                             cs.random_target, cs.random_tol));
        outcome.checks.push_back(gap_check(std::string("naive_slope_gap_") + cs.tag,
                                           prony_fit.slope - random_fit.slope, 0.5));
    }
    return finish(std::move(outcome), std::move(summary), dir);
}

SweepSpec base_pm_sweep(std::uint64_t seed, int trials, int points) {
    SweepSpec spec;
    spec.method = Method::classical;
    spec.n = 3;
    spec.cluster_sizes = {2, 1};
    spec.delta_grid = log_grid(1e-3, 1e-1, points > 0 ? points : 20);
    spec.epsilon_policy = EpsilonPolicy::fixed;
    spec.epsilon_fixed = 1e-15;
    spec.trials_per_point = trials > 0 ? trials : 10;
    spec.seed = seed;
    return spec;
}

RecordFilter filter_for(const std::vector<int>& nodes) {
    RecordFilter f;
    f.node_set = nodes;
    f.ell_star = 2;
    return f;
}

PresetOutcome run_fig2(const std::filesystem::path& dir, std::uint64_t seed, int trials, int points) {
    PresetOutcome outcome;
    outcome.name = "fig2";
    json summary{{"preset", "fig2"}, {"seed", seed}};

    SweepSpec spec = base_pm_sweep(Rng::mix(seed, 32), trials, points);
    spec.record_berr = true;
    const SweepResult result = run_sweep(spec);
    write_records(dir / "fig2.csv", result.records,
                  [](auto& r, std::ostream& o) { write_csv(r, o); }, outcome.files);
    summary["warnings"] = result.warnings;

    std::vector<int> cluster, rest;
    node_sets(spec.cluster_sizes, cluster, rest);
    const Fit kx_c = fit_slope(result.records, Axis::delta, Metric::kx, filter_for(cluster), 3);
    const Fit kx_n = fit_slope(result.records, Axis::delta, Metric::kx, filter_for(rest), 5);
    const Fit ka_c = fit_slope(result.records, Axis::delta, Metric::ka, filter_for(cluster), 7);
    const Fit ka_n = fit_slope(result.records, Axis::delta, Metric::ka, filter_for(rest), 11);
    summary["fits"] = {{"kx_cluster", fit_to_json(kx_c)},
                       {"kx_noncluster", fit_to_json(kx_n)},
                       {"ka_cluster", fit_to_json(ka_c)},
                       {"ka_noncluster", fit_to_json(ka_n)}};
    outcome.checks.push_back(slope_check("kx_cluster_slope", kx_c, -2.0, 0.35));
    outcome.checks.push_back(slope_check("kx_noncluster_slope", kx_n, 0.0, 0.3));
    outcome.checks.push_back(slope_check("ka_cluster_slope", ka_c, -3.0, 0.35));
    outcome.checks.push_back(slope_check("ka_noncluster_slope", ka_n, 0.0, 0.3));

    // Reported, not gated: the dedicated backward audit owns the berr
    // thresholds. With the Lagrange amplitude solve, berr3 grows mildly as
    // delta shrinks (still ~5e2 eps at delta = 1e-3).
    double max_berr = 0;
    for (const auto& r : result.records)
        for (double b : {r.berr1, r.berr2, r.berr3})
            if (std::isfinite(b)) max_berr = std::max(max_berr, b);
    summary["max_berr"] = max_berr;
    summary["max_berr_over_eps"] = max_berr / kEps;
    return finish(std::move(outcome), std::move(summary), dir);
}

PresetOutcome run_fig3(const std::filesystem::path& dir, std::uint64_t seed, int trials, int points) {
    PresetOutcome outcome;
    outcome.name = "fig3";
    json summary{{"preset", "fig3"}, {"seed", seed}};

    SweepSpec spec = base_pm_sweep(Rng::mix(seed, 33), trials, points);
    SweepSpec spec_proj = spec;
    spec_proj.project = true;
    const SweepResult noproj = run_sweep(spec);
    const SweepResult proj = run_sweep(spec_proj);
    write_records(dir / "fig3_noproj.csv", noproj.records,
                  [](auto& r, std::ostream& o) { write_csv(r, o); }, outcome.files);
    write_records(dir / "fig3_proj.csv", proj.records,
                  [](auto& r, std::ostream& o) { write_csv(r, o); }, outcome.files);
    json warn = json::array();
    for (const auto& w : noproj.warnings) warn.push_back("noproj: " + w);
    for (const auto& w : proj.warnings) warn.push_back("proj: " + w);
    summary["warnings"] = warn;

    std::vector<int> cluster, rest;
    node_sets(spec.cluster_sizes, cluster, rest);
    const Fit disc_n = fit_slope(noproj.records, Axis::delta, Metric::discrepancy, filter_for(rest), 3);
    const Fit disc_p = fit_slope(proj.records, Axis::delta, Metric::discrepancy, filter_for(rest), 5);
    const Fit ka_n = fit_slope(noproj.records, Axis::delta, Metric::ka, filter_for(rest), 7);
    const Fit ka_p = fit_slope(proj.records, Axis::delta, Metric::ka, filter_for(rest), 11);
    summary["fits"] = {{"discrepancy_noproj", fit_to_json(disc_n)},
                       {"discrepancy_proj", fit_to_json(disc_p)},
                       {"ka_noncluster_noproj", fit_to_json(ka_n)},
                       {"ka_noncluster_proj", fit_to_json(ka_p)}};
    outcome.checks.push_back(slope_check("discrepancy_noproj_slope", disc_n, 0.0, 0.4));
    outcome.checks.push_back(
        gap_check("discrepancy_projection_gap", disc_n.slope - disc_p.slope, 0.5));
    outcome.checks.push_back(
        gap_check("ka_noncluster_projection_gap", ka_n.slope - ka_p.slope, 0.5));
    return finish(std::move(outcome), std::move(summary), dir);
}

PresetOutcome run_srf_preset(const std::string& name, Method method,
                             const std::filesystem::path& dir, std::uint64_t seed, int trials,
                             int points) {
    PresetOutcome outcome;
    outcome.name = name;
    json summary{{"preset", name}, {"seed", seed}};

    SweepSpec spec;
    spec.method = method;
    spec.n = 3;
    spec.cluster_sizes = {2, 1};
    spec.srf_grid = log_grid(10.0, 1e3, points > 0 ? points : 14);
    // Sampled well above the machine floor: K = error/eps would otherwise
    // measure rounding noise on the small-eps draws. The regime filter tags
    // the few draws that cross eps <~ (omega*delta/(2n-1))^(2l*-1) at the
    // largest SRF.
    spec.epsilon_policy = EpsilonPolicy::log_uniform;
    spec.epsilon_lo = 1e-14;
    spec.epsilon_hi = 1e-12;
    // Narrow omega window: the projection-degradation constant carries an
    // omega power, and a wide window would smear it across grid points.
    spec.omega_policy = OmegaPolicy::sampled;
    spec.omega_lo = 50;
    spec.omega_hi = 70;
    // The envelope statistic needs deep per-point samples: the projection
    // degradation strength varies with the radial error fraction per draw.
    spec.trials_per_point = trials > 0 ? trials : 64;
    spec.seed = Rng::mix(seed, method == Method::decimated ? 44 : 55);

    SweepSpec spec_proj = spec;
    spec_proj.project = true;
    const SweepResult noproj = run_sweep(spec);
    const SweepResult proj = run_sweep(spec_proj);
    write_records(dir / (name + "_noproj.csv"), noproj.records,
                  [](auto& r, std::ostream& o) { write_csv(r, o); }, outcome.files);
    write_records(dir / (name + "_proj.csv"), proj.records,
                  [](auto& r, std::ostream& o) { write_csv(r, o); }, outcome.files);
    json warn = json::array();
    for (const auto& w : noproj.warnings) warn.push_back("noproj: " + w);
    for (const auto& w : proj.warnings) warn.push_back("proj: " + w);
    summary["warnings"] = warn;

    std::vector<int> cluster, rest;
    node_sets(spec.cluster_sizes, cluster, rest);
    const Fit kx_c = fit_slope(noproj.records, Axis::srf, Metric::kx, filter_for(cluster), 3);
    const Fit ka_c = fit_slope(noproj.records, Axis::srf, Metric::ka, filter_for(cluster), 5);
    const Fit kx_n = fit_slope(noproj.records, Axis::srf, Metric::kx, filter_for(rest), 7);
    const Fit ka_n = fit_slope(noproj.records, Axis::srf, Metric::ka, filter_for(rest), 11);
    const Fit kx_c_p = fit_slope(proj.records, Axis::srf, Metric::kx, filter_for(cluster), 13);
    const Fit ka_n_p = fit_slope(proj.records, Axis::srf, Metric::ka, filter_for(rest), 17);
    // The projection-induced degradation is an envelope law: per trial it
    // scales with the radial fraction of the node error, so half the draws
    // sit at the flat floor. Fit the upper quantile, on the grid tail where
    // the degradation dominates the floor.
    RecordFilter rest_tail = filter_for(rest);
    rest_tail.x_min = 100.0;
    const Fit ka_n_p_tail =
        fit_slope(proj.records, Axis::srf, Metric::ka, rest_tail, 19, Aggregate::q90);
    summary["fits"] = {{"kx_cluster_noproj", fit_to_json(kx_c)},
                       {"ka_cluster_noproj", fit_to_json(ka_c)},
                       {"kx_noncluster_noproj", fit_to_json(kx_n)},
                       {"ka_noncluster_noproj", fit_to_json(ka_n)},
                       {"kx_cluster_proj", fit_to_json(kx_c_p)},
                       {"ka_noncluster_proj", fit_to_json(ka_n_p)},
                       {"ka_noncluster_proj_srf_ge_100", fit_to_json(ka_n_p_tail)}};
    outcome.checks.push_back(slope_check("kx_cluster_slope", kx_c, 2.0, 0.4));
    outcome.checks.push_back(slope_check("ka_cluster_slope", ka_c, 3.0, 0.4));
    outcome.checks.push_back(slope_check("kx_noncluster_slope", kx_n, 0.0, 0.3));
    outcome.checks.push_back(slope_check("ka_noncluster_noproj_slope", ka_n, 0.0, 0.3));
    outcome.checks.push_back(slope_check("ka_noncluster_proj_slope", ka_n_p_tail, 1.0, 0.5));
    return finish(std::move(outcome), std::move(summary), dir);
}

} // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5"}; }

PresetOutcome run_preset(const std::string& name, const std::string& outdir, std::uint64_t seed,
                         int trials_override, int points_override) {
    const std::filesystem::path dir(outdir);
    std::filesystem::create_directories(dir);
    if (name == "fig1") return run_fig1(dir, seed, trials_override, points_override);
    if (name == "fig2") return run_fig2(dir, seed, trials_override, points_override);
    if (name == "fig3") return run_fig3(dir, seed, trials_override, points_override);
    if (name == "fig4")
        return run_srf_preset("fig4", Method::decimated, dir, seed, trials_override, points_override);
    if (name == "fig5")
        return run_srf_preset("fig5", Method::pencil, dir, seed, trials_override, points_override);
    throw ArgumentError("unknown preset: " + name);
}

BackwardAuditOutcome run_backward_audit(const BackwardAudit& spec) {
    BackwardAuditOutcome out;
    out.threshold = 1e3 * kEps;
    double max_cert_ratio = 0;
    for (int t = 0; t < spec.trials; ++t) {
        const std::uint64_t tseed = Rng::mix(spec.seed, 997ULL * static_cast<std::uint64_t>(t) + 3ULL);
        Rng rng(tseed);
        const double delta = rng.log_uniform(spec.delta_lo, spec.delta_hi);
        const Signal sig = generate_clustered_signal({spec.n, spec.cluster_sizes, delta, rng.next_u64()});
        const MomentVector m = moments_of(sig, 2 * spec.n);
        const MomentVector m_tilde = perturb(m, {spec.epsilon, {}, rng.next_u64()});
        const RecoveryResult res = prony_classical(m_tilde, spec.n, false);
        const BackwardErrorReport rep = backward_report(res, m_tilde);
        out.trials.push_back({t, delta, spec.epsilon, rep.berr1, rep.berr2, rep.berr3,
                              rep.berr1_certificate_residual, rep.cn_pinv_norm, tseed});
        out.max_berr1 = std::max(out.max_berr1, rep.berr1);
        out.max_berr2 = std::max(out.max_berr2, rep.berr2);
        out.max_berr3 = std::max(out.max_berr3, rep.berr3);
        out.max_cn_pinv_norm = std::max(out.max_cn_pinv_norm, rep.cn_pinv_norm);
        out.max_certificate_residual =
            std::max(out.max_certificate_residual, rep.berr1_certificate_residual);
        double scale = 0;
        for (const cplx& v : m_tilde.values) scale = std::max(scale, std::abs(v));
        max_cert_ratio = std::max(max_cert_ratio, rep.berr1_certificate_residual / std::max(scale, 1e-300));
    }
    out.pass = out.max_berr1 <= out.threshold && out.max_berr2 <= out.threshold &&
               out.max_berr3 <= out.threshold && max_cert_ratio <= out.threshold;
    json j{{"trials", spec.trials},
           {"seed", spec.seed},
           {"epsilon", spec.epsilon},
           {"delta_range", json::array({spec.delta_lo, spec.delta_hi})},
           {"max_berr1", out.max_berr1},
           {"max_berr2", out.max_berr2},
           {"max_berr3", out.max_berr3},
           {"max_certificate_residual", out.max_certificate_residual},
           {"max_certificate_residual_over_scale", max_cert_ratio},
           {"max_cn_pinv_norm", out.max_cn_pinv_norm},
           {"threshold", out.threshold},
           {"pass", out.pass}};
    out.summary_json = j.dump(2) + "\n";
    return out;
}

std::string backward_trials_csv(const std::vector<BackwardTrialRecord>& trials) {
    std::ostringstream out;
    out << "trial,delta,epsilon,berr1,berr2,berr3,certificate_residual,cn_pinv_norm,seed\n";
    for (const auto& t : trials)
        out << t.trial << ',' << format_double(t.delta) << ',' << format_double(t.epsilon) << ','
            << format_double(t.berr1) << ',' << format_double(t.berr2) << ','
            << format_double(t.berr3) << ',' << format_double(t.certificate_residual) << ','
            << format_double(t.cn_pinv_norm) << ',' << t.seed << '\n';
    return out.str();
}

} // namespace prony
