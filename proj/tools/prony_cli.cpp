// Command-line front end: instance generation, single recoveries, the
// experiment presets, backward-error audits, expansion/first-order
// verification, and SVG plot emission from sweep CSVs.
//
// Exit codes: 0 success, 2 argument/geometry error, 3 numerical failure,
// 4 enabled acceptance check failed.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prony/backward.hpp"
#include "prony/decimation.hpp"
#include "prony/errors.hpp"
#include "prony/experiments.hpp"
#include "prony/pencil.hpp"
#include "prony/presets.hpp"
#include "prony/rng.hpp"
#include "prony/serialize.hpp"
#include "prony/theory.hpp"
#include "svg_plot.hpp"

namespace {

using namespace prony;
using nlohmann::json;

constexpr int kOk = 0, kArgExit = 2, kNumExit = 3, kCheckExit = 4;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw ArgumentError("expected a comma-separated integer list");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    int n = 0;
    std::string clusters;
    double delta = 0;
    std::uint64_t seed = 0;
    double amp_lo = 0.5, amp_hi = 1.5;
    std::string out = "signal.json";
};

int cmd_gen(const GenArgs& a) {
    GenRequest req{a.n, parse_int_list(a.clusters), a.delta, a.seed, a.amp_lo, a.amp_hi};
    const Signal sig = generate_clustered_signal(req);
    write_file(a.out, signal_to_json(sig));
    std::cout << "wrote " << a.out << ": n=" << sig.config.n << " clusters=" << a.clusters
              << " delta=" << format_double(sig.config.delta)
              << " tau=" << format_double(sig.config.tau)
              << " T=" << format_double(sig.config.big_t)
              << " eta=" << format_double(sig.config.eta) << " ell*=" << sig.config.ell_star
              << "\n";
    return kOk;
}

// ------------------------------------------------------------- recover

struct RecoverArgs {
    std::string signal_path;
    std::string method = "classical";
    double epsilon = 0;
    std::uint64_t seed = 0;
    bool project = false;
    double omega = 0;
    std::string lambdas;
    bool amps_first_n = false;
    std::string out;
    bool json_stdout = false;
};

int cmd_recover(const RecoverArgs& a) {
    const Signal sig = signal_from_json(read_file(a.signal_path));
    const int n = sig.config.n;
    const Method method = method_from_name(a.method);

    double omega = a.omega;
    if (omega <= 0) omega = (method == Method::classical || method == Method::homogeneous)
                                ? 2.0 * n - 1.0
                                : 10.0 * (2 * n - 1);
    const int count = (method == Method::classical || method == Method::homogeneous)
                          ? 2 * n
                          : static_cast<int>(omega) + 1;
    const MomentVector m = moments_of(sig, count);
    const MomentVector m_tilde = perturb(m, {a.epsilon, {}, a.seed});

    RecoveryResult result;
    switch (method) {
        case Method::classical: result = prony_classical(m_tilde, n, a.project); break;
        case Method::homogeneous: result = prony_homogeneous(m_tilde, n, a.project); break;
        case Method::decimated: {
            DecimationPlan plan = a.lambdas.empty() ? DecimationPlan::default_plan(omega, n)
                                                    : DecimationPlan{};
            if (!a.lambdas.empty()) {
                plan.omega = omega;
                plan.lambdas = parse_int_list(a.lambdas);
            }
            result = decimated_prony(m_tilde, n, plan, a.project);
            break;
        }
        case Method::pencil: {
            PencilParams params = PencilParams::defaults();
            params.full_ls_amplitudes = !a.amps_first_n;
            result = matrix_pencil(m_tilde, n, params, a.project);
            break;
        }
    }
    score_against(result, sig);

    json out;
    out["epsilon"] = a.epsilon;
    out["omega"] = omega;
    out["seed"] = a.seed;
    out["recovery"] = json::parse(recovery_to_json(result));
    if (method == Method::classical || method == Method::homogeneous)
        out["backward"] = json::parse(backward_report_to_json(backward_report(result, m_tilde)));
    else
        out["backward"] = nullptr;
    const std::string text = out.dump(2) + "\n";
    if (!a.out.empty()) write_file(a.out, text);
    if (a.json_stdout || a.out.empty()) std::cout << text;
    return kOk;
}

// --------------------------------------------------------------- sweep

struct SweepArgs {
    std::string preset;
    std::string outdir = "out";
    std::uint64_t seed = 42;
    int trials = 0, points = 0;
    bool json_stdout = false;
};

int cmd_sweep(const SweepArgs& a) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), a.preset) == names.end())
        throw ArgumentError("unknown preset '" + a.preset + "' (expected fig1..fig5)");
    const PresetOutcome outcome = run_preset(a.preset, a.outdir, a.seed, a.trials, a.points);
    if (a.json_stdout) std::cout << outcome.summary_json;
    for (const auto& c : outcome.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << a.preset << ":" << c.name << " value="
                  << format_double(c.value) << " target=" << format_double(c.target)
                  << (c.kind == "slope" ? " tol=" + format_double(c.tol) : "") << "\n";
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << a.preset << " (files in " << a.outdir
              << ")\n";
    return outcome.pass ? kOk : kCheckExit;
}

// ------------------------------------------------------------- backward

struct BackwardArgs {
    int trials = 100;
    std::uint64_t seed = 5;
    double epsilon = 1e-12;
    double delta_min = 1e-2, delta_max = 1e-1;
    std::string outdir = "out";
    bool json_stdout = false;
};

int cmd_backward(const BackwardArgs& a) {
    BackwardAudit spec;
    spec.trials = a.trials;
    spec.seed = a.seed;
    spec.epsilon = a.epsilon;
    spec.delta_lo = a.delta_min;
    spec.delta_hi = a.delta_max;
    const BackwardAuditOutcome out = run_backward_audit(spec);
    write_file(a.outdir + "/backward.csv", backward_trials_csv(out.trials));
    write_file(a.outdir + "/backward_summary.json", out.summary_json);
    if (a.json_stdout) std::cout << out.summary_json;
    std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " backward: max berr = ("
              << format_double(out.max_berr1) << ", " << format_double(out.max_berr2) << ", "
              << format_double(out.max_berr3) << ") <= " << format_double(out.threshold) << "\n";
    return out.pass ? kOk : kCheckExit;
}

// ------------------------------------------------------- verify-expansion

struct VerifyArgs {
    int n = 3;
    std::uint64_t seed = 5;
    std::string outdir = "out";
    bool json_stdout = false;
};

std::vector<int> default_sizes(int n) {
    if (n <= 2) return std::vector<int>(static_cast<std::size_t>(n), 1);
    std::vector<int> sizes{2};
    for (int i = 2; i < n; ++i) sizes.push_back(1);
    return sizes;
}

int cmd_verify(const VerifyArgs& a) {
    Rng rng(a.seed);
    const Signal sig = generate_clustered_signal({a.n, default_sizes(a.n), 5e-2, rng.next_u64()});
    const MomentVector m = moments_of(sig, 2 * a.n);
    const cvector d = draw_tolerance_coeffs(2 * a.n, rng.next_u64());
    std::vector<cplx> zs;
    for (int i = 0; i < 4; ++i) zs.push_back(std::polar(rng.uniform(0.8, 1.2), rng.angle()));
    const ExpansionReport rep =
        verify_expansion(m.values, d, a.n, zs, unit_circle_eps_samples(a.n + 2));

    std::ostringstream csv;
    csv << "z_re,z_im,kappa,theta_re,theta_im,direct_re,direct_im\n";
    for (std::size_t zi = 0; zi < zs.size(); ++zi)
        for (int kappa = 0; kappa <= a.n + 1; ++kappa) {
            const cplx t = rep.theta[static_cast<std::size_t>(kappa)][zi];
            const cplx c = rep.direct[static_cast<std::size_t>(kappa)][zi];
            csv << format_double(zs[zi].real()) << ',' << format_double(zs[zi].imag()) << ','
                << kappa << ',' << format_double(t.real()) << ',' << format_double(t.imag()) << ','
                << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
        }
    write_file(a.outdir + "/expansion.csv", csv.str());

    const bool pass = rep.max_rel_err <= 1e-8 && rep.det_d_rel_err <= 1e-10;
    json j{{"n", a.n},          {"seed", a.seed},
           {"max_rel_err", rep.max_rel_err}, {"det_d_rel_err", rep.det_d_rel_err},
           {"pass", pass}};
    write_file(a.outdir + "/expansion_summary.json", j.dump(2) + "\n");
    if (a.json_stdout) std::cout << j.dump(2) << "\n";
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " verify-expansion n=" << a.n
              << " max_rel_err=" << format_double(rep.max_rel_err)
              << " det_d_rel_err=" << format_double(rep.det_d_rel_err) << "\n";
    return pass ? kOk : kCheckExit;
}

// ----------------------------------------------------------- first-order

struct FirstOrderArgs {
    std::uint64_t seed = 11;
    std::string outdir = "out";
    bool json_stdout = false;
};

int cmd_first_order(const FirstOrderArgs& a) {
    Rng rng(a.seed);

    // closed form at n=1: c = (x d0 - d1)/alpha
    double n1_worst = 0;
    for (int t = 0; t < 5; ++t) {
        const Signal sig = generate_clustered_signal({1, {1}, 1e-1, rng.next_u64()});
        const cvector d = draw_tolerance_coeffs(2, rng.next_u64());
        const cplx closed = (sig.nodes[0] * d[0] - d[1]) / sig.amplitudes[0];
        const FirstOrderEntry e = first_order_constant(sig, d, 0);
        n1_worst = std::max(n1_worst, std::abs(e.c - closed) / std::max(1.0, std::abs(closed)));
    }
    const bool n1_pass = n1_worst <= 1e-6;

    // |c_j| vs delta for the cluster nodes of a 2+1 geometry
    std::ostringstream csv;
    csv << "delta,trial,node,abs_c,predicted_bound,seed\n";
    std::vector<std::pair<double, std::vector<double>>> per_point;
    for (double delta : log_grid(2e-2, 2e-1, 10)) {
        std::vector<double> ys;
        for (int t = 0; t < 8; ++t) {
            const std::uint64_t tseed = rng.next_u64();
            const Signal sig = generate_clustered_signal({3, {2, 1}, delta, tseed});
            const cvector d = draw_tolerance_coeffs(6, rng.next_u64());
            double worst = 0;
            for (int j = 0; j < 2; ++j) {
                const FirstOrderEntry e = first_order_constant(sig, d, j);
                csv << format_double(delta) << ',' << t << ',' << j << ','
                    << format_double(std::abs(e.c)) << ',' << format_double(e.predicted_bound)
                    << ',' << tseed << '\n';
                worst = std::max(worst, std::abs(e.c));
            }
            ys.push_back(worst);
        }
        per_point.emplace_back(delta, std::move(ys));
    }
    write_file(a.outdir + "/first_order.csv", csv.str());
    const Fit fit = fit_slope_xy(per_point, Rng::mix(a.seed, 3));
    const bool slope_pass = std::abs(fit.slope - (-2.0)) <= 0.3;

    // additivity in the tolerance coefficients
    double defect = 0;
    const Signal sig = generate_clustered_signal({3, {2, 1}, 1e-1, rng.next_u64()});
    for (int t = 0; t < 3; ++t) {
        const cvector d1 = draw_tolerance_coeffs(6, rng.next_u64());
        const cvector d2 = draw_tolerance_coeffs(6, rng.next_u64());
        for (int j = 0; j < 3; ++j)
            defect = std::max(defect, first_order_linearity_defect(sig, d1, d2, j));
    }
    const bool add_pass = defect <= 1e-4;

    const bool pass = n1_pass && slope_pass && add_pass;
    json j{{"seed", a.seed},
           {"n1_closed_form_rel_err", n1_worst},
           {"cluster_slope", fit.slope},
           {"cluster_slope_target", -2.0},
           {"additivity_defect", defect},
           {"pass", pass}};
    write_file(a.outdir + "/first_order_summary.json", j.dump(2) + "\n");
    if (a.json_stdout) std::cout << j.dump(2) << "\n";
    std::cout << (n1_pass ? "[PASS]" : "[FAIL]") << " first-order n=1 closed form rel err "
              << format_double(n1_worst) << "\n";
    std::cout << (slope_pass ? "[PASS]" : "[FAIL]") << " first-order cluster |c| slope "
              << format_double(fit.slope) << " target -2 tol 0.3\n";
    std::cout << (add_pass ? "[PASS]" : "[FAIL]") << " first-order additivity defect "
              << format_double(defect) << "\n";
    return pass ? kOk : kCheckExit;
}

// ----------------------------------------------------------------- naive

struct NaiveArgs {
    int ell = 2;
    std::uint64_t seed = 13;
    std::string outdir = "out";
    bool json_stdout = false;
};

int cmd_naive(const NaiveArgs& a) {
    NaiveSpec spec;
    spec.ell = a.ell;
    spec.seed = a.seed;
    if (a.ell == 2) {
        spec.delta_grid = log_grid(1e-3, 1e-1, 14);
        spec.trials_per_point = 12;
    } else if (a.ell == 3) {
        spec.delta_grid = log_grid(2e-2, 2e-1, 12);
        spec.trials_per_point = 12;
    } else {
        throw ArgumentError("naive: ell must be 2 or 3");
    }
    const auto records = naive_comparison(spec);
    std::ostringstream csv;
    write_naive_csv(records, csv);
    write_file(a.outdir + "/naive_l" + std::to_string(a.ell) + ".csv", csv.str());

    std::map<double, std::vector<double>> prony_pts, random_pts;
    for (const auto& r : records) {
        if (!r.success) continue;
        prony_pts[r.delta].push_back(r.prony_root_err);
        random_pts[r.delta].push_back(r.random_root_err);
    }
    const Fit pf = fit_slope_xy({prony_pts.begin(), prony_pts.end()}, Rng::mix(a.seed, 1));
    const Fit rf = fit_slope_xy({random_pts.begin(), random_pts.end()}, Rng::mix(a.seed, 2));
    const double prony_target = 2.0 - 2.0 * a.ell;
    const double random_target = 3.0 - 3.0 * a.ell;
    const bool pass = std::abs(pf.slope - prony_target) <= 0.35 &&
                      std::abs(rf.slope - random_target) <= 0.5 && pf.slope - rf.slope >= 0.5;
    json j{{"ell", a.ell},
           {"seed", a.seed},
           {"prony_root_slope", pf.slope},
           {"prony_target", prony_target},
           {"random_root_slope", rf.slope},
           {"random_target", random_target},
           {"slope_gap", pf.slope - rf.slope},
           {"pass", pass}};
    write_file(a.outdir + "/naive_l" + std::to_string(a.ell) + "_summary.json", j.dump(2) + "\n");
    if (a.json_stdout) std::cout << j.dump(2) << "\n";
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " naive ell=" << a.ell << " prony slope "
              << format_double(pf.slope) << " vs random " << format_double(rf.slope) << "\n";
    return pass ? kOk : kCheckExit;
}

// ------------------------------------------------------------------ plot

struct PlotArgs {
    std::string input;
    std::string out;
    std::string method_filter;
};

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int col(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    }
};

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read " + path);
    Csv csv;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (first) {
            csv.header = fields;
            first = false;
        } else {
            csv.rows.push_back(fields);
        }
    }
    return csv;
}

const std::vector<std::string> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#ff7f0e", "#8c564b"};

void add_median_line(plot::Series& series) {
    std::map<double, std::vector<double>> by_x;
    for (const auto& [x, y] : series.points) by_x[x].push_back(y);
    for (auto& [x, ys] : by_x) {
        std::sort(ys.begin(), ys.end());
        series.line.emplace_back(x, ys[ys.size() / 2]);
    }
}

int cmd_plot(const PlotArgs& a) {
    const Csv csv = read_csv(a.input);
    std::vector<plot::Panel> panels;

    auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };

    if (csv.col("kx") >= 0) {
        // sweep schema
        for (const char* required : {"method", "delta", "srf", "node_idx", "ka", "success"})
            if (csv.col(required) < 0) throw ArgumentError(std::string("missing column ") + required);
        const int c_method = csv.col("method");
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : csv.rows) {
            if (!a.method_filter.empty() && r[static_cast<std::size_t>(c_method)] != a.method_filter)
                continue;
            if (r[static_cast<std::size_t>(csv.col("success"))] != "1") continue;
            rows.push_back(r);
        }
        if (rows.empty()) throw ArgumentError("no rows left after filtering");
        const std::string method = rows.front()[static_cast<std::size_t>(c_method)];
        const bool srf_axis = method == "decimated" || method == "pencil";
        const std::string x_name = srf_axis ? "srf" : "delta";
        const int cx = csv.col(x_name);

        for (const std::string metric : {"kx", "ka", "discrepancy"}) {
            const int cm = csv.col(metric);
            const int cn = csv.col("node_idx");
            std::map<int, plot::Series> by_node;
            for (const auto& r : rows) {
                const double y = num(r[static_cast<std::size_t>(cm)]);
                if (!std::isfinite(y) || y <= 0) continue;
                const int node = std::stoi(r[static_cast<std::size_t>(cn)]);
                auto& s = by_node[node];
                s.points.emplace_back(num(r[static_cast<std::size_t>(cx)]), y);
            }
            if (by_node.empty()) continue;
            plot::Panel panel;
            panel.title = metric + " (" + method + ")";
            panel.x_label = x_name;
            panel.y_label = metric;
            int ci = 0;
            for (auto& [node, series] : by_node) {
                series.label = "node " + std::to_string(node);
                series.color = kPalette[static_cast<std::size_t>(ci++) % kPalette.size()];
                add_median_line(series);
                panel.series.push_back(std::move(series));
            }
            panels.push_back(std::move(panel));
        }
        // backward-error panel when the sweep recorded the estimates
        {
            plot::Panel panel;
            panel.title = "backward errors (" + method + ")";
            panel.x_label = x_name;
            panel.y_label = "berr";
            const char* fields[] = {"berr1", "berr2", "berr3"};
            for (int i = 0; i < 3; ++i) {
                plot::Series s;
                s.label = fields[i];
                s.color = kPalette[static_cast<std::size_t>(i)];
                for (const auto& r : rows) {
                    const double y = num(r[static_cast<std::size_t>(csv.col(fields[i]))]);
                    if (std::isfinite(y) && y > 0)
                        s.points.emplace_back(num(r[static_cast<std::size_t>(cx)]), y);
                }
                if (s.points.empty()) continue;
                add_median_line(s);
                panel.series.push_back(std::move(s));
            }
            if (!panel.series.empty()) panels.push_back(std::move(panel));
        }
    } else if (csv.col("cond") >= 0) {
        plot::Panel panel;
        panel.title = "Hankel condition number";
        panel.x_label = "delta";
        panel.y_label = "cond";
        plot::Series s;
        s.label = "cond";
        s.color = kPalette[0];
        for (const auto& r : csv.rows)
            s.points.emplace_back(num(r[static_cast<std::size_t>(csv.col("delta"))]),
                                  num(r[static_cast<std::size_t>(csv.col("cond"))]));
        add_median_line(s);
        panel.series.push_back(std::move(s));
        panels.push_back(std::move(panel));
    } else if (csv.col("prony_root_err") >= 0) {
        plot::Panel panel;
        panel.title = "structured vs random coefficient errors";
        panel.x_label = "delta";
        panel.y_label = "max root error";
        const char* fields[] = {"prony_root_err", "random_root_err"};
        for (int i = 0; i < 2; ++i) {
            plot::Series s;
            s.label = fields[i];
            s.color = kPalette[static_cast<std::size_t>(i)];
            for (const auto& r : csv.rows) {
                const double y = num(r[static_cast<std::size_t>(csv.col(fields[i]))]);
                if (std::isfinite(y) && y > 0)
                    s.points.emplace_back(num(r[static_cast<std::size_t>(csv.col("delta"))]), y);
            }
            add_median_line(s);
            panel.series.push_back(std::move(s));
        }
        panels.push_back(std::move(panel));
    } else if (csv.col("berr1") >= 0) {
        plot::Panel panel;
        panel.title = "backward errors";
        panel.x_label = "delta";
        panel.y_label = "berr";
        const char* fields[] = {"berr1", "berr2", "berr3"};
        for (int i = 0; i < 3; ++i) {
            plot::Series s;
            s.label = fields[i];
            s.color = kPalette[static_cast<std::size_t>(i)];
            for (const auto& r : csv.rows) {
                const double y = num(r[static_cast<std::size_t>(csv.col(fields[i]))]);
                if (std::isfinite(y) && y > 0)
                    s.points.emplace_back(num(r[static_cast<std::size_t>(csv.col("delta"))]), y);
            }
            add_median_line(s);
            panel.series.push_back(std::move(s));
        }
        panels.push_back(std::move(panel));
    } else {
        throw ArgumentError("unrecognized CSV schema: " + a.input);
    }

    if (panels.empty()) throw ArgumentError("nothing to plot after filtering");

    std::string out = a.out;
    if (out.empty()) out = std::filesystem::path(a.input).replace_extension(".svg").string();
    write_file(out, plot::render_svg(panels));

    // aggregate data alongside, for external tools
    std::ostringstream data;
    data << "panel,series,x,y_median\n";
    for (const auto& panel : panels)
        for (const auto& s : panel.series)
            for (const auto& [x, y] : s.line)
                data << panel.title << ',' << s.label << ',' << format_double(x) << ','
                     << format_double(y) << '\n';
    const std::string data_path =
        std::filesystem::path(out).replace_extension("").string() + "_data.csv";
    write_file(data_path, data.str());
    std::cout << "wrote " << out << " and " << data_path << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prony-type recovery of exponential sums: methods, sweeps, and audits"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a clustered signal instance");
    gen_cmd->add_option("--n", gen.n, "number of nodes")->required();
    gen_cmd->add_option("--clusters", gen.clusters, "cluster sizes, e.g. 2,1")->required();
    gen_cmd->add_option("--delta", gen.delta, "intra-cluster separation")->required();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--amp-lo", gen.amp_lo, "amplitude magnitude lower bound");
    gen_cmd->add_option("--amp-hi", gen.amp_hi, "amplitude magnitude upper bound");
    gen_cmd->add_option("-o,--output", gen.out, "output signal JSON path");

    RecoverArgs rec;
    auto* rec_cmd = app.add_subcommand("recover", "run one recovery on a signal file");
    rec_cmd->add_option("--signal", rec.signal_path, "signal JSON path")->required();
    rec_cmd->add_option("--method", rec.method, "classical|homogeneous|decimated|pencil");
    rec_cmd->add_option("--epsilon", rec.epsilon, "perturbation size");
    rec_cmd->add_option("--seed", rec.seed, "noise seed");
    rec_cmd->add_flag("--project", rec.project, "project recovered nodes to the unit circle");
    rec_cmd->add_option("--omega", rec.omega, "bandwidth for decimated/pencil");
    rec_cmd->add_option("--lambdas", rec.lambdas, "explicit decimation parameters, e.g. 1,2,4");
    rec_cmd->add_flag("--amps-first-n", rec.amps_first_n,
                      "pencil: solve amplitudes from the first n moments");
    rec_cmd->add_option("-o,--output", rec.out, "result JSON path");
    rec_cmd->add_flag("--json", rec.json_stdout, "print the result JSON to stdout");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a figure preset sweep");
    sweep_cmd->add_option("--preset", sweep.preset, "fig1|fig2|fig3|fig4|fig5")->required();
    sweep_cmd->add_option("-o,--output", sweep.outdir, "output directory");
    sweep_cmd->add_option("--seed", sweep.seed, "sweep seed");
    sweep_cmd->add_option("--trials", sweep.trials, "override trials per grid point");
    sweep_cmd->add_option("--points", sweep.points, "override grid point count");
    sweep_cmd->add_flag("--json", sweep.json_stdout, "print the summary JSON to stdout");

    BackwardArgs back;
    auto* back_cmd = app.add_subcommand("backward", "backward-error audit of the classical method");
    back_cmd->add_option("--trials", back.trials, "number of random runs");
    back_cmd->add_option("--seed", back.seed, "audit seed");
    back_cmd->add_option("--epsilon", back.epsilon, "perturbation size");
    back_cmd->add_option("--delta-min", back.delta_min, "smallest separation");
    back_cmd->add_option("--delta-max", back.delta_max, "largest separation");
    back_cmd->add_option("-o,--output", back.outdir, "output directory");
    back_cmd->add_flag("--json", back.json_stdout, "print the summary JSON to stdout");

    VerifyArgs verify;
    auto* verify_cmd =
        app.add_subcommand("verify-expansion", "check the determinant eps-expansion identity");
    verify_cmd->add_option("--n", verify.n, "number of nodes (2..4 typical)");
    verify_cmd->add_option("--seed", verify.seed, "instance seed");
    verify_cmd->add_option("-o,--output", verify.outdir, "output directory");
    verify_cmd->add_flag("--json", verify.json_stdout, "print the summary JSON to stdout");

    FirstOrderArgs first;
    auto* first_cmd =
        app.add_subcommand("first-order", "first-order node-error constant checks");
    first_cmd->add_option("--seed", first.seed, "seed");
    first_cmd->add_option("-o,--output", first.outdir, "output directory");
    first_cmd->add_flag("--json", first.json_stdout, "print the summary JSON to stdout");

    NaiveArgs naive;
    auto* naive_cmd =
        app.add_subcommand("naive", "structured vs random coefficient-perturbation contrast");
    naive_cmd->add_option("--ell", naive.ell, "single-cluster size (2 or 3)");
    naive_cmd->add_option("--seed", naive.seed, "seed");
    naive_cmd->add_option("-o,--output", naive.outdir, "output directory");
    naive_cmd->add_flag("--json", naive.json_stdout, "print the summary JSON to stdout");

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "render an SVG from a sweep CSV");
    plot_cmd->add_option("--input", plot_args.input, "CSV produced by sweep/backward/naive")
        ->required();
    plot_cmd->add_option("-o,--output", plot_args.out, "SVG output path");
    plot_cmd->add_option("--method", plot_args.method_filter, "filter rows by method");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kArgExit;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (rec_cmd->parsed()) return cmd_recover(rec);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep);
        if (back_cmd->parsed()) return cmd_backward(back);
        if (verify_cmd->parsed()) return cmd_verify(verify);
        if (first_cmd->parsed()) return cmd_first_order(first);
        if (naive_cmd->parsed()) return cmd_naive(naive);
        if (plot_cmd->parsed()) return cmd_plot(plot_args);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArgExit;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kArgExit;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kArgExit;
    }
    return kArgExit;
}
