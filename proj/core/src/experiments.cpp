#include "prony/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "prony/backward.hpp"
#include "prony/decimation.hpp"
#include "prony/errors.hpp"
#include "prony/linalg.hpp"
#include "prony/pencil.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"
#include "prony/serialize.hpp"
#include "prony/theory.hpp"

namespace prony {

namespace {
const double kNan = std::numeric_limits<double>::quiet_NaN();

std::string sizes_tag(const std::vector<int>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(sizes[i]);
    }
    return out;
}

// Threshold-regime predicate: for the bandwidth-limited methods the node
// powers enter through x^lambda, so the effective separation is
// omega*delta/(2n-1) rather than delta itself.
bool in_regime(const TrialRecord& rec, double c, int ell_star) {
    if (rec.epsilon == 0) return true;
    double delta_eff = rec.delta;
    if (rec.method == "decimated" || rec.method == "pencil")
        delta_eff = std::min(1.0, rec.omega * rec.delta / (2.0 * rec.n - 1.0));
    return rec.epsilon <= c * std::pow(delta_eff, 2 * ell_star - 1);
}

} // namespace

int configured_thread_count() {
    const char* env = std::getenv("PRONY_THREADS");
    if (env == nullptr) return 1;
    const int v = std::atoi(env);
    return v >= 1 ? v : 1;
}

void parallel_for(int count, const std::function<void(int)>& body) {
    const int threads = std::min(configured_thread_count(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0 && hi > lo) || points < 2) throw ArgumentError("log_grid: bad range");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    const bool srf_axis = !spec.srf_grid.empty();
    if (srf_axis == !spec.delta_grid.empty())
        throw ArgumentError("run_sweep: exactly one of delta_grid/srf_grid must be set");
    if (spec.trials_per_point < 1) throw ArgumentError("run_sweep: trials must be >= 1");
    const auto& grid = srf_axis ? spec.srf_grid : spec.delta_grid;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw ArgumentError("run_sweep: grid must be strictly increasing");

    const int points = static_cast<int>(grid.size());
    const int total = points * spec.trials_per_point;
    std::vector<std::vector<TrialRecord>> slots(static_cast<std::size_t>(total));

    parallel_for(total, [&](int slot) {
        const int gi = slot / spec.trials_per_point;
        const int trial = slot % spec.trials_per_point;
        const double gval = grid[static_cast<std::size_t>(gi)];
        const std::uint64_t tseed =
            Rng::mix(spec.seed, static_cast<std::uint64_t>(gi) * 100003ULL +
                                    static_cast<std::uint64_t>(trial) * 7919ULL + 1ULL);
        Rng rng(tseed);

        TrialRecord base;
        base.method = method_name(spec.method);
        base.n = spec.n;
        base.cluster_sizes = sizes_tag(spec.cluster_sizes);
        base.seed = tseed;
        base.discrepancy = kNan;
        base.berr1 = base.berr2 = base.berr3 = kNan;

        double omega = spec.omega_fixed > 0 ? spec.omega_fixed : 2.0 * spec.n - 1.0;
        if (spec.omega_policy == OmegaPolicy::sampled)
            omega = rng.uniform_int(static_cast<int>(spec.omega_lo), static_cast<int>(spec.omega_hi));
        const double delta = srf_axis ? 1.0 / (omega * gval) : gval;
        const double srf = srf_axis ? gval : 1.0 / (omega * delta);
        double epsilon = spec.epsilon_fixed;
        if (spec.epsilon_policy == EpsilonPolicy::log_uniform)
            epsilon = rng.log_uniform(spec.epsilon_lo, spec.epsilon_hi);

        base.delta = delta;
        base.srf = srf;
        base.epsilon = epsilon;
        base.omega = omega;

        auto& rows = slots[static_cast<std::size_t>(slot)];
        try {
            GenRequest gen{spec.n, spec.cluster_sizes, delta, rng.next_u64()};
            const Signal signal = generate_clustered_signal(gen);
            const int count = (spec.method == Method::classical || spec.method == Method::homogeneous)
                                  ? 2 * spec.n
                                  : static_cast<int>(omega) + 1;
            const MomentVector m = moments_of(signal, count);
            NoiseSpec noise{epsilon, {}, rng.next_u64()};
            const MomentVector m_tilde = perturb(m, noise);

            RecoveryResult result;
            switch (spec.method) {
                case Method::classical:
                    result = prony_classical(m_tilde, spec.n, spec.project);
                    break;
                case Method::homogeneous:
                    result = prony_homogeneous(m_tilde, spec.n, spec.project);
                    break;
                case Method::decimated:
                    result = decimated_prony(m_tilde, spec.n,
                                             DecimationPlan::default_plan(omega, spec.n), spec.project);
                    break;
                case Method::pencil:
                    result = matrix_pencil(m_tilde, spec.n, PencilParams::defaults(), spec.project);
                    break;
            }
            score_against(result, signal);

            double b1 = kNan, b2 = kNan, b3 = kNan;
            if (spec.record_berr && !result.prony_coeffs.empty()) {
                try {
                    const BackwardErrorReport rep = backward_report(result, m_tilde);
                    b1 = rep.berr1;
                    b2 = rep.berr2;
                    b3 = rep.berr3;
                } catch (const NumericalError&) {
                    // estimator failure is recorded as nan, the trial stands
                }
            }

            // Discrepancy of the first node outside the largest cluster.
            double disc = kNan;
            int disc_node = -1;
            if (signal.config.partition.size() > 1 && epsilon > 0) {
                const int big = signal.config.largest_cluster();
                for (int j = 0; j < spec.n && disc_node < 0; ++j)
                    if (signal.config.cluster_of(j + 1) != big) disc_node = j;
                if (disc_node >= 0) {
                    const cvector ordered = nodes_in_truth_order(result);
                    disc = std::abs(cluster_discrepancy(signal, ordered, disc_node, big)) / epsilon;
                }
            }

            for (int j = 0; j < spec.n; ++j) {
                TrialRecord rec = base;
                rec.success = true;
                const int t = result.matching[static_cast<std::size_t>(j)];
                const double ex = result.node_errors[static_cast<std::size_t>(j)];
                const double ea = result.amp_errors[static_cast<std::size_t>(j)];
                rec.kx = epsilon > 0 ? omega * ex / epsilon : omega * ex;
                rec.ka = epsilon > 0 ? ea / epsilon : ea;
                rec.discrepancy = (t == disc_node) ? disc : kNan;
                rec.berr1 = b1;
                rec.berr2 = b2;
                rec.berr3 = b3;
                rec.node_idx = t; // rows are keyed by ground-truth node index
                rows.push_back(rec);
            }
        } catch (const std::exception&) {
            TrialRecord rec = base;
            rec.node_idx = -1;
            rec.success = false;
            rec.kx = kNan;
            rec.ka = kNan;
            rows.push_back(rec);
        }
    });

    SweepResult out;
    std::vector<int> failures(static_cast<std::size_t>(points), 0);
    for (int slot = 0; slot < total; ++slot) {
        for (const auto& rec : slots[static_cast<std::size_t>(slot)]) {
            if (!rec.success) ++failures[static_cast<std::size_t>(slot / spec.trials_per_point)];
            out.records.push_back(rec);
        }
    }
    for (int gi = 0; gi < points; ++gi) {
        if (2 * failures[static_cast<std::size_t>(gi)] > spec.trials_per_point) {
            out.warnings.push_back("grid point " + std::to_string(gi) + " (" +
                                   format_double(grid[static_cast<std::size_t>(gi)]) + "): " +
                                   std::to_string(failures[static_cast<std::size_t>(gi)]) + "/" +
                                   std::to_string(spec.trials_per_point) + " trials failed");
        }
    }
    return out;
}

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "method,n,cluster_sizes,delta,srf,epsilon,omega,node_idx,kx,ka,"
           "discrepancy,berr1,berr2,berr3,success,seed\n";
    for (const auto& r : records) {
        out << r.method << ',' << r.n << ',' << r.cluster_sizes << ',' << format_double(r.delta)
            << ',' << format_double(r.srf) << ',' << format_double(r.epsilon) << ','
            << format_double(r.omega) << ',' << r.node_idx << ',' << format_double(r.kx) << ','
            << format_double(r.ka) << ',' << format_double(r.discrepancy) << ','
            << format_double(r.berr1) << ',' << format_double(r.berr2) << ','
            << format_double(r.berr3) << ',' << (r.success ? 1 : 0) << ',' << r.seed << '\n';
    }
}

Fit fit_slope_xy(const std::vector<std::pair<double, std::vector<double>>>& per_point_values,
                 std::uint64_t bootstrap_seed, Aggregate aggregate) {
    std::vector<std::pair<double, std::vector<double>>> usable;
    for (const auto& [x, ys] : per_point_values) {
        std::vector<double> pos;
        for (double y : ys)
            if (std::isfinite(y) && y > 0) pos.push_back(y);
        if (!pos.empty() && x > 0) usable.emplace_back(x, std::move(pos));
    }
    if (usable.size() < 5) throw ArgumentError("fit_slope: need at least 5 usable grid points");

    auto median = [aggregate](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        if (aggregate == Aggregate::q90)
            return v[std::min(n - 1, static_cast<std::size_t>(0.9 * n))];
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    auto ols = [](const std::vector<double>& lx, const std::vector<double>& ly) {
        const double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
            syy += ly[i] * ly[i];
        }
        const double vx = sxx - sx * sx / n;
        const double cxy = sxy - sx * sy / n;
        const double vy = syy - sy * sy / n;
        const double slope = cxy / vx;
        const double intercept = (sy - slope * sx) / n;
        const double r2 = vy > 0 ? (cxy * cxy) / (vx * vy) : 1.0;
        return std::array<double, 3>{slope, intercept, r2};
    };

    std::vector<double> lx, ly;
    for (const auto& [x, ys] : usable) {
        lx.push_back(std::log10(x));
        ly.push_back(std::log10(median(ys)));
    }
    const auto fit0 = ols(lx, ly);

    Fit fit;
    fit.slope = fit0[0];
    fit.intercept = fit0[1];
    fit.r2 = fit0[2];
    fit.points = static_cast<int>(usable.size());

    const int reps = 200;
    std::vector<double> slopes;
    slopes.reserve(reps);
    Rng rng(bootstrap_seed);
    for (int b = 0; b < reps; ++b) {
        std::vector<double> by(ly.size());
        for (std::size_t p = 0; p < usable.size(); ++p) {
            const auto& ys = usable[p].second;
            std::vector<double> resampled(ys.size());
            for (std::size_t t = 0; t < ys.size(); ++t)
                resampled[t] = ys[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(ys.size()) - 1))];
            by[p] = std::log10(median(resampled));
        }
        slopes.push_back(ols(lx, by)[0]);
    }
    std::sort(slopes.begin(), slopes.end());
    fit.ci_lo = slopes[static_cast<std::size_t>(0.05 * (reps - 1))];
    fit.ci_hi = slopes[static_cast<std::size_t>(0.95 * (reps - 1))];
    return fit;
}

Fit fit_slope(const std::vector<TrialRecord>& records, Axis x, Metric y,
              const RecordFilter& filter, std::uint64_t bootstrap_seed, Aggregate aggregate) {
    auto metric_of = [y](const TrialRecord& r) {
        switch (y) {
            case Metric::kx: return r.kx;
            case Metric::ka: return r.ka;
            case Metric::discrepancy: return r.discrepancy;
            case Metric::berr1: return r.berr1;
            case Metric::berr2: return r.berr2;
            case Metric::berr3: return r.berr3;
        }
        return kNan;
    };
    // Aggregate per (grid value, trial seed): max of the metric over the
    // selected nodes of one trial.
    std::map<double, std::map<std::uint64_t, double>> table;
    for (const auto& r : records) {
        if (!r.success || r.node_idx < 0) continue;
        if (!filter.node_set.empty() &&
            std::find(filter.node_set.begin(), filter.node_set.end(), r.node_idx) ==
                filter.node_set.end())
            continue;
        if (filter.in_regime_only && !in_regime(r, filter.regime_c, filter.ell_star)) continue;
        const double xv = x == Axis::delta ? r.delta : r.srf;
        if (xv < filter.x_min) continue;
        const double yv = metric_of(r);
        if (!std::isfinite(yv)) continue;
        auto& cell = table[xv][r.seed];
        cell = std::max(cell, yv);
    }
    std::vector<std::pair<double, std::vector<double>>> per_point;
    for (const auto& [xv, trials] : table) {
        std::vector<double> ys;
        ys.reserve(trials.size());
        for (const auto& [seed, yv] : trials) ys.push_back(yv);
        per_point.emplace_back(xv, std::move(ys));
    }
    return fit_slope_xy(per_point, bootstrap_seed, aggregate);
}

double condition_number_hankel(const Signal& signal) {
    const int n = static_cast<int>(signal.nodes.size());
    const MomentVector m = moments_of(signal, std::max(1, 2 * n - 1));
    return condition_number(hankel_from(m, n));
}

std::vector<CondRecord> condition_sweep(int ell, const std::vector<double>& delta_grid,
                                        int trials, std::uint64_t seed) {
    std::vector<CondRecord> out;
    for (std::size_t gi = 0; gi < delta_grid.size(); ++gi) {
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t tseed = Rng::mix(seed, gi * 131ULL + static_cast<std::uint64_t>(t));
            CondRecord rec;
            rec.delta = delta_grid[gi];
            rec.trial = t;
            rec.seed = tseed;
            const Signal sig = generate_clustered_signal({ell, {ell}, rec.delta, tseed});
            rec.cond = condition_number_hankel(sig);
            out.push_back(rec);
        }
    }
    return out;
}

void write_cond_csv(const std::vector<CondRecord>& records, std::ostream& out) {
    out << "delta,trial,cond,seed\n";
    for (const auto& r : records)
        out << format_double(r.delta) << ',' << r.trial << ',' << format_double(r.cond) << ','
            << r.seed << '\n';
}

std::vector<NaiveRecord> naive_comparison(const NaiveSpec& spec) {
    if (spec.ell < 2) throw ArgumentError("naive_comparison: needs a cluster (ell >= 2)");
    const int n = spec.ell;
    std::vector<NaiveRecord> out;
    for (std::size_t gi = 0; gi < spec.delta_grid.size(); ++gi) {
        for (int t = 0; t < spec.trials_per_point; ++t) {
            const std::uint64_t tseed =
                Rng::mix(spec.seed, gi * 131071ULL + static_cast<std::uint64_t>(t) * 31ULL);
            Rng rng(tseed);
            NaiveRecord rec;
            rec.delta = spec.delta_grid[gi];
            rec.trial = t;
            rec.seed = tseed;
            try {
                const Signal sig = generate_clustered_signal({n, {n}, rec.delta, rng.next_u64()});
                const MomentVector m = moments_of(sig, 2 * n);
                const MomentVector m_tilde = perturb(m, {spec.epsilon, {}, rng.next_u64()});
                RecoveryResult res = prony_classical(m_tilde, n, false);
                score_against(res, sig);
                rec.prony_root_err =
                    *std::max_element(res.node_errors.begin(), res.node_errors.end());

                const MonicPolynomial p_true = coeffs_from_roots(sig.nodes);
                cvector dq(static_cast<std::size_t>(n));
                double dq_norm = 0;
                for (int i = 0; i < n; ++i) {
                    dq[static_cast<std::size_t>(i)] = res.prony_coeffs[static_cast<std::size_t>(i)] -
                                                      p_true.coeffs[static_cast<std::size_t>(i)];
                    dq_norm = std::max(dq_norm, std::abs(dq[static_cast<std::size_t>(i)]));
                }
                rec.dq_norm = dq_norm;

                // Random perturbation of p with per-coefficient magnitudes
                // matching the Prony run's coefficient errors.
                MonicPolynomial p_rand = p_true;
                for (int i = 0; i < n; ++i)
                    p_rand.coeffs[static_cast<std::size_t>(i)] +=
                        std::polar(std::abs(dq[static_cast<std::size_t>(i)]), rng.angle());
                const cvector rts = roots(p_rand);
                const std::vector<int> match = match_nodes(rts, sig.nodes);
                double worst = 0;
                for (int jj = 0; jj < n; ++jj)
                    worst = std::max(worst,
                                     std::abs(rts[static_cast<std::size_t>(jj)] -
                                              sig.nodes[static_cast<std::size_t>(match[static_cast<std::size_t>(jj)])]));
                rec.random_root_err = worst;
                rec.success = true;
            } catch (const std::exception&) {
                rec.success = false;
                rec.dq_norm = rec.prony_root_err = rec.random_root_err = kNan;
            }
            out.push_back(rec);
        }
    }
    return out;
}

void write_naive_csv(const std::vector<NaiveRecord>& records, std::ostream& out) {
    out << "delta,trial,dq_norm,prony_root_err,random_root_err,success,seed\n";
    for (const auto& r : records)
        out << format_double(r.delta) << ',' << r.trial << ',' << format_double(r.dq_norm) << ','
            << format_double(r.prony_root_err) << ',' << format_double(r.random_root_err) << ','
            << (r.success ? 1 : 0) << ',' << r.seed << '\n';
}

} // namespace prony
