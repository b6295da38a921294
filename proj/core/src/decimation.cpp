#include "prony/decimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "prony/errors.hpp"

namespace prony {

DecimationPlan DecimationPlan::default_plan(double omega, int n) {
    if (!(omega > 0)) throw ArgumentError("DecimationPlan: omega must be positive");
    DecimationPlan plan;
    plan.omega = omega;
    const int lambda_max = static_cast<int>(omega / (2 * n - 1));
    for (int l = 1; l <= std::max(1, lambda_max); ++l) plan.lambdas.push_back(l);
    plan.validate(n);
    return plan;
}

void DecimationPlan::validate(int n) const {
    if (lambdas.empty()) throw ArgumentError("DecimationPlan: empty lambda list");
    for (int l : lambdas) {
        if (l < 1) throw ArgumentError("DecimationPlan: lambda must be at least 1");
        if (static_cast<double>(l) * (2 * n - 1) > omega)
            throw ArgumentError("DecimationPlan: lambda*(2n-1) exceeds omega");
    }
}

namespace {

double residual_sumsq(const cvector& nodes, const cvector& amps, const cvector& m_full) {
    double acc = 0;
    cvector power(nodes.size(), cplx{1, 0});
    for (std::size_t k = 0; k < m_full.size(); ++k) {
        cplx fit = 0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            fit += amps[j] * power[j];
            power[j] *= nodes[j];
        }
        acc += std::norm(fit - m_full[k]);
    }
    return acc;
}

double residual_maxabs(const cvector& nodes, const cvector& amps, const cvector& m_full) {
    double worst = 0;
    cvector power(nodes.size(), cplx{1, 0});
    for (std::size_t k = 0; k < m_full.size(); ++k) {
        cplx fit = 0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            fit += amps[j] * power[j];
            power[j] *= nodes[j];
        }
        worst = std::max(worst, std::abs(fit - m_full[k]));
    }
    return worst;
}

cvector lift_candidates(cplx y, int lambda) {
    const double mag = std::pow(std::abs(y), 1.0 / lambda);
    const double base = std::arg(y) / lambda;
    cvector out;
    out.reserve(static_cast<std::size_t>(lambda));
    for (int t = 0; t < lambda; ++t)
        out.push_back(std::polar(mag, base + 2.0 * std::numbers::pi * t / lambda));
    return out;
}

struct Candidate { // one lambda's lifted solution
    cvector nodes_raw;
    cvector amps_raw; // decimated-grid amplitudes attached to nodes_raw
    cvector q_coeffs;
    double sumsq = 0;
    int lambda = 1;
};

} // namespace

RecoveryResult decimated_prony(const MomentVector& m_full, int n,
                               const DecimationPlan& plan, bool project) {
    plan.validate(n);
    const int len = m_full.size();
    for (int l : plan.lambdas)
        if (l * (2 * n - 1) > len - 1)
            throw ArgumentError("decimated_prony: not enough samples for lambda = " + std::to_string(l));

    // lambda = 1 coarse solve anchors the choice of lambda-th root branches.
    cvector anchor;
    std::string anchor_cause;
    try {
        const MomentVector head(cvector(m_full.values.begin(), m_full.values.begin() + 2 * n));
        anchor = prony_classical(head, n, false).nodes_raw;
    } catch (const NumericalError& e) {
        anchor_cause = e.what();
    }

    std::vector<std::string> causes;
    std::optional<Candidate> best;

    for (int lambda : plan.lambdas) {
        try {
            if (lambda > 1 && anchor.empty())
                throw NumericalError("coarse anchor unavailable: " + anchor_cause);
            cvector sub(static_cast<std::size_t>(2 * n));
            for (int k = 0; k < 2 * n; ++k) sub[static_cast<std::size_t>(k)] = m_full[lambda * k];
            RecoveryResult core = prony_classical(MomentVector(sub), n, false);

            Candidate cand;
            cand.lambda = lambda;
            cand.q_coeffs = core.prony_coeffs;
            if (lambda == 1) {
                cand.nodes_raw = core.nodes_raw;
                cand.amps_raw = core.amplitudes;
            } else {
                // Greedy branch selection: each decimated root contributes
                // lambda candidates; take the one closest to an unused anchor.
                std::vector<bool> used(anchor.size(), false);
                cand.nodes_raw.resize(static_cast<std::size_t>(n));
                cand.amps_raw = core.amplitudes;
                std::vector<cvector> cand_sets(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                    cand_sets[static_cast<std::size_t>(j)] =
                        lift_candidates(core.nodes_raw[static_cast<std::size_t>(j)], lambda);
                for (int j = 0; j < n; ++j) {
                    double best_d = std::numeric_limits<double>::infinity();
                    cplx best_c = cand_sets[static_cast<std::size_t>(j)].front();
                    int best_a = -1;
                    for (const cplx& c : cand_sets[static_cast<std::size_t>(j)]) {
                        for (std::size_t a = 0; a < anchor.size(); ++a) {
                            if (used[a]) continue;
                            const double d = std::abs(c - anchor[a]);
                            if (d < best_d) {
                                best_d = d;
                                best_c = c;
                                best_a = static_cast<int>(a);
                            }
                        }
                    }
                    if (best_a >= 0) used[static_cast<std::size_t>(best_a)] = true;
                    cand.nodes_raw[static_cast<std::size_t>(j)] = best_c;
                }
                // One joint refinement pass against the full-bandwidth residual.
                double cur = residual_sumsq(cand.nodes_raw, cand.amps_raw, m_full.values);
                for (int j = 0; j < n; ++j) {
                    for (const cplx& c : cand_sets[static_cast<std::size_t>(j)]) {
                        cvector trial = cand.nodes_raw;
                        trial[static_cast<std::size_t>(j)] = c;
                        const double r = residual_sumsq(trial, cand.amps_raw, m_full.values);
                        if (r < cur) {
                            cur = r;
                            cand.nodes_raw = std::move(trial);
                        }
                    }
                }
            }
            cand.sumsq = residual_sumsq(cand.nodes_raw, cand.amps_raw, m_full.values);
            if (!best || cand.sumsq < best->sumsq) best = std::move(cand);
        } catch (const NumericalError& e) {
            causes.push_back("lambda=" + std::to_string(lambda) + ": " + e.what());
        }
    }

    if (!best) {
        std::string msg = "decimated_prony: every lambda failed";
        for (const auto& c : causes) msg += "; " + c;
        throw NumericalError(msg);
    }

    // Canonical node order, amplitudes carried along.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const cplx& x = best->nodes_raw[static_cast<std::size_t>(a)];
        const cplx& y = best->nodes_raw[static_cast<std::size_t>(b)];
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });

    RecoveryResult r;
    r.method = Method::decimated;
    r.projected = project;
    r.lambda = best->lambda;
    r.prony_coeffs = best->q_coeffs;
    r.nodes_raw.resize(static_cast<std::size_t>(n));
    cvector amps_sorted(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes_raw[static_cast<std::size_t>(i)] = best->nodes_raw[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        amps_sorted[static_cast<std::size_t>(i)] = best->amps_raw[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    }
    r.nodes_used = project ? project_to_circle(r.nodes_raw) : r.nodes_raw;

    if (project) {
        // Re-solve on the decimated grid of the winning lambda with the
        // lambda-th powers of the projected nodes.
        const int lambda = best->lambda;
        cvector powered(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            cplx p = 1.0;
            for (int t = 0; t < lambda; ++t) p *= r.nodes_used[static_cast<std::size_t>(j)];
            powered[static_cast<std::size_t>(j)] = lambda == 1 ? r.nodes_used[static_cast<std::size_t>(j)] : p;
        }
        cvector sub_head(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) sub_head[static_cast<std::size_t>(k)] = m_full[lambda * k];
        r.amplitudes = solve_amplitudes(powered, sub_head);
    } else {
        r.amplitudes = std::move(amps_sorted);
    }
    r.residual_moments = residual_maxabs(r.nodes_used, r.amplitudes, m_full.values);
    return r;
}

} // namespace prony
