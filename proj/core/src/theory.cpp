#include "prony/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "prony/errors.hpp"
#include "prony/recovery.hpp"
#include "prony/rootfind.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
} // namespace

GD build_g_and_d(const cvector& moments, const cvector& d, cplx z, int n) {
    if (static_cast<int>(moments.size()) < 2 * n)
        throw ArgumentError("build_g_and_d: need 2n moments");
    if (static_cast<int>(d.size()) < 2 * n)
        throw ArgumentError("build_g_and_d: need 2n tolerance coefficients");
    GD gd{ComplexMatrix(n + 1, n + 1), ComplexMatrix(n + 1, n + 1)};
    cplx zp = 1.0;
    for (int j = 0; j <= n; ++j) {
        gd.g(0, j) = zp;
        zp *= z;
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            gd.g(i, j) = moments[static_cast<std::size_t>(i - 1 + j)];
            gd.d(i, j) = d[static_cast<std::size_t>(i - 1 + j)];
        }
    }
    return gd;
}

std::vector<double> chebyshev_eps_samples(int count, double lo, double hi) {
    if (count < 1) throw ArgumentError("chebyshev_eps_samples: count must be positive");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            mid + half * std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * count));
    return out;
}

cvector unit_circle_eps_samples(int count, double radius) {
    if (count < 1 || radius <= 0) throw ArgumentError("unit_circle_eps_samples: bad arguments");
    cvector out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            std::polar(radius, 2.0 * std::numbers::pi * i / count);
    return out;
}

namespace {

// Newton divided differences, expanded to monomial coefficients. Exactly
// reproduces constants (identical samples give exact zero differences), which
// keeps the D = 0 case clean.
cvector interpolate_monomial(const cvector& t, const cvector& f) {
    const std::size_t n = t.size();
    cvector coef = f;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (t[i] - t[i - j]);
    cvector mono(n, cplx{0, 0});
    cvector basis{cplx{1, 0}};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < basis.size(); ++i) mono[i] += coef[k] * basis[i];
        if (k + 1 < n) {
            cvector next(basis.size() + 1, cplx{0, 0});
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i] -= t[k] * basis[i];
                next[i + 1] += basis[i];
            }
            basis = std::move(next);
        }
    }
    return mono;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    cplx acc = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
    return acc;
}

} // namespace

ExpansionReport verify_expansion(const cvector& moments, const cvector& d, int n,
                                 const std::vector<cplx>& z_samples,
                                 const std::vector<double>& eps_samples) {
    return verify_expansion(moments, d, n, z_samples,
                            cvector(eps_samples.begin(), eps_samples.end()));
}

ExpansionReport verify_expansion(const cvector& moments, const cvector& d, int n,
                                 const std::vector<cplx>& z_samples,
                                 const cvector& eps_samples) {
    if (static_cast<int>(eps_samples.size()) < n + 2)
        throw ArgumentError("verify_expansion: need at least n+2 eps samples");
    cvector eps(eps_samples.begin(), eps_samples.begin() + (n + 2));
    double span = 0, min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eps.size(); ++i) {
        for (std::size_t j = i + 1; j < eps.size(); ++j) {
            const double g = std::abs(eps[i] - eps[j]);
            min_gap = std::min(min_gap, g);
            span = std::max(span, g);
        }
    }
    if (min_gap == 0.0 || span / min_gap > 1e8)
        throw ArgumentError("verify_expansion: eps samples too clustered for interpolation");

    ExpansionReport report;
    report.n = n;
    report.z_samples = z_samples;
    report.theta.assign(static_cast<std::size_t>(n + 2), {});
    report.direct.assign(static_cast<std::size_t>(n + 2), {});

    const ComplexMatrix dmat = build_g_and_d(moments, d, 0.0, n).d;
    std::vector<ComplexMatrix> adj_d;
    for (int r = 0; r <= n + 1; ++r) adj_d.push_back(higher_adjugate(dmat, r));
    const cplx det_d = det(dmat);

    double worst = 0, worst_detd = 0;
    for (const cplx& z : z_samples) {
        const ComplexMatrix g = build_g_and_d(moments, d, z, n).g;

        cvector theta(static_cast<std::size_t>(n + 2));
        double scale = 0;
        for (int kappa = 0; kappa <= n + 1; ++kappa) {
            const int r = n + 1 - kappa;
            theta[static_cast<std::size_t>(kappa)] =
                trace_product(adj_d[static_cast<std::size_t>(r)], compound(g, r));
            scale = std::max(scale, std::abs(theta[static_cast<std::size_t>(kappa)]));
        }

        cvector f(eps.size());
        for (std::size_t t = 0; t < eps.size(); ++t) f[t] = det(g + dmat.scaled(eps[t]));
        const cvector mono = interpolate_monomial(eps, f);

        for (int kappa = 0; kappa <= n + 1; ++kappa)
            scale = std::max(scale, std::abs(mono[static_cast<std::size_t>(kappa)]));
        // Mismatch relative to the coefficient scale of the polynomial at this
        // z: coefficientwise ratios are undefined at the structural zeros
        // (the zero first row of D makes det(D) and often more vanish exactly).
        for (int kappa = 0; kappa <= n + 1; ++kappa) {
            const cplx a = theta[static_cast<std::size_t>(kappa)];
            const cplx b = mono[static_cast<std::size_t>(kappa)];
            report.theta[static_cast<std::size_t>(kappa)].push_back(a);
            report.direct[static_cast<std::size_t>(kappa)].push_back(b);
            worst = std::max(worst, std::abs(a - b) / std::max(scale, 1e-300));
        }
        const cplx c_top = mono[static_cast<std::size_t>(n + 1)];
        const double denom_d = std::max({std::abs(det_d), scale, 1e-300});
        worst_detd = std::max(worst_detd, std::abs(c_top - det_d) / denom_d);
    }
    report.max_rel_err = worst;
    report.det_d_rel_err = worst_detd;
    return report;
}

cplx gamma_beta_gamma(const cvector& moments, int n, int kappa,
                      const std::vector<int>& beta, const std::vector<int>& gamma, cplx z) {
    if (kappa < 1 || kappa > n - 1) throw ArgumentError("gamma_beta_gamma: kappa out of [1, n-1]");
    const int size = n + 1 - kappa;
    auto check_seq = [&](const std::vector<int>& s, const char* name) {
        if (static_cast<int>(s.size()) != size)
            throw ArgumentError(std::string("gamma_beta_gamma: bad length for ") + name);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 1 || s[i] > n + 1)
                throw ArgumentError(std::string("gamma_beta_gamma: index out of range in ") + name);
            if (i > 0 && s[i] <= s[i - 1])
                throw ArgumentError(std::string("gamma_beta_gamma: not strictly increasing: ") + name);
        }
    };
    check_seq(beta, "beta");
    check_seq(gamma, "gamma");
    if (beta.front() != 1) throw ArgumentError("gamma_beta_gamma: beta must contain 1");
    if (static_cast<int>(moments.size()) < 2 * n)
        throw ArgumentError("gamma_beta_gamma: need 2n moments");

    const int a = gamma[0] - 1;
    const int b = (beta[1] - 2) + (gamma[0] - 1);
    ComplexMatrix m(size, size);
    for (int c = 0; c < size; ++c) {
        const int k_off = gamma[static_cast<std::size_t>(c)] - gamma[0];
        m(0, c) = std::pow(z, a + k_off);
        for (int t = 1; t < size; ++t) {
            const int l_off = beta[static_cast<std::size_t>(t)] - beta[1];
            m(t, c) = moments[static_cast<std::size_t>(b + l_off + k_off)];
        }
    }
    return det(m);
}

cplx theta_from_gamma_sum(const cvector& moments, const cvector& d, int n, int kappa, cplx z) {
    if (kappa < 1 || kappa > n - 1) throw ArgumentError("theta_from_gamma_sum: kappa out of [1, n-1]");
    const int r = n + 1 - kappa;
    const ComplexMatrix dmat = build_g_and_d(moments, d, 0.0, n).d;
    const ComplexMatrix adj = higher_adjugate(dmat, r);
    const auto seqs = index_sequences(r, n + 1);
    cplx acc = 0;
    for (std::size_t gi = 0; gi < seqs.size(); ++gi) {
        for (std::size_t bi = 0; bi < seqs.size(); ++bi) {
            if (seqs[bi].front() != 1) continue; // zero first row of D kills the rest
            acc += adj(static_cast<int>(gi), static_cast<int>(bi)) *
                   gamma_beta_gamma(moments, n, kappa, seqs[bi], seqs[gi], z);
        }
    }
    return acc;
}

FirstOrderEntry first_order_constant(const Signal& signal, const cvector& d, int j) {
    const int n = static_cast<int>(signal.nodes.size());
    if (j < 0 || j >= n) throw ArgumentError("first_order_constant: node index out of range");
    if (static_cast<int>(d.size()) < 2 * n)
        throw ArgumentError("first_order_constant: need 2n tolerance coefficients");

    const MomentVector m = moments_of(signal, 2 * n);
    const double delta = signal.config.delta;
    const int ell_t = static_cast<int>(
        signal.config.partition[static_cast<std::size_t>(signal.config.cluster_of(j + 1))].size());
    // eps sized for node j's own cluster: the tracked branch x~_j(eps) stays
    // linear until roots of j's cluster interact, so an isolated node can use
    // a much larger eps than the largest cluster would need, which keeps its
    // (small) limit above the rounding noise of the quotient.
    const double eps_scale = std::pow(delta, 2 * ell_t - 1);

    const cplx xj = signal.nodes[static_cast<std::size_t>(j)];
    // Anchor the branch at the eps = 0 floating-point root: the constant
    // rounding offset between x_j and the computed root would otherwise enter
    // the quotient as a 1/eps term.
    const cplx x0 = newton_polish(homogeneous_prony_coeffs(m.values, n), xj);
    std::array<cplx, 3> r{};
    for (int stage = 0; stage < 3; ++stage) {
        const double eps = 1e-6 * eps_scale / (1 << stage);
        cvector perturbed = m.values;
        for (int i = 0; i < 2 * n; ++i)
            perturbed[static_cast<std::size_t>(i)] += eps * d[static_cast<std::size_t>(i)];
        const cvector qbar = homogeneous_prony_coeffs(perturbed, n);
        const cplx x_tilde = newton_polish(qbar, xj);
        r[static_cast<std::size_t>(stage)] = (x0 - x_tilde) / eps;
    }
    const cplx r2 = 2.0 * r[1] - r[0];
    const cplx r3 = 2.0 * r[2] - r[1];
    const cplx c = (4.0 * r3 - r2) / 3.0;

    FirstOrderEntry entry;
    entry.node_index = j;
    entry.c = c;
    entry.predicted_bound = std::pow(delta, 2 - 2 * ell_t) /
                            std::abs(signal.amplitudes[static_cast<std::size_t>(j)]);
    const double floor = 1e-12 * (1.0 + entry.predicted_bound);
    entry.extrapolation_defect = std::abs(r3 - r2) / std::max(std::abs(c), floor);
    // Only gate estimates that are significant on the predicted scale; a limit
    // indistinguishable from zero is itself the answer.
    const bool significant = std::abs(c) > 1e-6 * std::max(1.0, entry.predicted_bound);
    if (significant && std::abs(r3 - r2) > 0.3 * std::abs(c))
        throw EstimatorError("first_order_constant: Richardson stages did not settle (node " +
                             std::to_string(j) + ")");
    return entry;
}

double first_order_linearity_defect(const Signal& signal, const cvector& d1,
                                    const cvector& d2, int j) {
    cvector sum(d1.size());
    if (d1.size() != d2.size())
        throw ArgumentError("first_order_linearity_defect: coefficient length mismatch");
    for (std::size_t i = 0; i < d1.size(); ++i) sum[i] = d1[i] + d2[i];
    const cplx c1 = first_order_constant(signal, d1, j).c;
    const cplx c2 = first_order_constant(signal, d2, j).c;
    const cplx c12 = first_order_constant(signal, sum, j).c;
    // Relative to the constituent magnitudes: c1 and c2 may nearly cancel,
    // which would turn the quotient into noise over a vanishing sum.
    const double denom = std::max({std::abs(c1), std::abs(c2), std::abs(c12), 1e-300});
    return std::abs(c12 - (c1 + c2)) / denom;
}

cplx cluster_discrepancy(const Signal& signal, const cvector& recovered, int j, int cluster_b) {
    const int n = static_cast<int>(signal.nodes.size());
    if (j < 0 || j >= n) throw ArgumentError("cluster_discrepancy: node index out of range");
    if (cluster_b < 0 || cluster_b >= static_cast<int>(signal.config.partition.size()))
        throw ArgumentError("cluster_discrepancy: cluster index out of range");
    if (static_cast<int>(recovered.size()) != n)
        throw ArgumentError("cluster_discrepancy: recovered node count mismatch");
    const auto& block = signal.config.partition[static_cast<std::size_t>(cluster_b)];
    for (int idx : block)
        if (idx == j + 1)
            throw ArgumentError("cluster_discrepancy: node j must lie outside cluster b");

    const cplx xt_j = recovered[static_cast<std::size_t>(j)];
    for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        if (std::abs(xt_j - recovered[static_cast<std::size_t>(m)]) <= 1e2 * kEps)
            throw SingularityError("cluster_discrepancy: coincident recovered nodes", m);
    }

    cplx total = 0;
    for (int idx : block) {
        const cplx x_nu = signal.nodes[static_cast<std::size_t>(idx - 1)];
        cplx prod = signal.amplitudes[static_cast<std::size_t>(idx - 1)];
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            prod *= (x_nu - recovered[static_cast<std::size_t>(m)]) /
                    (xt_j - recovered[static_cast<std::size_t>(m)]);
        }
        total += prod;
    }
    return total;
}

} // namespace prony
