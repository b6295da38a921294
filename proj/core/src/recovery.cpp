#include "prony/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prony/errors.hpp"
#include "prony/linalg.hpp"
#include "prony/rootfind.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_moment_residual(const cvector& nodes, const cvector& amps,
                           const cvector& m_tilde, int window) {
    double worst = 0;
    cvector power(nodes.size(), cplx{1, 0});
    for (int k = 0; k < window; ++k) {
        cplx acc = 0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            acc += amps[j] * power[j];
            power[j] *= nodes[j];
        }
        worst = std::max(worst, std::abs(acc - m_tilde[static_cast<std::size_t>(k)]));
    }
    return worst;
}
} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::classical: return "classical";
        case Method::homogeneous: return "homogeneous";
        case Method::decimated: return "decimated";
        case Method::pencil: return "pencil";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "classical") return Method::classical;
    if (name == "homogeneous") return Method::homogeneous;
    if (name == "decimated") return Method::decimated;
    if (name == "pencil") return Method::pencil;
    throw ArgumentError("unknown method: " + name);
}

cvector project_to_circle(const cvector& nodes) {
    cvector out(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double mod = std::abs(nodes[j]);
        if (mod == 0.0) throw ArgumentError("project_to_circle: zero node");
        out[j] = nodes[j] / mod;
    }
    return out;
}

cvector solve_amplitudes(const cvector& nodes, const cvector& m_head) {
    const int n = static_cast<int>(nodes.size());
    if (static_cast<int>(m_head.size()) < n)
        throw ArgumentError("solve_amplitudes: need the first n moments");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)]) <=
                1e2 * kEps)
                throw SingularityError("solve_amplitudes: coincident nodes", j);

    // alpha_j = sum_k l_{j,k} m_k with l the coefficients of the j-th Lagrange
    // basis polynomial; the rows of the inverse transposed Vandermonde.
    cvector alpha(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        cvector others;
        others.reserve(static_cast<std::size_t>(n - 1));
        for (int k = 0; k < n; ++k)
            if (k != j) others.push_back(nodes[static_cast<std::size_t>(k)]);
        const MonicPolynomial numerator = coeffs_from_roots(others);
        cplx denom = 1.0;
        for (const cplx& o : others) denom *= nodes[static_cast<std::size_t>(j)] - o;
        cplx acc = 0;
        for (int k = 0; k < n - 1; ++k)
            acc += numerator.coeffs[static_cast<std::size_t>(k)] * m_head[static_cast<std::size_t>(k)];
        acc += m_head[static_cast<std::size_t>(n - 1)]; // leading coefficient is 1
        alpha[static_cast<std::size_t>(j)] = acc / denom;
    }
    return alpha;
}

namespace {

RecoveryResult finish_recovery(cvector raw_nodes, cvector q_coeffs, const MomentVector& m,
                               int n, bool project, Method method) {
    RecoveryResult r;
    r.method = method;
    r.projected = project;
    r.nodes_raw = std::move(raw_nodes);
    r.nodes_used = project ? project_to_circle(r.nodes_raw) : r.nodes_raw;
    r.prony_coeffs = std::move(q_coeffs);
    const cvector head(m.values.begin(), m.values.begin() + n);
    r.amplitudes = solve_amplitudes(r.nodes_used, head);
    r.residual_moments = max_moment_residual(r.nodes_used, r.amplitudes, m.values, 2 * n);
    return r;
}

} // namespace

RecoveryResult prony_classical(const MomentVector& m, int n, bool project) {
    if (n < 1) throw ArgumentError("prony_classical: n must be positive");
    if (m.size() < 2 * n) throw ArgumentError("prony_classical: need 2n moments");
    const ComplexMatrix h = hankel_from(m, n);
    cvector rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = -m[n + i];
    cvector q = solve_square(h, rhs);
    MonicPolynomial poly{q};
    cvector raw = roots(poly);
    return finish_recovery(std::move(raw), std::move(q), m, n, project, Method::classical);
}

cvector homogeneous_prony_coeffs(const cvector& moments, int n) {
    if (static_cast<int>(moments.size()) < 2 * n)
        throw ArgumentError("homogeneous_prony_coeffs: need 2n moments");
    // Bordered (n+1)x(n+1) determinant, expanded by cofactors along the
    // symbolic first row [1 z ... z^n]: the z^(i-1) coefficient is the (1,i)
    // cofactor of the moment block.
    ComplexMatrix block(n, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) block(i, j) = moments[static_cast<std::size_t>(i + j)];
    cvector coeffs(static_cast<std::size_t>(n + 1));
    std::vector<int> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    for (int i = 0; i <= n; ++i) {
        std::vector<int> cols;
        cols.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j <= n; ++j)
            if (j != i) cols.push_back(j);
        const cplx minor = det(submatrix(block, rows, cols));
        coeffs[static_cast<std::size_t>(i)] = (i % 2 == 0) ? minor : -minor;
    }
    return coeffs;
}

RecoveryResult prony_homogeneous(const MomentVector& m, int n, bool project) {
    if (n < 1) throw ArgumentError("prony_homogeneous: n must be positive");
    if (m.size() < 2 * n) throw ArgumentError("prony_homogeneous: need 2n moments");
    const cvector qbar = homogeneous_prony_coeffs(m.values, n);
    double scale = 0;
    for (const cplx& c : qbar) scale = std::max(scale, std::abs(c));
    const cplx lead = qbar[static_cast<std::size_t>(n)];
    if (std::abs(lead) <= 1e2 * kEps * std::max(scale, 1e-300))
        throw SingularityError("prony_homogeneous: vanishing leading coefficient", n);
    cvector q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = qbar[static_cast<std::size_t>(i)] / lead;
    MonicPolynomial poly{q};
    cvector raw = roots(poly);
    return finish_recovery(std::move(raw), std::move(q), m, n, project, Method::homogeneous);
}

std::vector<int> match_nodes(const cvector& recovered, const cvector& truth) {
    const int n = static_cast<int>(recovered.size());
    if (static_cast<int>(truth.size()) != n)
        throw ArgumentError("match_nodes: length mismatch");
    if (n > 8) throw ArgumentError("match_nodes: exhaustive matching capped at n = 8");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_max = std::numeric_limits<double>::infinity();
    double best_sum = std::numeric_limits<double>::infinity();
    do {
        double mx = 0, sum = 0;
        for (int j = 0; j < n; ++j) {
            const double d = std::abs(recovered[static_cast<std::size_t>(j)] -
                                      truth[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])]);
            mx = std::max(mx, d);
            sum += d;
        }
        if (mx < best_max || (mx == best_max && sum < best_sum)) {
            best_max = mx;
            best_sum = sum;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

void score_against(RecoveryResult& result, const Signal& truth) {
    result.matching = match_nodes(result.nodes_used, truth.nodes);
    const int n = static_cast<int>(result.nodes_used.size());
    result.node_errors.resize(static_cast<std::size_t>(n));
    result.amp_errors.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int t = result.matching[static_cast<std::size_t>(j)];
        result.node_errors[static_cast<std::size_t>(j)] =
            std::abs(truth.nodes[static_cast<std::size_t>(t)] - result.nodes_used[static_cast<std::size_t>(j)]);
        result.amp_errors[static_cast<std::size_t>(j)] =
            std::abs(truth.amplitudes[static_cast<std::size_t>(t)] - result.amplitudes[static_cast<std::size_t>(j)]);
    }
}

cvector nodes_in_truth_order(const RecoveryResult& result) {
    if (result.matching.empty())
        throw ArgumentError("nodes_in_truth_order: result has not been scored");
    cvector out(result.nodes_used.size());
    for (std::size_t j = 0; j < result.nodes_used.size(); ++j)
        out[static_cast<std::size_t>(result.matching[j])] = result.nodes_used[j];
    return out;
}

} // namespace prony
