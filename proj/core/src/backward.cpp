#include "prony/backward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prony/errors.hpp"
#include "prony/linalg.hpp"
#include "prony/rootfind.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double inf_norm(const cvector& v) {
    double m = 0;
    for (const cplx& e : v) m = std::max(m, std::abs(e));
    return m;
}

ComplexMatrix vandermonde(const cvector& nodes, int rows) {
    ComplexMatrix v(rows, static_cast<int>(nodes.size()));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        cplx p = 1.0;
        for (int k = 0; k < rows; ++k) {
            v(k, static_cast<int>(j)) = p;
            p *= nodes[j];
        }
    }
    return v;
}
} // namespace

Berr1Result berr1(const cvector& q_coeffs, const MomentVector& m_tilde) {
    const int n = static_cast<int>(q_coeffs.size());
    if (m_tilde.size() < 2 * n) throw ArgumentError("berr1: need 2n moments");

    const ComplexMatrix h = hankel_from(m_tilde, n);
    const cvector hq = h.apply(q_coeffs);
    cvector r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = m_tilde[n + i] + hq[static_cast<std::size_t>(i)];

    // Banded coefficient matrix: row i carries (q_0..q_{n-1}, 1) starting at
    // column i. Writing m^ = m~ + d, the Hankel constraint
    // H_n(m^[0:2n-2]) q = -m^[n:2n-1] becomes C_n d = -r.
    ComplexMatrix cn(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) cn(i, i + j) = q_coeffs[static_cast<std::size_t>(j)];
        cn(i, i + n) = 1.0;
    }
    cvector neg_r(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg_r[i] = -r[i];

    Berr1Result out;
    cvector delta;
    try {
        delta = min_norm_solution(cn, neg_r);
    } catch (const SingularityError& e) {
        throw EstimatorError(std::string("berr1: rank-deficient coefficient matrix: ") + e.what());
    }
    out.value = inf_norm(delta);
    out.m_hat.resize(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i)
        out.m_hat[static_cast<std::size_t>(i)] = m_tilde[i] + delta[static_cast<std::size_t>(i)];

    const ComplexMatrix h_hat = hankel_from(out.m_hat, n);
    const cvector hq_hat = h_hat.apply(q_coeffs);
    double cert = 0;
    for (int i = 0; i < n; ++i)
        cert = std::max(cert, std::abs(hq_hat[static_cast<std::size_t>(i)] +
                                       out.m_hat[static_cast<std::size_t>(n + i)]));
    out.certificate_residual = cert;

    const Svd svd = jacobi_svd(cn);
    const double smin = svd.sigma.back();
    out.cn_pinv_norm = smin > 0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
    return out;
}

double berr2(const cvector& roots_computed, const cvector& q_coeffs) {
    const MonicPolynomial recomposed = coeffs_from_roots(roots_computed);
    if (recomposed.coeffs.size() != q_coeffs.size())
        throw ArgumentError("berr2: root count does not match the polynomial degree");
    double worst = 0;
    for (std::size_t i = 0; i < q_coeffs.size(); ++i)
        worst = std::max(worst, std::abs(q_coeffs[i] - recomposed.coeffs[i]));
    return worst;
}

Berr3Result berr3(const cvector& amplitudes, const cvector& m_head, const cvector& nodes) {
    const int n = static_cast<int>(nodes.size());
    if (static_cast<int>(amplitudes.size()) != n || static_cast<int>(m_head.size()) < n)
        throw ArgumentError("berr3: dimension mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (nodes[static_cast<std::size_t>(i)] == nodes[static_cast<std::size_t>(j)])
                throw ArgumentError("berr3: nodes must be distinct");

    const ComplexMatrix v = vandermonde(nodes, n);
    const cvector fit = v.apply(amplitudes);
    cvector r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = m_head[static_cast<std::size_t>(i)] - fit[static_cast<std::size_t>(i)];

    // U = [W diag(alpha) | -I], W the derivative Vandermonde [k x^{k-1}].
    ComplexMatrix u(n, 2 * n);
    for (int j = 0; j < n; ++j) {
        cplx p = 1.0; // x^{k-1} running power
        for (int k = 0; k < n; ++k) {
            if (k == 0) {
                u(k, j) = 0.0;
            } else {
                u(k, j) = static_cast<double>(k) * p * amplitudes[static_cast<std::size_t>(j)];
                p *= nodes[static_cast<std::size_t>(j)];
            }
        }
    }
    for (int i = 0; i < n; ++i) u(i, n + i) = -1.0;

    Berr3Result out;
    cvector d;
    try {
        d = min_norm_solution(u, r);
    } catch (const SingularityError& e) {
        throw EstimatorError(std::string("berr3: rank-deficient linearized system: ") + e.what());
    }
    out.delta1.assign(d.begin(), d.begin() + n);
    out.delta2.assign(d.begin() + n, d.end());

    cvector shifted(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        shifted[static_cast<std::size_t>(j)] = nodes[static_cast<std::size_t>(j)] + out.delta1[static_cast<std::size_t>(j)];
    const cvector fit2 = vandermonde(shifted, n).apply(amplitudes);
    out.delta2_prime.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.delta2_prime[static_cast<std::size_t>(i)] =
            fit2[static_cast<std::size_t>(i)] - m_head[static_cast<std::size_t>(i)];

    out.value = std::max({inf_norm(out.delta1), inf_norm(out.delta2), inf_norm(out.delta2_prime)});
    return out;
}

BackwardErrorReport backward_report(const RecoveryResult& result, const MomentVector& m_tilde) {
    if (result.method != Method::classical && result.method != Method::homogeneous)
        throw ArgumentError("backward_report: defined for the Prony-polynomial methods only");
    if (result.prony_coeffs.empty())
        throw ArgumentError("backward_report: result carries no Prony polynomial");
    const int n = static_cast<int>(result.nodes_used.size());

    BackwardErrorReport rep;
    const Berr1Result b1 = berr1(result.prony_coeffs, m_tilde);
    rep.berr1 = b1.value;
    rep.berr1_m_hat = b1.m_hat;
    rep.berr1_certificate_residual = b1.certificate_residual;
    rep.cn_pinv_norm = b1.cn_pinv_norm;

    rep.berr2 = berr2(result.nodes_raw, result.prony_coeffs);

    const cvector head(m_tilde.values.begin(), m_tilde.values.begin() + n);
    const Berr3Result b3 = berr3(result.amplitudes, head, result.nodes_used);
    rep.berr3 = b3.value;
    rep.berr3_delta1 = b3.delta1;
    rep.berr3_delta2 = b3.delta2;
    rep.berr3_delta2_prime = b3.delta2_prime;

    rep.machine_eps_ratio = {rep.berr1 / kEps, rep.berr2 / kEps, rep.berr3 / kEps};
    return rep;
}

} // namespace prony
