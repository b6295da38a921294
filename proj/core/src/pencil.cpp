#include "prony/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prony/errors.hpp"
#include "prony/linalg.hpp"
#include "prony/rootfind.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Monic characteristic polynomial of a small matrix (Faddeev-LeVerrier).
cvector characteristic_coeffs(const ComplexMatrix& a) {
    const int n = a.rows();
    cvector c(static_cast<std::size_t>(n)); // c[k] multiplies z^k
    ComplexMatrix b = a;
    cplx ck = 0;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            ComplexMatrix shifted = b;
            for (int i = 0; i < n; ++i) shifted(i, i) += ck;
            b = a * shifted;
        }
        cplx tr = 0;
        for (int i = 0; i < n; ++i) tr += b(i, i);
        ck = -tr / static_cast<double>(k);
        c[static_cast<std::size_t>(n - k)] = ck;
    }
    return c;
}

// SVD-based least squares over all samples; normal equations would square the
// Vandermonde conditioning and poison the well-conditioned coordinates.
cvector least_squares_amplitudes(const cvector& nodes, const cvector& samples) {
    const int n = static_cast<int>(nodes.size());
    const int rows = static_cast<int>(samples.size());
    ComplexMatrix v(rows, n);
    for (int j = 0; j < n; ++j) {
        cplx p = 1.0;
        for (int k = 0; k < rows; ++k) {
            v(k, j) = p;
            p *= nodes[static_cast<std::size_t>(j)];
        }
    }
    const Svd svd = jacobi_svd(v);
    if (svd.sigma.back() <= 1e3 * kEps * svd.sigma.front())
        throw SingularityError("matrix_pencil: amplitude system is rank-deficient", n - 1);
    const cvector proj = svd.u.conj_transpose().apply(samples);
    cvector scaled(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        scaled[static_cast<std::size_t>(j)] = proj[static_cast<std::size_t>(j)] / svd.sigma[static_cast<std::size_t>(j)];
    return svd.v.apply(scaled);
}

} // namespace

RecoveryResult matrix_pencil(const MomentVector& m, int n, PencilParams params, bool project) {
    if (n < 1) throw ArgumentError("matrix_pencil: n must be positive");
    const int K = m.size() - 1;
    if (K < 2 * n - 1) throw ArgumentError("matrix_pencil: need at least 2n samples");
    if (params.rank < 0) params.rank = n;
    if (params.rank != n) throw ArgumentError("matrix_pencil: rank must equal the model order");
    int L = params.L;
    if (L < 0) L = std::clamp(K / 2, n, K - n + 1);
    if (L < n || L > K - n + 1) throw ArgumentError("matrix_pencil: L out of [n, K-n+1]");

    const int cols = K - L + 1;
    ComplexMatrix h0(L, cols), h1(L, cols);
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j < cols; ++j) {
            h0(i, j) = m[i + j];
            h1(i, j) = m[i + j + 1];
        }
    }

    const Svd svd = jacobi_svd(h0);
    if (svd.sigma[0] <= 0.0 ||
        svd.sigma[static_cast<std::size_t>(n - 1)] / svd.sigma[0] < 1e3 * kEps)
        throw RankError("matrix_pencil: numerical rank below the model order");

    // A = inv(S_n) U_n^H H1 W_n
    ComplexMatrix un(L, n), wn(cols, n);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < n; ++j) un(i, j) = svd.u(i, j);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < n; ++j) wn(i, j) = svd.v(i, j);
    ComplexMatrix a = un.conj_transpose() * h1 * wn;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) /= svd.sigma[static_cast<std::size_t>(i)];

    MonicPolynomial charpoly{characteristic_coeffs(a)};
    cvector raw = roots(charpoly);

    RecoveryResult r;
    r.method = Method::pencil;
    r.projected = project;
    r.prony_coeffs = charpoly.coeffs;
    r.nodes_raw = std::move(raw);
    r.nodes_used = project ? project_to_circle(r.nodes_raw) : r.nodes_raw;
    if (params.full_ls_amplitudes) {
        r.amplitudes = least_squares_amplitudes(r.nodes_used, m.values);
    } else {
        const cvector head(m.values.begin(), m.values.begin() + n);
        r.amplitudes = solve_amplitudes(r.nodes_used, head);
    }

    double worst = 0;
    cvector power(r.nodes_used.size(), cplx{1, 0});
    for (int k = 0; k <= K; ++k) {
        cplx fit = 0;
        for (std::size_t j = 0; j < r.nodes_used.size(); ++j) {
            fit += r.amplitudes[j] * power[j];
            power[j] *= r.nodes_used[j];
        }
        worst = std::max(worst, std::abs(fit - m[k]));
    }
    r.residual_moments = worst;
    return r;
}

} // namespace prony
