#include "prony/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prony/errors.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSingularFactor = 1e2; // pivot threshold multiplier
} // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw ArgumentError("matrix dimensions must be non-negative");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::conj_transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ArgumentError("matrix product dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ArgumentError("matrix sum dimension mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + rhs.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * factor;
    return out;
}

cvector ComplexMatrix::apply(const cvector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw ArgumentError("matrix-vector dimension mismatch");
    cvector y(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        cplx acc = 0;
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const cplx& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<int>& rows0,
                        const std::vector<int>& cols0) {
    ComplexMatrix out(static_cast<int>(rows0.size()), static_cast<int>(cols0.size()));
    for (std::size_t i = 0; i < rows0.size(); ++i)
        for (std::size_t j = 0; j < cols0.size(); ++j)
            out(static_cast<int>(i), static_cast<int>(j)) = a(rows0[i], cols0[j]);
    return out;
}

ComplexMatrix hankel_from(const cvector& values, int n) {
    if (n < 1) throw ArgumentError("hankel_from: n must be positive");
    if (static_cast<int>(values.size()) < 2 * n - 1)
        throw ArgumentError("hankel_from: need at least 2n-1 moments");
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = values[static_cast<std::size_t>(i + j)];
    return h;
}

ComplexMatrix hankel_from(const MomentVector& moments, int n) {
    return hankel_from(moments.values, n);
}

namespace {

// In-place partial-pivoted elimination. Returns the permutation sign; leaves
// U on and above the diagonal. When `strict` is set, a pivot below
// 1e2*eps*(scale of its original row) raises SingularityError.
int lu_factor(ComplexMatrix& a, std::vector<int>& perm, bool strict) {
    const int n = a.rows();
    std::vector<double> scale(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s = std::max(s, std::abs(a(i, j)));
        scale[static_cast<std::size_t>(i)] = s;
    }
    perm.resize(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
            std::swap(scale[static_cast<std::size_t>(k)], scale[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        const double rowscale = std::max(scale[static_cast<std::size_t>(k)], 1e-300);
        if (strict && best <= kSingularFactor * kEps * rowscale)
            throw SingularityError("solve_square: singular pivot at index " + std::to_string(k), k);
        if (best == 0.0) continue; // det path: leave the zero pivot in place
        const cplx pivot = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / pivot;
            a(i, k) = f;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return sign;
}

} // namespace

cvector solve_square(const ComplexMatrix& a, const cvector& b) {
    if (a.rows() != a.cols()) throw ArgumentError("solve_square: matrix must be square");
    if (static_cast<int>(b.size()) != a.rows())
        throw ArgumentError("solve_square: right-hand side dimension mismatch");
    const int n = a.rows();
    ComplexMatrix lu = a;
    std::vector<int> perm;
    lu_factor(lu, perm, /*strict=*/true);
    cvector x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int i = 1; i < n; ++i) {
        cplx acc = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) acc -= lu(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx acc = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) acc -= lu(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / lu(i, i);
    }
    return x;
}

cplx det(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw ArgumentError("det: matrix must be square");
    if (a.rows() == 0) return 1.0;
    ComplexMatrix lu = a;
    std::vector<int> perm;
    const int sign = lu_factor(lu, perm, /*strict=*/false);
    cplx d = sign;
    for (int k = 0; k < lu.rows(); ++k) d *= lu(k, k);
    return d;
}

double vandermonde_factorization_check(const Signal& signal) {
    const int n = static_cast<int>(signal.nodes.size());
    const MomentVector m = moments_of(signal, 2 * n - 1);
    const ComplexMatrix h = hankel_from(m, n);
    ComplexMatrix v(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            v(k, j) = std::pow(signal.nodes[static_cast<std::size_t>(j)], k);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx acc = 0;
            for (int k = 0; k < n; ++k)
                acc += v(i, k) * signal.amplitudes[static_cast<std::size_t>(k)] * v(j, k);
            worst = std::max(worst, std::abs(h(i, j) - acc));
        }
    }
    return worst;
}

namespace {

// Cholesky L L^H of a Hermitian positive definite matrix; SingularityError on
// a non-positive pivot relative to the largest diagonal entry.
ComplexMatrix cholesky(const ComplexMatrix& g) {
    const int n = g.rows();
    double max_diag = 0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(g(i, i)));
    ComplexMatrix l(n, n);
    for (int j = 0; j < n; ++j) {
        cplx acc = g(j, j);
        for (int k = 0; k < j; ++k) acc -= l(j, k) * std::conj(l(j, k));
        const double djj = acc.real();
        if (djj <= kSingularFactor * kEps * std::max(max_diag, 1e-300))
            throw SingularityError("min_norm_solution: rank-deficient normal equations", j);
        const double ljj = std::sqrt(djj);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            cplx s = g(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

cvector cholesky_solve(const ComplexMatrix& l, const cvector& b) {
    const int n = l.rows();
    cvector y(b);
    for (int i = 0; i < n; ++i) {
        cplx acc = y[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) acc -= l(i, k) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = acc / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx acc = y[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) acc -= std::conj(l(k, i)) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = acc / l(i, i);
    }
    return y;
}

} // namespace

cvector min_norm_solution(const ComplexMatrix& a, const cvector& b) {
    if (a.rows() > a.cols())
        throw ArgumentError("min_norm_solution: expected an underdetermined system (rows <= cols)");
    if (static_cast<int>(b.size()) != a.rows())
        throw ArgumentError("min_norm_solution: right-hand side dimension mismatch");
    const ComplexMatrix ah = a.conj_transpose();
    const ComplexMatrix g = a * ah;
    const ComplexMatrix l = cholesky(g);
    const cvector y = cholesky_solve(l, b);
    return ah.apply(y);
}

Svd jacobi_svd(const ComplexMatrix& a) {
    if (a.rows() < a.cols()) {
        Svd s = jacobi_svd(a.conj_transpose());
        return {std::move(s.v), std::move(s.sigma), std::move(s.u)};
    }
    const int m = a.rows();
    const int n = a.cols();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double tol = 1e-14;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0;
                cplx apq = 0;
                for (int i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double offd = std::abs(apq);
                if (offd <= tol * std::sqrt(app * aqq) || offd == 0.0) continue;
                rotated = true;
                const cplx phase = apq / offd;
                const double tau = (aqq - app) / (2.0 * offd);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                for (int i = 0; i < m; ++i) {
                    const cplx wp = w(i, p);
                    const cplx wq = w(i, q) * std::conj(phase);
                    w(i, p) = cs * wp - sn * wq;
                    w(i, q) = sn * wp + cs * wq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vp = v(i, p);
                    const cplx vq = v(i, q) * std::conj(phase);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int i = 0; i < m; ++i) s += std::norm(w(i, j));
        sigma[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
    });
    Svd out;
    out.u = ComplexMatrix(m, n);
    out.v = ComplexMatrix(n, n);
    out.sigma.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        const double s = sigma[static_cast<std::size_t>(src)];
        out.sigma[static_cast<std::size_t>(j)] = s;
        for (int i = 0; i < m; ++i) out.u(i, j) = s > 0 ? w(i, src) / s : (i == j ? 1.0 : 0.0);
        for (int i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

double condition_number(const ComplexMatrix& a) {
    const Svd s = jacobi_svd(a);
    const double smax = s.sigma.front();
    const double smin = s.sigma.back();
    if (smin <= 0.0 || smax <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

std::vector<std::vector<int>> index_sequences(int length, int from_n) {
    if (length < 0 || length > from_n) throw ArgumentError("index_sequences: length out of range");
    std::vector<std::vector<int>> out;
    if (length == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(length));
    std::iota(cur.begin(), cur.end(), 1);
    while (true) {
        out.push_back(cur);
        int i = length - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == from_n - (length - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < length; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

std::vector<int> to_zero_based(const std::vector<int>& seq) {
    std::vector<int> out(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out[i] = seq[i] - 1;
    return out;
}

std::vector<int> complement_zero_based(const std::vector<int>& seq, int n) {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int v : seq) in[static_cast<std::size_t>(v - 1)] = true;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

} // namespace

ComplexMatrix compound(const ComplexMatrix& a, int r) {
    if (a.rows() != a.cols()) throw ArgumentError("compound: matrix must be square");
    const int n = a.rows();
    if (r < 0 || r > n) throw ArgumentError("compound: order out of range");
    if (r == 0) {
        ComplexMatrix one(1, 1);
        one(0, 0) = 1.0;
        return one;
    }
    const auto seqs = index_sequences(r, n);
    const int d = static_cast<int>(seqs.size());
    ComplexMatrix out(d, d);
    for (int i = 0; i < d; ++i) {
        const auto rows = to_zero_based(seqs[static_cast<std::size_t>(i)]);
        for (int j = 0; j < d; ++j) {
            const auto cols = to_zero_based(seqs[static_cast<std::size_t>(j)]);
            out(i, j) = det(submatrix(a, rows, cols));
        }
    }
    return out;
}

ComplexMatrix higher_adjugate(const ComplexMatrix& a, int r) {
    if (a.rows() != a.cols()) throw ArgumentError("higher_adjugate: matrix must be square");
    const int n = a.rows();
    if (r < 0 || r > n) throw ArgumentError("higher_adjugate: order out of range");
    if (r == n) {
        ComplexMatrix one(1, 1);
        one(0, 0) = 1.0;
        return one;
    }
    if (r == 0) {
        ComplexMatrix d(1, 1);
        d(0, 0) = det(a);
        return d;
    }
    const auto seqs = index_sequences(r, n);
    const int d = static_cast<int>(seqs.size());
    ComplexMatrix out(d, d);
    for (int gi = 0; gi < d; ++gi) {
        const auto& gamma = seqs[static_cast<std::size_t>(gi)];
        const auto col_sel = complement_zero_based(gamma, n);
        int chi_gamma = 0;
        for (int v : gamma) chi_gamma += v;
        for (int bi = 0; bi < d; ++bi) {
            const auto& beta = seqs[static_cast<std::size_t>(bi)];
            const auto row_sel = complement_zero_based(beta, n);
            int chi = chi_gamma;
            for (int v : beta) chi += v;
            const cplx minor = det(submatrix(a, row_sel, col_sel));
            out(gi, bi) = (chi % 2 == 0) ? minor : -minor;
        }
    }
    return out;
}

} // namespace prony
