#pragma once

#include <complex>
#include <vector>

#include "prony/model.hpp"

namespace prony {

// Dense row-major complex matrix. Everything here targets the small sizes of
// this problem family (Hankel/Vandermonde blocks up to a couple hundred rows).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const cvector& entries() const { return entries_; }

    ComplexMatrix conj_transpose() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix scaled(cplx factor) const;
    cvector apply(const cvector& x) const; // A*x

    double max_abs() const;

private:
    int rows_ = 0, cols_ = 0;
    cvector entries_;
};

ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<int>& rows0,
                        const std::vector<int>& cols0);

// entry(i,j) = m_{i+j}; needs at least 2n-1 moments.
ComplexMatrix hankel_from(const MomentVector& moments, int n);
ComplexMatrix hankel_from(const cvector& values, int n);

// Partial-pivoted elimination. Pivot below 1e2*eps*(row scale): SingularityError
// carrying the pivot index.
cvector solve_square(const ComplexMatrix& a, const cvector& b);

// Determinant via pivoted elimination; 0 for singular input.
cplx det(const ComplexMatrix& a);

// ||H_n - V diag(alpha) V^T||_max for the signal's exact moments.
double vandermonde_factorization_check(const Signal& signal);

// Minimum-2-norm solution of the underdetermined system A x = b (full row
// rank), via normal equations on A A^H.
cvector min_norm_solution(const ComplexMatrix& a, const cvector& b);

// Thin SVD A = U diag(sigma) V^H with sigma descending, via one-sided Jacobi.
struct Svd {
    ComplexMatrix u;
    std::vector<double> sigma;
    ComplexMatrix v;
};
Svd jacobi_svd(const ComplexMatrix& a);

// sigma_1/sigma_min; +inf when numerically singular.
double condition_number(const ComplexMatrix& a);

// All strictly increasing 1-based index sequences of the given length drawn
// from {1..from_n}, in lexicographic order.
std::vector<std::vector<int>> index_sequences(int length, int from_n);

// r-th multiplicative compound: entry(beta,gamma) = det A[beta|gamma] over
// lexicographic Q_r^N. C_0(A) = [1], C_N(A) = [det A].
ComplexMatrix compound(const ComplexMatrix& a, int r);

// r-th adjugate: entry(gamma,beta) = (-1)^{chi(gamma,beta)} det A[beta^c|gamma^c]
// with chi = sum of the indices in gamma and beta. adj_N(A) = [1],
// adj_0(A) = [det A]; adj_1 is the classical adjugate.
ComplexMatrix higher_adjugate(const ComplexMatrix& a, int r);

} // namespace prony
