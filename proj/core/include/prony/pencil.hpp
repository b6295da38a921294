#pragma once

#include "prony/recovery.hpp"

namespace prony {

struct PencilParams {
    int L = -1;    // rows of the shifted Hankel blocks; default floor(K/2) clamped to [n, K-n+1]
    int rank = -1; // model order; set to n when negative
    bool full_ls_amplitudes = true; // least squares over all samples vs first n moments

    static PencilParams defaults() { return {}; }
};

// Matrix Pencil baseline: H0, H1 are the L x (K-L+1) Hankel blocks of
// m_0..m_{K-1} and m_1..m_K; nodes are the eigenvalues of the rank-n
// reduction inv(S_n) U_n^H H1 W_n (truncated SVD of H0), computed as roots of
// its characteristic polynomial. RankError when sigma_n/sigma_1 < 1e3*eps.
RecoveryResult matrix_pencil(const MomentVector& m, int n, PencilParams params,
                             bool project = false);

} // namespace prony
