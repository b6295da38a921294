#pragma once

#include "prony/linalg.hpp"
#include "prony/model.hpp"

namespace prony {

// G(z) is the (n+1)x(n+1) moment matrix bordered by [1 z ... z^n]; D carries
// the tolerance coefficients below a zero first row. det(G(z)+eps*D) is the
// perturbed bordered Prony polynomial at z.
struct GD {
    ComplexMatrix g, d;
};
GD build_g_and_d(const cvector& moments, const cvector& d, cplx z, int n);

// Verifies, per evaluation point z, that the eps-expansion of det(G(z)+eps*D)
// matches the compound/adjugate trace coefficients
// theta_{n+1-k}(z) = tr(adj_{n+1-k}(D) C_{n+1-k}(G(z))), k = 0..n+1.
// The direct coefficients are extracted by Newton divided-difference
// interpolation over the eps samples.
struct ExpansionReport {
    int n = 0;
    std::vector<cplx> z_samples;
    std::vector<std::vector<cplx>> theta;  // [kappa][z index]
    std::vector<std::vector<cplx>> direct; // same indexing
    double max_rel_err = 0;
    double det_d_rel_err = 0; // kappa = n+1 coefficient against det(D)
};
ExpansionReport verify_expansion(const cvector& moments, const cvector& d, int n,
                                 const std::vector<cplx>& z_samples,
                                 const cvector& eps_samples);
ExpansionReport verify_expansion(const cvector& moments, const cvector& d, int n,
                                 const std::vector<cplx>& z_samples,
                                 const std::vector<double>& eps_samples);

// Default extraction abscissae: roots of unity scaled by `radius`, which keep
// the interpolation problem perfectly conditioned.
cvector unit_circle_eps_samples(int count, double radius = 1.0);

// Chebyshev-spaced real abscissae on [lo, hi].
std::vector<double> chebyshev_eps_samples(int count, double lo = 1e-4, double hi = 1e-1);

// The explicit (n-kappa+1)-size moment-bordered determinant attached to the
// index pair (beta, gamma); equals the (beta,gamma) entry of
// C_{n+1-kappa}(G(z)). beta and gamma are 1-based increasing sequences of
// length n+1-kappa with 1 in beta.
cplx gamma_beta_gamma(const cvector& moments, int n, int kappa,
                      const std::vector<int>& beta, const std::vector<int>& gamma, cplx z);

// theta_{n+1-kappa}(z) reassembled from adjugate entries and gamma_beta_gamma
// terms (kappa in [1, n-1]); used to cross-check the trace route.
cplx theta_from_gamma_sum(const cvector& moments, const cvector& d, int n, int kappa, cplx z);

// Numerical first-order node-error constant c_j = lim_{eps->0+} (x_j - x~_j)/eps
// for a fixed tolerance vector d, by Richardson extrapolation over three eps
// values with Newton tracking of the root branch from the true node.
struct FirstOrderEntry {
    int node_index = 0;        // 0-based
    cplx c{};                  // estimated limit
    double predicted_bound = 0; // |alpha_j|^{-1} delta^{2-2*ell_t}
    double extrapolation_defect = 0; // relative spread of the Richardson stages
};
FirstOrderEntry first_order_constant(const Signal& signal, const cvector& d, int j);

// Relative additivity defect |c(d1+d2) - c(d1) - c(d2)| / scale.
double first_order_linearity_defect(const Signal& signal, const cvector& d1,
                                    const cvector& d2, int j);

// V_b = sum_{nu in C_b} alpha_nu prod_{m != j} (x_nu - x~_m)/(x~_j - x~_m),
// the leakage of cluster b into the amplitude of node j (j outside b).
// recovered holds the recovered nodes in truth order.
cplx cluster_discrepancy(const Signal& signal, const cvector& recovered, int j, int cluster_b);

} // namespace prony
