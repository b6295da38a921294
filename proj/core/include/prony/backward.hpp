#pragma once

#include <array>

#include "prony/recovery.hpp"

namespace prony {

// Hankel-step estimate: residual r = m~[n:2n-1] + H_n(m~[0:2n-2]) q°, mapped
// through the banded coefficient matrix C_n(q°) by a minimum-norm solve. The
// certificate m^ = m~ + delta witnesses the Hankel constraint exactly up to
// the reported residual.
struct Berr1Result {
    double value = 0;                  // ||delta||_inf
    cvector m_hat;                     // certified moment vector
    double certificate_residual = 0;   // ||H_n(m^[0:2n-2]) q° + m^[n:2n-1]||_inf
    double cn_pinv_norm = 0;           // ||C_n(q°)^+||_2 = 1/sigma_min(C_n)
};
Berr1Result berr1(const cvector& q_coeffs, const MomentVector& m_tilde);

// Rootfinding step: ||q° - coeffs_from_roots(roots°)||_inf.
double berr2(const cvector& roots_computed, const cvector& q_coeffs);

// Vandermonde step, three-stage linearized estimate: minimum-norm solve of
// [W diag(alpha°) | -I] (d1,d2) = r with W the derivative Vandermonde
// [k x^{k-1}], then the actual right-hand perturbation d2' induced by d1.
struct Berr3Result {
    double value = 0; // max of the three inf-norms
    cvector delta1, delta2, delta2_prime;
};
Berr3Result berr3(const cvector& amplitudes, const cvector& m_head, const cvector& nodes);

struct BackwardErrorReport {
    double berr1 = 0, berr2 = 0, berr3 = 0;
    cvector berr1_m_hat;
    double berr1_certificate_residual = 0;
    double cn_pinv_norm = 0;
    std::array<double, 3> machine_eps_ratio{0, 0, 0};
    cvector berr3_delta1, berr3_delta2, berr3_delta2_prime;
};

// Full report for one classical/homogeneous run; uses the result's stored
// monic coefficients, raw roots and the nodes actually fed to the amplitude
// solve.
BackwardErrorReport backward_report(const RecoveryResult& result, const MomentVector& m_tilde);

} // namespace prony
