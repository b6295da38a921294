#pragma once

#include "prony/model.hpp"

namespace prony {

// p(z) = z^n + sum_{j<n} coeffs[j] z^j.
struct MonicPolynomial {
    cvector coeffs;
    int degree() const { return static_cast<int>(coeffs.size()); }
};

// Aberth-Ehrlich iteration, initialized on a circle of radius 1+||coeffs||inf.
// Converged when max_i |p(z_i)|/|p'(z_i)| < 1e2*eps*scale; at most 500
// iterations, then ConvergenceError with the best iterate. Roots are returned
// sorted by (re, im).
cvector roots(const MonicPolynomial& p);

// Elementary-symmetric expansion; roots are sorted lexicographically by
// (re, im) first, so the result is permutation-invariant in the input.
MonicPolynomial coeffs_from_roots(cvector rts);

cplx eval(const MonicPolynomial& p, cplx z);
cplx eval_derivative(const MonicPolynomial& p, cplx z);

// Horner evaluation of a general coefficient vector c_0 + c_1 z + ...
cplx polyval(const cvector& coeffs, cplx z);
cplx polyval_derivative(const cvector& coeffs, cplx z);

// Newton refinement of a root of the (not necessarily monic) polynomial given
// by coeffs, starting from z0; used to track a root branch from a known point.
cplx newton_polish(const cvector& coeffs, cplx z0, int max_iter = 100);

} // namespace prony
