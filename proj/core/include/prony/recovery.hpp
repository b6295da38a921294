#pragma once

#include <string>
#include <vector>

#include "prony/model.hpp"

namespace prony {

enum class Method { classical, homogeneous, decimated, pencil };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct RecoveryResult {
    cvector nodes_raw;        // rootfinding output, sorted by (re, im)
    cvector nodes_used;       // nodes_raw, projected to the circle if enabled
    cvector amplitudes;       // attached to nodes_used
    cvector prony_coeffs;     // monic coefficients behind nodes_raw (empty for pencil)
    std::vector<int> matching;          // recovered j -> true index; empty until scored
    std::vector<double> node_errors;    // |x_{sigma(j)} - nodes_used[j]|
    std::vector<double> amp_errors;
    double residual_moments = 0;        // max |reconstructed m_k - m~_k| over the fitted window
    Method method = Method::classical;
    bool projected = false;
    int lambda = 1;                     // decimation parameter actually used
};

// Algorithm: solve the n x n Hankel system for the monic Prony polynomial,
// root it, optionally project the roots to the circle, then solve the
// Vandermonde system on the first n moments.
RecoveryResult prony_classical(const MomentVector& m, int n, bool project = false);

// Same pipeline, with the Prony polynomial taken as the determinant of the
// (n+1)x(n+1) moment matrix bordered by [1 z ... z^n], expanded by cofactors
// along the first row and normalized to monic.
RecoveryResult prony_homogeneous(const MomentVector& m, int n, bool project = false);

// Coefficients (length n+1, ascending) of the bordered-determinant Prony
// polynomial; the leading coefficient equals (-1)^n det of the moment Hankel.
cvector homogeneous_prony_coeffs(const cvector& moments, int n);

// Vandermonde solve via Lagrange-basis inverse rows; requires pairwise
// distinct nodes (separation above 1e2*eps).
cvector solve_amplitudes(const cvector& nodes, const cvector& m_head);

cvector project_to_circle(const cvector& nodes);

// Permutation sigma minimizing max_j |recovered_j - truth_{sigma(j)}| by
// exhaustive search (n <= 8), ties broken by the sum of distances.
std::vector<int> match_nodes(const cvector& recovered, const cvector& truth);

// Fill matching/node_errors/amp_errors of a result against the ground truth.
void score_against(RecoveryResult& result, const Signal& truth);

// Recovered nodes rearranged into truth order (index m holds the recovered
// node matched to true node m); requires a scored result.
cvector nodes_in_truth_order(const RecoveryResult& result);

} // namespace prony
