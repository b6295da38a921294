#pragma once

#include "prony/recovery.hpp"

namespace prony {

struct DecimationPlan {
    double omega = 0;          // bandwidth; samples m_0..m_floor(omega) available
    std::vector<int> lambdas;  // each lambda >= 1 with lambda*(2n-1) <= omega

    // All integers in [1, floor(omega/(2n-1))].
    static DecimationPlan default_plan(double omega, int n);
    void validate(int n) const;
};

// For each lambda: run the classical method on {m_{lambda k}}, lift each root
// of the decimated problem to its lambda-th root candidates, pick candidates
// greedily against the lambda=1 coarse solve, refine once jointly by the
// full-bandwidth residual, and keep the lambda with the smallest residual.
RecoveryResult decimated_prony(const MomentVector& m_full, int n,
                               const DecimationPlan& plan, bool project = false);

} // namespace prony
