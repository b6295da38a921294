#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "prony/backward.hpp"
#include "prony/model.hpp"
#include "prony/recovery.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"

using namespace prony;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Pipeline {
    Signal sig;
    MomentVector m_tilde;
    RecoveryResult result;
};

Pipeline run_pipeline(double delta, double eps, std::uint64_t seed) {
    Pipeline p;
    p.sig = generate_clustered_signal({3, {2, 1}, delta, seed});
    p.m_tilde = perturb(moments_of(p.sig, 6), {eps, {}, Rng::mix(seed, 2)});
    p.result = prony_classical(p.m_tilde, 3, false);
    return p;
}

double moment_scale(const MomentVector& m) {
    double s = 0;
    for (const cplx& v : m.values) s = std::max(s, std::abs(v));
    return s;
}
} // namespace

TEST_CASE("berr1 vanishes for an exactly solved system") {
    const Pipeline p = run_pipeline(5e-2, 0.0, 101);
    const Berr1Result b = berr1(p.result.prony_coeffs, p.m_tilde);
    CHECK(b.value <= 1e2 * kEps * std::max(1.0, moment_scale(p.m_tilde)));
    CHECK(b.certificate_residual <= 1e3 * kEps * std::max(1.0, moment_scale(p.m_tilde)));
}

TEST_CASE("berr1 detects an injected coefficient perturbation") {
    const Pipeline p = run_pipeline(5e-2, 0.0, 103);
    cvector q = p.result.prony_coeffs;
    q[1] += 1e-8;
    const Berr1Result b = berr1(q, p.m_tilde);
    CHECK(b.value > 1e-12);
    CHECK(b.certificate_residual <= 1e-12 * std::max(1.0, moment_scale(p.m_tilde)));
}

TEST_CASE("berr1 on a floating-point run is at machine scale") {
    const Pipeline p = run_pipeline(2e-2, 1e-12, 107);
    const Berr1Result b = berr1(p.result.prony_coeffs, p.m_tilde);
    CHECK(b.value <= 1e3 * kEps);
    CHECK(std::isfinite(b.cn_pinv_norm));
}

TEST_CASE("berr2 on exactly factorable and shifted roots") {
    const cvector rts{cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}};
    const MonicPolynomial q = coeffs_from_roots(rts);
    CHECK(berr2(rts, q.coeffs) <= 1e-12);

    cvector shifted = rts;
    for (auto& r : shifted) r += cplx{1e-6, 0};
    const double v = berr2(shifted, q.coeffs);
    CHECK(v >= 1e-7);
    CHECK(v <= 1e-5);
}

TEST_CASE("berr2 on a pipeline run is at machine scale") {
    const Pipeline p = run_pipeline(3e-2, 1e-12, 109);
    CHECK(berr2(p.result.nodes_raw, p.result.prony_coeffs) <= 1e3 * kEps);
}

TEST_CASE("berr3 vanishes on an exact Vandermonde solve") {
    const Pipeline p = run_pipeline(5e-2, 0.0, 113);
    const cvector head(p.m_tilde.values.begin(), p.m_tilde.values.begin() + 3);
    const Berr3Result b = berr3(p.result.amplitudes, head, p.result.nodes_used);
    CHECK(b.value <= 1e2 * kEps * std::max(1.0, moment_scale(p.m_tilde)));
}

TEST_CASE("berr3 sees an injected amplitude perturbation at the right scale") {
    const Pipeline p = run_pipeline(5e-2, 0.0, 127);
    cvector alpha = p.result.amplitudes;
    alpha[0] += 1e-9;
    const cvector head(p.m_tilde.values.begin(), p.m_tilde.values.begin() + 3);
    const Berr3Result b = berr3(alpha, head, p.result.nodes_used);
    CHECK(b.value >= 1e-10);
    CHECK(b.value <= 1e-7);
}

TEST_CASE("berr estimates scale linearly with the injected perturbation") {
    const Pipeline p = run_pipeline(6e-2, 0.0, 131);
    const cvector head(p.m_tilde.values.begin(), p.m_tilde.values.begin() + 3);
    for (double mag : {1e-9, 1e-8, 1e-7}) {
        cvector alpha = p.result.amplitudes;
        alpha[1] += mag;
        cvector alpha10 = p.result.amplitudes;
        alpha10[1] += 10 * mag;
        const double v1 = berr3(alpha, head, p.result.nodes_used).value;
        const double v10 = berr3(alpha10, head, p.result.nodes_used).value;
        CHECK(v10 / v1 >= 5.0);
        CHECK(v10 / v1 <= 15.0);
    }
}

TEST_CASE("full report over random clustered runs stays near machine epsilon") {
    Rng rng(137);
    for (int t = 0; t < 10; ++t) {
        const Pipeline p = run_pipeline(rng.log_uniform(1e-2, 1e-1), 1e-12, rng.next_u64());
        const BackwardErrorReport rep = backward_report(p.result, p.m_tilde);
        CHECK(rep.berr1 <= 1e3 * kEps);
        CHECK(rep.berr2 <= 1e3 * kEps);
        CHECK(rep.berr3 <= 1e3 * kEps);
        CHECK(rep.berr1_certificate_residual <= 1e3 * kEps * std::max(1.0, moment_scale(p.m_tilde)));
        CHECK(rep.machine_eps_ratio[0] == rep.berr1 / kEps);
    }
}
