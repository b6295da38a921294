#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "prony/decimation.hpp"
#include "prony/errors.hpp"
#include "prony/model.hpp"
#include "prony/rng.hpp"

using namespace prony;

TEST_CASE("default plan enumerates admissible lambdas") {
    const DecimationPlan plan = DecimationPlan::default_plan(31.0, 3);
    CHECK(plan.lambdas.size() == 6); // floor(31/5)
    CHECK(plan.lambdas.front() == 1);
    CHECK(plan.lambdas.back() == 6);

    DecimationPlan bad;
    bad.omega = 10;
    bad.lambdas = {4};
    CHECK_THROWS_AS(bad.validate(3), ArgumentError); // 4*5 > 10
}

TEST_CASE("lambda=1 plan reproduces the classical method bitwise") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 2e-2, 307});
    const MomentVector m = perturb(moments_of(sig, 12), {1e-10, {}, 311});
    DecimationPlan plan;
    plan.omega = 11;
    plan.lambdas = {1};
    const RecoveryResult dec = decimated_prony(m, 3, plan, false);
    const MomentVector head(cvector(m.values.begin(), m.values.begin() + 6));
    const RecoveryResult cls = prony_classical(head, 3, false);
    REQUIRE(dec.lambda == 1);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(dec.nodes_used[j] == cls.nodes_used[j]);
        CHECK(dec.amplitudes[j] == cls.amplitudes[j]);
    }
}

TEST_CASE("single-node aliasing is undone by candidate selection") {
    Signal sig;
    sig.nodes = {std::polar(1.0, 2 * std::numbers::pi * 0.1)};
    sig.amplitudes = {cplx{1.3, -0.4}};
    const MomentVector m = moments_of(sig, 11); // omega = 10
    DecimationPlan plan;
    plan.omega = 10;
    plan.lambdas = {1, 3};
    const RecoveryResult r = decimated_prony(m, 1, plan, false);
    CHECK(std::abs(r.nodes_used[0] - sig.nodes[0]) <= 1e-9);
    CHECK(std::abs(r.amplitudes[0] - sig.amplitudes[0]) <= 1e-9);
}

TEST_CASE("noiseless lifting contains the true nodes for each lambda") {
    // with two equispaced cluster centers the inter-cluster nodes are
    // antipodal, so even lambdas collide under x -> x^lambda; odd lambdas
    // keep the decimated nodes distinct
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 313});
    const MomentVector m = moments_of(sig, 37);
    for (int lambda : {3, 5, 7}) {
        DecimationPlan plan;
        plan.omega = 36;
        plan.lambdas = {lambda};
        const RecoveryResult r = decimated_prony(m, 3, plan, false);
        const std::vector<int> match = match_nodes(r.nodes_used, sig.nodes);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(r.nodes_used[j] - sig.nodes[static_cast<std::size_t>(match[j])]) <= 1e-9);
    }
}

TEST_CASE("full plan picks a decimation that beats the coarse solve under noise") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 2e-3, 331});
    const double omega = 60;
    const MomentVector m = perturb(moments_of(sig, 61), {1e-12, {}, 337});
    const RecoveryResult r =
        decimated_prony(m, 3, DecimationPlan::default_plan(omega, 3), false);
    CHECK(r.lambda > 1);
    RecoveryResult scored = r;
    score_against(scored, sig);
    const MomentVector head(cvector(m.values.begin(), m.values.begin() + 6));
    RecoveryResult coarse = prony_classical(head, 3, false);
    score_against(coarse, sig);
    double worst_dec = 0, worst_coarse = 0;
    for (int j = 0; j < 3; ++j) {
        worst_dec = std::max(worst_dec, scored.node_errors[static_cast<std::size_t>(j)]);
        worst_coarse = std::max(worst_coarse, coarse.node_errors[static_cast<std::size_t>(j)]);
    }
    CHECK(worst_dec < worst_coarse);
}

TEST_CASE("aggregate failure carries per-lambda causes") {
    // constant moments: the Hankel system is singular for every lambda
    MomentVector flat(cvector(12, cplx{1, 0}));
    DecimationPlan plan;
    plan.omega = 11;
    plan.lambdas = {1, 2};
    try {
        decimated_prony(flat, 3, plan, false);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        const std::string what = e.what();
        CHECK(what.find("lambda=1") != std::string::npos);
        CHECK(what.find("lambda=2") != std::string::npos);
    }
}
