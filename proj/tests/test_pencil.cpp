#include <doctest.h>

#include <cmath>
#include <complex>

#include "prony/errors.hpp"
#include "prony/model.hpp"
#include "prony/pencil.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"

using namespace prony;

TEST_CASE("rank-1 pencil recovers a single node") {
    Signal sig;
    sig.nodes = {std::polar(1.0, 0.7)};
    sig.amplitudes = {cplx{0.9, 0.3}};
    const MomentVector m = moments_of(sig, 8);
    const RecoveryResult r = matrix_pencil(m, 1, PencilParams::defaults(), false);
    CHECK(std::abs(r.nodes_used[0] - sig.nodes[0]) <= 1e-12);
    CHECK(std::abs(r.amplitudes[0] - sig.amplitudes[0]) <= 1e-11);
}

TEST_CASE("noiseless two-node pencil") {
    Signal sig;
    sig.nodes = {cplx{1, 0}, cplx{-1, 0}};
    sig.amplitudes = {cplx{1, 0}, cplx{1, 0}};
    const MomentVector m = moments_of(sig, 4);
    const RecoveryResult r = matrix_pencil(m, 2, PencilParams::defaults(), false);
    const std::vector<int> match = match_nodes(r.nodes_used, sig.nodes);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(r.nodes_used[j] - sig.nodes[static_cast<std::size_t>(match[j])]) <= 1e-10);
}

TEST_CASE("noiseless agreement with the classical method") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 401});
    const MomentVector m = moments_of(sig, 6);
    const RecoveryResult pen = matrix_pencil(m, 3, PencilParams::defaults(), false);
    const RecoveryResult cls = prony_classical(m, 3, false);
    const std::vector<int> match = match_nodes(pen.nodes_used, cls.nodes_used);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(std::abs(pen.nodes_used[j] - cls.nodes_used[static_cast<std::size_t>(match[j])]) <= 1e-9);
}

TEST_CASE("characteristic polynomial validates at the returned eigenvalues") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 4e-2, 409});
    const MomentVector m = perturb(moments_of(sig, 41), {1e-11, {}, 419});
    const RecoveryResult r = matrix_pencil(m, 3, PencilParams::defaults(), false);
    REQUIRE(r.prony_coeffs.size() == 3);
    MonicPolynomial charpoly{r.prony_coeffs};
    for (const cplx& x : r.nodes_raw) CHECK(std::abs(eval(charpoly, x)) < 1e-10);
}

TEST_CASE("rank error when the numerical rank drops below n") {
    Signal sig;
    sig.nodes = {std::polar(1.0, 0.3)};
    sig.amplitudes = {cplx{1, 0}};
    const MomentVector m = moments_of(sig, 8); // rank-1 data, n = 2 requested
    CHECK_THROWS_AS(matrix_pencil(m, 2, PencilParams::defaults(), false), RankError);
}

TEST_CASE("parameter validation") {
    const Signal sig = generate_clustered_signal({2, {1, 1}, 5e-2, 421});
    const MomentVector m = moments_of(sig, 4);
    PencilParams p;
    p.L = 1; // below n
    CHECK_THROWS_AS(matrix_pencil(m, 2, p, false), ArgumentError);
    CHECK_THROWS_AS(matrix_pencil(MomentVector(cvector(3, cplx{1, 0})), 2,
                                  PencilParams::defaults(), false),
                    ArgumentError);
}

TEST_CASE("amplitudes via first-n moments flag agree in the noiseless case") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 6e-2, 431});
    const MomentVector m = moments_of(sig, 21);
    PencilParams head;
    head.full_ls_amplitudes = false;
    const RecoveryResult a = matrix_pencil(m, 3, PencilParams::defaults(), false);
    const RecoveryResult b = matrix_pencil(m, 3, head, false);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(a.amplitudes[j] - b.amplitudes[j]) <= 1e-9);
}
