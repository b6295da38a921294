#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "prony/errors.hpp"
#include "prony/recovery.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"

using namespace prony;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

MomentVector fixed_moments(std::initializer_list<cplx> vals) {
    return MomentVector(cvector(vals));
}
} // namespace

TEST_CASE("classical recovery of {1,-1} with unit amplitudes") {
    const MomentVector m = fixed_moments({{2, 0}, {0, 0}, {2, 0}, {0, 0}});
    RecoveryResult r = prony_classical(m, 2, false);
    Signal truth;
    truth.nodes = {cplx{1, 0}, cplx{-1, 0}};
    truth.amplitudes = {cplx{1, 0}, cplx{1, 0}};
    score_against(r, truth);
    for (double e : r.node_errors) CHECK(e <= 1e-12);
    for (double e : r.amp_errors) CHECK(e <= 1e-12);
    CHECK(r.residual_moments <= 1e-12);
}

TEST_CASE("classical n=1 single node is m1/m0") {
    const cplx x{0, 1};
    const cplx a{2, 0};
    const MomentVector m = fixed_moments({a, a * x});
    RecoveryResult r = prony_classical(m, 1, false);
    CHECK(std::abs(r.nodes_used[0] - x) <= 1e-14);
    CHECK(std::abs(r.amplitudes[0] - a) <= 1e-14);
}

TEST_CASE("homogeneous coefficients on the worked 3x3 case") {
    // moments [2,0,2,0]: bordered determinant gives 4z^2 - 4 (leading
    // coefficient (-1)^n det H_n = +4), roots {1,-1}
    const cvector m{{2, 0}, {0, 0}, {2, 0}, {0, 0}};
    const cvector qbar = homogeneous_prony_coeffs(m, 2);
    REQUIRE(qbar.size() == 3);
    CHECK(std::abs(qbar[0] - cplx{-4, 0}) < 1e-13);
    CHECK(std::abs(qbar[1]) < 1e-13);
    CHECK(std::abs(qbar[2] - cplx{4, 0}) < 1e-13);

    RecoveryResult r = prony_homogeneous(MomentVector(m), 2, false);
    CHECK(std::abs(r.nodes_used[0] - cplx{-1, 0}) < 1e-12);
    CHECK(std::abs(r.nodes_used[1] - cplx{1, 0}) < 1e-12);
}

TEST_CASE("homogeneous polynomial is (-1)^n det(H_n) times the monic one") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 17});
    const MomentVector m = moments_of(sig, 6);
    const cvector qbar = homogeneous_prony_coeffs(m.values, 3);
    const MonicPolynomial p = coeffs_from_roots(sig.nodes);
    const cplx lead = qbar[3];
    for (int i = 0; i < 3; ++i) {
        const cplx ratio = qbar[static_cast<std::size_t>(i)] / lead;
        CHECK(std::abs(ratio - p.coeffs[static_cast<std::size_t>(i)]) <=
              1e-12 * std::max(1.0, std::abs(p.coeffs[static_cast<std::size_t>(i)])));
    }
}

TEST_CASE("classical and homogeneous agree on nodes") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 2e-2, 23});
    const MomentVector m = moments_of(sig, 6);
    const MomentVector mt = perturb(m, {1e-12, {}, 31});
    const RecoveryResult a = prony_classical(mt, 3, false);
    const RecoveryResult b = prony_homogeneous(mt, 3, false);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(std::abs(a.nodes_used[j] - b.nodes_used[j]) <= 1e-10);
}

TEST_CASE("solve_amplitudes fixed systems") {
    const cvector a1 = solve_amplitudes({cplx{1, 0}, cplx{-1, 0}}, {cplx{2, 0}, cplx{0, 0}});
    CHECK(std::abs(a1[0] - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(a1[1] - cplx{1, 0}) < 1e-14);

    const cvector a2 = solve_amplitudes({cplx{1, 0}}, {cplx{3, 0}});
    CHECK(std::abs(a2[0] - cplx{3, 0}) < 1e-15);

    CHECK_THROWS_AS(solve_amplitudes({cplx{1, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{1, 0}}),
                    SingularityError);
}

TEST_CASE("solve_amplitudes round trip on random nodes") {
    Rng rng(47);
    cvector nodes;
    while (nodes.size() < 4) {
        const cplx cand = std::polar(1.0, rng.angle());
        bool ok = true;
        for (const cplx& x : nodes) ok = ok && std::abs(cand - x) > 0.3;
        if (ok) nodes.push_back(cand);
    }
    cvector alpha(4);
    for (auto& v : alpha) v = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    cvector m(4, cplx{0, 0});
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            m[static_cast<std::size_t>(k)] += alpha[static_cast<std::size_t>(j)] *
                                              std::pow(nodes[static_cast<std::size_t>(j)], k);
    const cvector rec = solve_amplitudes(nodes, m);
    for (int j = 0; j < 4; ++j)
        CHECK(std::abs(rec[static_cast<std::size_t>(j)] - alpha[static_cast<std::size_t>(j)]) <= 1e-10);
}

TEST_CASE("project_to_circle") {
    const cvector p = project_to_circle({cplx{2, 0}, cplx{0, 0.5}});
    CHECK(std::abs(p[0] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(p[1] - cplx{0, 1}) < 1e-15);
    const cvector q = project_to_circle(p);
    CHECK(std::abs(q[0] - p[0]) < 1e-15);
    CHECK_THROWS_AS(project_to_circle({cplx{0, 0}}), ArgumentError);
}

TEST_CASE("match_nodes small cases") {
    const cvector a{cplx{1, 0}, cplx{0, 1}};
    CHECK(match_nodes(a, a) == std::vector<int>{0, 1});
    const cvector swapped{cplx{0, 1}, cplx{1, 0}};
    CHECK(match_nodes(swapped, a) == std::vector<int>{1, 0});
    CHECK_THROWS_AS(match_nodes(a, cvector{cplx{1, 0}}), ArgumentError);

    // noise far below the separation keeps the pairing
    const Signal sig = generate_clustered_signal({3, {2, 1}, 1e-2, 3});
    cvector noisy = sig.nodes;
    Rng rng(5);
    for (auto& x : noisy) x += cplx{1e-6 * rng.uniform(-1, 1), 1e-6 * rng.uniform(-1, 1)};
    const std::vector<int> match = match_nodes(noisy, sig.nodes);
    CHECK(match == std::vector<int>{0, 1, 2});
}

TEST_CASE("noiseless exactness and method agreement across small signals") {
    Rng rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 5);
        std::vector<int> sizes;
        int left = n;
        while (left > 0) {
            // cap cluster size so the double-precision floor stays below 1e-9
            int s = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(std::min(left, 2)));
            sizes.push_back(s);
            left -= s;
        }
        const double delta = rng.log_uniform(3e-2, 2e-1);
        const Signal sig = generate_clustered_signal({n, sizes, delta, rng.next_u64()});
        const MomentVector m = moments_of(sig, 2 * n);
        RecoveryResult a = prony_classical(m, n, false);
        score_against(a, sig);
        for (double e : a.node_errors) CHECK(e <= 1e-9);
        for (double e : a.amp_errors) CHECK(e <= 1e-9);
        RecoveryResult b = prony_homogeneous(m, n, false);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(a.nodes_used[static_cast<std::size_t>(j)] -
                           b.nodes_used[static_cast<std::size_t>(j)]) <= 1e-10);
    }
}

TEST_CASE("residual_moments stays at the noise scale") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 61});
    const MomentVector m = moments_of(sig, 6);
    const double eps = 1e-9;
    const MomentVector mt = perturb(m, {eps, {}, 67});
    const RecoveryResult r = prony_classical(mt, 3, false);
    double scale = 0;
    for (const cplx& v : mt.values) scale = std::max(scale, std::abs(v));
    CHECK(r.residual_moments <= 3 * (1 + sig.amp_hi) * eps + 1e3 * kEps * scale);
}

TEST_CASE("projection flag flips the flag and keeps unit modulus") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 2e-2, 71});
    const MomentVector mt = perturb(moments_of(sig, 6), {1e-10, {}, 73});
    const RecoveryResult r = prony_classical(mt, 3, true);
    CHECK(r.projected);
    for (const cplx& x : r.nodes_used) CHECK(std::abs(std::abs(x) - 1.0) <= 1e-14);
}
