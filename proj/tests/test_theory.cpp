#include <doctest.h>

#include <cmath>
#include <complex>

#include "prony/errors.hpp"
#include "prony/recovery.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"
#include "prony/theory.hpp"

using namespace prony;

namespace {
std::vector<cplx> sample_z(int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(std::polar(rng.uniform(0.8, 1.2), rng.angle()));
    return out;
}
} // namespace

TEST_CASE("build_g_and_d smallest case") {
    const cvector m{cplx{2, 0}, cplx{0, 1}};
    const cvector d{cplx{0.5, 0}, cplx{0, -0.5}};
    const GD gd = build_g_and_d(m, d, cplx{3, 1}, 1);
    CHECK(gd.g(0, 0) == cplx{1, 0});
    CHECK(gd.g(0, 1) == cplx{3, 1});
    CHECK(gd.g(1, 0) == m[0]);
    CHECK(gd.g(1, 1) == m[1]);
    CHECK(gd.d(0, 0) == cplx{0, 0});
    CHECK(gd.d(0, 1) == cplx{0, 0});
    CHECK(gd.d(1, 0) == d[0]);
    CHECK(gd.d(1, 1) == d[1]);
}

TEST_CASE("det G(z) equals the bordered Prony polynomial") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 211});
    const MomentVector m = moments_of(sig, 6);
    const cvector qbar = homogeneous_prony_coeffs(m.values, 3);
    const cvector d(6, cplx{0, 0});
    for (const cplx& z : sample_z(5, 3)) {
        const GD gd = build_g_and_d(m.values, d, z, 3);
        const cplx direct = det(gd.g);
        const cplx via_coeffs = polyval(qbar, z);
        CHECK(std::abs(direct - via_coeffs) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("theta_{n+1} matches the explicit product form") {
    // det G(z) = (-1)^n (prod alpha_k) (prod_{m<l} (x_l-x_m)^2) (prod (z-x_m))
    const Signal sig = generate_clustered_signal({3, {2, 1}, 7e-2, 219});
    const int n = 3;
    const MomentVector m = moments_of(sig, 2 * n);
    const cvector d = draw_tolerance_coeffs(2 * n, 31);
    for (const cplx& z : sample_z(4, 33)) {
        const ExpansionReport rep =
            verify_expansion(m.values, d, n, {z}, unit_circle_eps_samples(n + 2));
        const cplx theta_top = rep.theta[0][0]; // eps^0 coefficient
        cplx product = (n % 2 == 0) ? 1.0 : -1.0;
        for (const cplx& a : sig.amplitudes) product *= a;
        for (int mm = 0; mm < n; ++mm)
            for (int l = mm + 1; l < n; ++l)
                product *= std::pow(sig.nodes[static_cast<std::size_t>(l)] -
                                        sig.nodes[static_cast<std::size_t>(mm)],
                                    2);
        for (const cplx& x : sig.nodes) product *= z - x;
        CHECK(std::abs(theta_top - product) <= 1e-10 * std::max(1.0, std::abs(product)));
    }
}

TEST_CASE("expansion identity with zero perturbation is exact") {
    const Signal sig = generate_clustered_signal({2, {2}, 1e-1, 223});
    const MomentVector m = moments_of(sig, 4);
    const cvector d(4, cplx{0, 0});
    const ExpansionReport rep =
        verify_expansion(m.values, d, 2, sample_z(3, 5), unit_circle_eps_samples(4));
    CHECK(rep.max_rel_err <= 1e-12);
    for (std::size_t kappa = 1; kappa < rep.theta.size(); ++kappa)
        for (const cplx& t : rep.theta[kappa]) CHECK(std::abs(t) == 0.0);
}

TEST_CASE("expansion identity on random instances at n=2..4") {
    Rng rng(227);
    for (int n : {2, 3, 4}) {
        std::vector<int> sizes;
        if (n == 2) sizes = {1, 1};
        if (n == 3) sizes = {2, 1};
        if (n == 4) sizes = {2, 1, 1};
        const Signal sig = generate_clustered_signal({n, sizes, 5e-2, rng.next_u64()});
        const MomentVector m = moments_of(sig, 2 * n);
        const cvector d = draw_tolerance_coeffs(2 * n, rng.next_u64());
        const ExpansionReport rep =
            verify_expansion(m.values, d, n, sample_z(4, rng.next_u64()),
                             unit_circle_eps_samples(n + 2));
        CHECK(rep.max_rel_err <= 1e-8);
        CHECK(rep.det_d_rel_err <= 1e-10);
    }
}

TEST_CASE("expansion rejects clustered eps samples") {
    const Signal sig = generate_clustered_signal({2, {1, 1}, 1e-1, 229});
    const MomentVector m = moments_of(sig, 4);
    const cvector d = draw_tolerance_coeffs(4, 7);
    std::vector<double> eps{1e-3, 1e-3, 1e-3, 1e-3};
    CHECK_THROWS_AS(verify_expansion(m.values, d, 2, sample_z(2, 9), eps), ArgumentError);
}

TEST_CASE("gamma determinant equals the matching compound entry") {
    const int n = 3;
    const Signal sig = generate_clustered_signal({n, {2, 1}, 4e-2, 233});
    const MomentVector m = moments_of(sig, 2 * n);
    const cvector d = draw_tolerance_coeffs(2 * n, 11);
    for (const cplx& z : sample_z(3, 13)) {
        const GD gd = build_g_and_d(m.values, d, z, n);
        for (int kappa = 1; kappa <= n - 1; ++kappa) {
            const int r = n + 1 - kappa;
            const auto seqs = index_sequences(r, n + 1);
            const ComplexMatrix comp = compound(gd.g, r);
            for (std::size_t bi = 0; bi < seqs.size(); ++bi) {
                if (seqs[bi].front() != 1) continue;
                for (std::size_t gi = 0; gi < seqs.size(); ++gi) {
                    const cplx gamma_val =
                        gamma_beta_gamma(m.values, n, kappa, seqs[bi], seqs[gi], z);
                    const cplx comp_val = comp(static_cast<int>(bi), static_cast<int>(gi));
                    CHECK(std::abs(gamma_val - comp_val) <=
                          1e-10 * std::max(1.0, std::abs(comp_val)));
                }
            }
        }
    }
}

TEST_CASE("gamma reassembly reproduces the trace coefficients") {
    const int n = 3;
    const Signal sig = generate_clustered_signal({n, {2, 1}, 6e-2, 239});
    const MomentVector m = moments_of(sig, 2 * n);
    const cvector d = draw_tolerance_coeffs(2 * n, 17);
    const auto zs = sample_z(3, 19);
    const ExpansionReport rep =
        verify_expansion(m.values, d, n, zs, unit_circle_eps_samples(n + 2));
    for (int kappa = 1; kappa <= n - 1; ++kappa) {
        for (std::size_t zi = 0; zi < zs.size(); ++zi) {
            const cplx via_gamma = theta_from_gamma_sum(m.values, d, n, kappa, zs[zi]);
            const cplx via_trace = rep.theta[static_cast<std::size_t>(kappa)][zi];
            CHECK(std::abs(via_gamma - via_trace) <= 1e-9 * std::max(1.0, std::abs(via_trace)));
        }
    }
}

TEST_CASE("gamma argument validation") {
    const cvector m(6, cplx{1, 0});
    CHECK_THROWS_AS(gamma_beta_gamma(m, 3, 0, {1, 2, 3, 4}, {1, 2, 3, 4}, cplx{1, 0}),
                    ArgumentError);
    CHECK_THROWS_AS(gamma_beta_gamma(m, 3, 1, {2, 3, 4}, {1, 2, 3}, cplx{1, 0}), ArgumentError);
    CHECK_THROWS_AS(gamma_beta_gamma(m, 3, 1, {1, 2}, {1, 2, 3}, cplx{1, 0}), ArgumentError);
}

TEST_CASE("first-order constant: zero perturbation gives zero") {
    const Signal sig = generate_clustered_signal({2, {2}, 1e-1, 241});
    const cvector d(4, cplx{0, 0});
    const FirstOrderEntry e = first_order_constant(sig, d, 0);
    CHECK(std::abs(e.c) <= 1e-4 * std::max(1.0, e.predicted_bound));
}

TEST_CASE("first-order constant matches the n=1 closed form") {
    // x~ = (m1 + eps d1)/(m0 + eps d0) gives c = (x d0 - d1)/alpha
    Rng rng(251);
    for (int t = 0; t < 5; ++t) {
        Signal sig = generate_clustered_signal({1, {1}, 1e-1, rng.next_u64()});
        const cvector d = draw_tolerance_coeffs(2, rng.next_u64());
        const cplx x = sig.nodes[0];
        const cplx a = sig.amplitudes[0];
        const cplx closed = (x * d[0] - d[1]) / a;
        const FirstOrderEntry e = first_order_constant(sig, d, 0);
        CHECK(std::abs(e.c - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("first-order constant is additive in the perturbation") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 1e-1, 257});
    const cvector d1 = draw_tolerance_coeffs(6, 21);
    const cvector d2 = draw_tolerance_coeffs(6, 23);
    for (int j = 0; j < 3; ++j)
        CHECK(first_order_linearity_defect(sig, d1, d2, j) <= 1e-4);
}

TEST_CASE("cluster discrepancy vanishes on exact recovery") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 3e-2, 263});
    const cplx v = cluster_discrepancy(sig, sig.nodes, 2, 0);
    CHECK(std::abs(v) == 0.0);
    CHECK_THROWS_AS(cluster_discrepancy(sig, sig.nodes, 0, 0), ArgumentError);
}
