#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "prony/errors.hpp"
#include "prony/linalg.hpp"
#include "prony/rng.hpp"

using namespace prony;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

ComplexMatrix random_matrix(int rows, int cols, Rng& rng) {
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return a;
}

double vec_inf_dist(const cvector& a, const cvector& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
} // namespace

TEST_CASE("hankel_from lays out moments on antidiagonals") {
    const cvector m{{1, 0}, {2, 0}, {3, 0}};
    const ComplexMatrix h = hankel_from(m, 2);
    CHECK(h(0, 0) == cplx{1, 0});
    CHECK(h(0, 1) == cplx{2, 0});
    CHECK(h(1, 0) == cplx{2, 0});
    CHECK(h(1, 1) == cplx{3, 0});

    const ComplexMatrix h1 = hankel_from(m, 1);
    CHECK(h1.rows() == 1);
    CHECK(h1(0, 0) == cplx{1, 0});

    CHECK_THROWS_AS(hankel_from(m, 3), ArgumentError);
}

TEST_CASE("solve_square basics") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    const cvector b{{1, 1}, {2, 0}, {0, -1}};
    CHECK(vec_inf_dist(solve_square(id, b), b) == 0.0);

    ComplexMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const cvector x = solve_square(d, {{1, 0}, {2, 0}});
    CHECK(std::abs(x[0] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(x[1] - cplx{1, 0}) < 1e-15);
}

TEST_CASE("solve_square recovers a planted solution") {
    Rng rng(42);
    const ComplexMatrix a = random_matrix(5, 5, rng);
    cvector x_star(5);
    for (auto& v : x_star) v = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const cvector b = a.apply(x_star);
    const cvector x = solve_square(a, b);
    CHECK(vec_inf_dist(x, x_star) < 1e-10);

    // residual bound from the operation contract
    const cvector r = a.apply(x);
    double resid = 0, xnorm = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        resid = std::max(resid, std::abs(r[i] - b[i]));
        xnorm = std::max(xnorm, std::abs(x[i]));
    }
    CHECK(resid <= 1e3 * kEps * a.max_abs() * 5 * std::max(1.0, xnorm));
}

TEST_CASE("solve_square flags singular pivots with their index") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 1.0;
    try {
        solve_square(a, {{1, 0}, {1, 0}});
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.pivot_index == 1);
    }
}

TEST_CASE("det on small fixed cases") {
    CHECK(det(ComplexMatrix::identity(3)) == cplx{1, 0});
    ComplexMatrix swap2(2, 2);
    swap2(0, 1) = 1.0;
    swap2(1, 0) = 1.0;
    CHECK(std::abs(det(swap2) - cplx{-1, 0}) < 1e-15);
}

TEST_CASE("det of the 2x2 moment Hankel agrees with the Vandermonde product") {
    // x = {1,-1}, alpha = {1,1}: moments [2,0,2]; det H2 = 4 and
    // alpha1*alpha2*(x2-x1)^2 = 4 must coincide.
    const cvector m{{2, 0}, {0, 0}, {2, 0}};
    const cplx d = det(hankel_from(m, 2));
    CHECK(std::abs(d - cplx{4, 0}) < 1e-14);
    const cplx via_nodes = cplx{1, 0} * cplx{1, 0} * std::pow(cplx{-1, 0} - cplx{1, 0}, 2);
    CHECK(std::abs(d - via_nodes) < 1e-14);
}

TEST_CASE("vandermonde factorization residual") {
    Signal s1;
    s1.nodes = {cplx{1, 0}};
    s1.amplitudes = {cplx{0.7, 0.1}};
    CHECK(vandermonde_factorization_check(s1) == 0.0);

    Signal s2;
    s2.nodes = {cplx{1, 0}, cplx{-1, 0}};
    s2.amplitudes = {cplx{1, 0}, cplx{1, 0}};
    CHECK(vandermonde_factorization_check(s2) <= 1e-15);

    const Signal s4 = generate_clustered_signal({4, {3, 1}, 1e-2, 9});
    CHECK(vandermonde_factorization_check(s4) <= 1e-12);
}

TEST_CASE("min_norm_solution puts zero along the null direction") {
    ComplexMatrix a(2, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    const cvector x = min_norm_solution(a, {{1, 0}, {1, 0}});
    CHECK(std::abs(x[0] - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(x[1] - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(x[2]) < 1e-14);

    ComplexMatrix row(1, 2);
    row(0, 0) = 1.0;
    row(0, 1) = 1.0;
    const cvector y = min_norm_solution(row, {{2, 0}});
    CHECK(std::abs(y[0] - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(y[1] - cplx{1, 0}) < 1e-14);
}

TEST_CASE("min_norm_solution beats every null-space shift") {
    Rng rng(7);
    const ComplexMatrix a = random_matrix(3, 6, rng);
    cvector b(3);
    for (auto& v : b) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const cvector x = min_norm_solution(a, b);

    // residual
    const cvector ax = a.apply(x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ax[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) < 1e-10);

    auto norm2 = [](const cvector& v) {
        double s = 0;
        for (const cplx& e : v) s += std::norm(e);
        return std::sqrt(s);
    };

    // Null-space sweep oracle: project random vectors onto the null space of A
    // and verify no shifted particular solution has smaller norm.
    auto project_null = [&](const cvector& v) {
        // v - A^H (A A^H)^{-1} A v
        const cvector av = a.apply(v);
        const cvector w = min_norm_solution(a, av);
        cvector out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - w[i];
        return out;
    };
    const double base = norm2(x);
    for (int t = 0; t < 24; ++t) {
        cvector v(6);
        for (auto& e : v) e = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const cvector nv = project_null(v);
        cvector shifted(6);
        for (std::size_t i = 0; i < 6; ++i) shifted[i] = x[i] + nv[i];
        CHECK(norm2(shifted) >= base - 1e-12);
        // orthogonality of the min-norm solution to the null space
        cplx dot = 0;
        for (std::size_t i = 0; i < 6; ++i) dot += std::conj(nv[i]) * x[i];
        CHECK(std::abs(dot) <= 1e-10 * std::max(1.0, base * norm2(nv)));
    }
}

TEST_CASE("min_norm_solution rejects rank-deficient systems") {
    ComplexMatrix a(2, 3);
    a(0, 0) = 1.0;
    a(1, 0) = 1.0; // duplicate rows
    CHECK_THROWS_AS(min_norm_solution(a, {{1, 0}, {1, 0}}), SingularityError);
}

TEST_CASE("compound matrix: edge orders and Cauchy-Binet") {
    Rng rng(11);
    const ComplexMatrix a = random_matrix(4, 4, rng);
    const ComplexMatrix b = random_matrix(4, 4, rng);

    const ComplexMatrix cn = compound(a, 4);
    CHECK(cn.rows() == 1);
    CHECK(std::abs(cn(0, 0) - det(a)) < 1e-12);

    const ComplexMatrix c1 = compound(a, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(c1(i, j) == a(i, j));

    const ComplexMatrix ci = compound(ComplexMatrix::identity(5), 3);
    for (int i = 0; i < ci.rows(); ++i)
        for (int j = 0; j < ci.cols(); ++j)
            CHECK(std::abs(ci(i, j) - (i == j ? cplx{1, 0} : cplx{0, 0})) < 1e-15);

    const ComplexMatrix lhs = compound(a * b, 2);
    const ComplexMatrix rhs = compound(a, 2) * compound(b, 2);
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j) CHECK(std::abs(lhs(i, j) - rhs(i, j)) < 1e-10);

    CHECK_THROWS_AS(compound(a, 5), ArgumentError);
}

TEST_CASE("higher adjugate: classical case and identity") {
    ComplexMatrix d2(2, 2);
    d2(0, 0) = cplx{3, 1};
    d2(1, 1) = cplx{-2, 0.5};
    const ComplexMatrix adj = higher_adjugate(d2, 1);
    CHECK(std::abs(adj(0, 0) - d2(1, 1)) < 1e-15);
    CHECK(std::abs(adj(1, 1) - d2(0, 0)) < 1e-15);
    CHECK(std::abs(adj(0, 1)) < 1e-15);

    Rng rng(13);
    const ComplexMatrix a = random_matrix(4, 4, rng);
    const ComplexMatrix prod = a * higher_adjugate(a, 1);
    const cplx d = det(a);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(prod(i, j) - (i == j ? d : cplx{0, 0})) < 1e-12);

    CHECK(higher_adjugate(a, 4)(0, 0) == cplx{1, 0});
    CHECK(std::abs(higher_adjugate(a, 0)(0, 0) - d) < 1e-12);
}

TEST_CASE("index_sequences lexicographic order") {
    const auto seqs = index_sequences(2, 4);
    REQUIRE(seqs.size() == 6);
    CHECK(seqs[0] == std::vector<int>{1, 2});
    CHECK(seqs[1] == std::vector<int>{1, 3});
    CHECK(seqs[2] == std::vector<int>{1, 4});
    CHECK(seqs[3] == std::vector<int>{2, 3});
    CHECK(seqs[4] == std::vector<int>{2, 4});
    CHECK(seqs[5] == std::vector<int>{3, 4});
}

TEST_CASE("jacobi svd reconstructs and orthogonalizes") {
    Rng rng(19);
    for (const auto& [r, c] : {std::pair{5, 3}, std::pair{3, 5}, std::pair{4, 4}}) {
        const ComplexMatrix a = random_matrix(r, c, rng);
        const Svd s = jacobi_svd(a);
        REQUIRE(static_cast<int>(s.sigma.size()) == std::min(r, c));
        for (std::size_t i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma[i] <= s.sigma[i - 1]);
        // A = U S V^H
        ComplexMatrix us = s.u;
        for (int i = 0; i < us.rows(); ++i)
            for (int j = 0; j < us.cols(); ++j) us(i, j) *= s.sigma[static_cast<std::size_t>(j)];
        const ComplexMatrix rec = us * s.v.conj_transpose();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) CHECK(std::abs(rec(i, j) - a(i, j)) < 1e-12);
        // orthonormal columns
        const ComplexMatrix utu = s.u.conj_transpose() * s.u;
        for (int i = 0; i < utu.rows(); ++i)
            for (int j = 0; j < utu.cols(); ++j)
                CHECK(std::abs(utu(i, j) - (i == j ? cplx{1, 0} : cplx{0, 0})) < 1e-12);
    }
}

TEST_CASE("condition_number of identity and diagonal") {
    CHECK(condition_number(ComplexMatrix::identity(4)) == doctest::Approx(1.0));

    ComplexMatrix d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 2.0;
    CHECK(condition_number(d) == doctest::Approx(1.0));
}
