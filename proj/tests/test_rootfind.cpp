#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "prony/errors.hpp"
#include "prony/model.hpp"
#include "prony/recovery.hpp"
#include "prony/rng.hpp"
#include "prony/rootfind.hpp"

using namespace prony;

TEST_CASE("linear and quadratic roots") {
    const cvector r1 = roots(MonicPolynomial{{cplx{-1, 0}}});
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1[0] - cplx{1, 0}) < 1e-14);

    const cvector r2 = roots(MonicPolynomial{{cplx{-1, 0}, cplx{0, 0}}});
    REQUIRE(r2.size() == 2);
    CHECK(std::abs(r2[0] - cplx{-1, 0}) < 1e-12);
    CHECK(std::abs(r2[1] - cplx{1, 0}) < 1e-12);
}

TEST_CASE("clustered forward-build then invert") {
    const Signal sig = generate_clustered_signal({3, {2, 1}, 5e-2, 21});
    const MonicPolynomial p = coeffs_from_roots(sig.nodes);
    const cvector found = roots(p);
    const std::vector<int> match = match_nodes(found, sig.nodes);
    for (std::size_t j = 0; j < found.size(); ++j)
        CHECK(std::abs(found[j] - sig.nodes[static_cast<std::size_t>(match[j])]) < 1e-9);
}

TEST_CASE("coeffs_from_roots fixed cases") {
    const MonicPolynomial q = coeffs_from_roots({cplx{1, 0}, cplx{-1, 0}});
    REQUIRE(q.degree() == 2);
    CHECK(std::abs(q.coeffs[0] - cplx{-1, 0}) < 1e-15);
    CHECK(std::abs(q.coeffs[1]) < 1e-15);

    const MonicPolynomial empty = coeffs_from_roots({});
    CHECK(empty.degree() == 0);
    CHECK(eval(empty, cplx{3, 1}) == cplx{1, 0});
}

TEST_CASE("evaluation residual at the defining roots") {
    Rng rng(31);
    cvector rts(5);
    for (auto& r : rts) r = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
    const MonicPolynomial p = coeffs_from_roots(rts);
    double scale = 1;
    for (const cplx& c : p.coeffs) scale = std::max(scale, std::abs(c));
    for (const cplx& r : rts) CHECK(std::abs(eval(p, r)) <= 1e-12 * scale);
}

TEST_CASE("coeffs_from_roots is permutation invariant (exactly)") {
    Rng rng(37);
    cvector rts(6);
    for (auto& r : rts) r = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const MonicPolynomial a = coeffs_from_roots(rts);
    std::reverse(rts.begin(), rts.end());
    std::swap(rts[1], rts[4]);
    const MonicPolynomial b = coeffs_from_roots(rts);
    for (int i = 0; i < a.degree(); ++i)
        CHECK(a.coeffs[static_cast<std::size_t>(i)] == b.coeffs[static_cast<std::size_t>(i)]);
}

TEST_CASE("eval matches Horner against term-by-term") {
    Rng rng(41);
    MonicPolynomial p;
    p.coeffs.resize(6);
    for (auto& c : p.coeffs) c = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    for (int t = 0; t < 10; ++t) {
        const cplx z{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        cplx naive = std::pow(z, 6);
        for (int k = 0; k < 6; ++k) naive += p.coeffs[static_cast<std::size_t>(k)] * std::pow(z, k);
        const cplx h = eval(p, z);
        CHECK(std::abs(h - naive) <= 1e-13 * std::max(1.0, std::abs(naive)));
    }

    CHECK(eval(MonicPolynomial{{cplx{0, 0}, cplx{0, 0}}}, cplx{2, 0}) == cplx{4, 0});
    CHECK(std::abs(eval(MonicPolynomial{{cplx{-1, 0}, cplx{0, 0}}}, cplx{1, 0})) < 1e-15);
}

TEST_CASE("roots of coeffs_from_roots on separated sets") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        cvector rts;
        while (rts.size() < 4) {
            const cplx cand{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
            bool ok = true;
            for (const cplx& r : rts) ok = ok && std::abs(cand - r) >= 0.1;
            if (ok) rts.push_back(cand);
        }
        const cvector found = roots(coeffs_from_roots(rts));
        const std::vector<int> match = match_nodes(found, rts);
        for (std::size_t j = 0; j < found.size(); ++j)
            CHECK(std::abs(found[j] - rts[static_cast<std::size_t>(match[j])]) < 1e-9);
    }
}

TEST_CASE("newton_polish refines a root branch") {
    const cvector coeffs{cplx{-1, 0}, cplx{0, 0}, cplx{1, 0}}; // z^2 - 1
    const cplx z = newton_polish(coeffs, cplx{1.1, 0.05});
    CHECK(std::abs(z - cplx{1, 0}) < 1e-12);
}
