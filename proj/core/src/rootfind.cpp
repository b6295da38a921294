#include "prony/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "prony/errors.hpp"

namespace prony {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Error-free transformations: compensated (double-double) Horner evaluation.
// Clustered roots need residuals far below eps*|p| to be placed at forward
// eps accuracy; plain Horner noise would leave them with a coefficientwise
// recomposition bias.
struct DD {
    double hi = 0, lo = 0;
};

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    const DD t = two_sum(s.hi, s.lo);
    return t;
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return two_sum(s.hi, s.lo);
}

// a (double-double) times b (double)
DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo = std::fma(a.lo, b, p.lo);
    return two_sum(p.hi, p.lo);
}

struct DDComplex {
    DD re, im;
};

DDComplex ddc_add(DDComplex a, cplx b) {
    return {dd_add(a.re, b.real()), dd_add(a.im, b.imag())};
}

DDComplex ddc_mul(DDComplex a, cplx b) {
    const DD rr = dd_mul(a.re, b.real());
    const DD ii = dd_mul(a.im, b.imag());
    const DD ri = dd_mul(a.re, b.imag());
    const DD ir = dd_mul(a.im, b.real());
    return {dd_add(rr, DD{-ii.hi, -ii.lo}), dd_add(ri, ir)};
}

cplx compensated_eval(const MonicPolynomial& p, cplx z) {
    DDComplex acc{{1.0, 0.0}, {0.0, 0.0}};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = ddc_add(ddc_mul(acc, z), *it);
    return {acc.re.hi + acc.re.lo, acc.im.hi + acc.im.lo};
}

} // namespace

cplx polyval(const cvector& coeffs, cplx z) {
    cplx acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx polyval_derivative(const cvector& coeffs, cplx z) {
    cplx acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

cplx eval(const MonicPolynomial& p, cplx z) {
    cplx acc = 1.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx eval_derivative(const MonicPolynomial& p, cplx z) {
    const int n = p.degree();
    cplx acc = static_cast<double>(n);
    for (int k = n - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * p.coeffs[static_cast<std::size_t>(k)];
    return acc;
}

namespace {

// A few compensated-Newton steps per root; the corrections are below the
// plain-Horner noise floor that Aberth settles at.
void polish_roots(const MonicPolynomial& p, cvector& z) {
    for (cplx& zi : z) {
        for (int it = 0; it < 3; ++it) {
            const cplx pv = compensated_eval(p, zi);
            const cplx dv = eval_derivative(p, zi);
            if (dv == 0.0) break;
            const cplx step = pv / dv;
            if (!(std::abs(step) < 1.0)) break; // diverging: keep the Aberth iterate
            zi -= step;
            if (std::abs(step) <= kEps * (1.0 + std::abs(zi))) break;
        }
    }
}

} // namespace

cvector roots(const MonicPolynomial& p) {
    const int n = p.degree();
    if (n < 1) throw ArgumentError("roots: degree must be at least 1");
    if (n == 1) return {-p.coeffs[0]};

    double cnorm = 0;
    for (const cplx& c : p.coeffs) cnorm = std::max(cnorm, std::abs(c));
    const double scale = 1.0 + cnorm;
    const double radius = scale;

    cvector z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // irrational phase offset breaks the symmetry of conjugate root sets
        const double t = 2.0 * std::numbers::pi * k / n + 0.3183098861837907;
        z[static_cast<std::size_t>(k)] = std::polar(radius, t);
    }

    const double tol = 1e2 * kEps * scale;
    cvector best = z;
    double best_res = std::numeric_limits<double>::infinity();
    std::vector<double> residuals(static_cast<std::size_t>(n), 0.0);

    // Rounding floor of a Horner evaluation at z; for clustered (near
    // multiple) roots the Newton-step quality stagnates around sqrt(eps)
    // while |p(z)| still reaches this floor, so a root whose residual is
    // below it cannot be improved in double precision.
    auto eval_noise = [&](cplx zi) {
        const double az = std::abs(zi);
        double bound = 1.0;
        for (int k = n - 1; k >= 0; --k)
            bound = bound * az + std::abs(p.coeffs[static_cast<std::size_t>(k)]);
        return 2.0 * n * kEps * bound;
    };

    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            const cplx zi = z[static_cast<std::size_t>(i)];
            const cplx pv = eval(p, zi);
            const cplx dv = eval_derivative(p, zi);
            const double quality = std::abs(pv) / std::max(std::abs(dv), 1e-300);
            const bool at_floor = std::abs(pv) <= eval_noise(zi);
            residuals[static_cast<std::size_t>(i)] = at_floor ? 0.0 : quality;
            worst = std::max(worst, at_floor ? 0.0 : quality);
            if (quality <= tol || at_floor) continue;
            cplx repel = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const cplx diff = zi - z[static_cast<std::size_t>(j)];
                if (diff == 0.0) continue;
                repel += 1.0 / diff;
            }
            const cplx w = dv != 0.0 ? pv / dv : pv;
            const cplx denom = 1.0 - w * repel;
            const cplx step = denom != 0.0 ? w / denom : w;
            z[static_cast<std::size_t>(i)] = zi - step;
        }
        if (worst < best_res) {
            best_res = worst;
            best = z;
        }
        if (worst <= tol) {
            polish_roots(p, z);
            std::sort(z.begin(), z.end(), lex_less);
            return z;
        }
    }
    std::sort(best.begin(), best.end(), lex_less);
    throw ConvergenceError("roots: Aberth iteration did not converge within 500 iterations",
                           best, residuals);
}

MonicPolynomial coeffs_from_roots(cvector rts) {
    std::sort(rts.begin(), rts.end(), lex_less);
    cvector full{cplx{1, 0}}; // coefficients of the running product, ascending
    for (const cplx& r : rts) {
        cvector next(full.size() + 1, cplx{0, 0});
        for (std::size_t k = 0; k < full.size(); ++k) {
            next[k] -= r * full[k];
            next[k + 1] += full[k];
        }
        full = std::move(next);
    }
    MonicPolynomial p;
    p.coeffs.assign(full.begin(), full.end() - 1);
    return p;
}

cplx newton_polish(const cvector& coeffs, cplx z0, int max_iter) {
    cplx z = z0;
    for (int it = 0; it < max_iter; ++it) {
        const cplx pv = polyval(coeffs, z);
        const cplx dv = polyval_derivative(coeffs, z);
        if (dv == 0.0) break;
        const cplx step = pv / dv;
        z -= step;
        if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(z))) break;
    }
    return z;
}

} // namespace prony
