#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

#include "arith.hpp"
#include "bessel_k.hpp"
#include "complex_util.hpp"
#include "halfplane.hpp"
#include "zeta.hpp"

// Eisenstein series E(z, s) for the modular group and its scattering
// coefficient phi(s) = Lambda(2s-1)/Lambda(2s), evaluated on the whole
// s-plane away from poles through the Fourier expansion
//
//   E(z,s) = y^s + phi(s) y^{1-s}
//          + (4/Lambda(2s)) sqrt(y) sum_n n^{s-1/2} sigma_{1-2s}(n)
//                                     K_{s-1/2}(2 pi n y) cos(2 pi n x).

namespace pscat {

struct EisensteinValue {
    cplx value{0.0, 0.0};
    int truncation_n = 0;
    double tail_bound = 0.0; // rigorous bound on the dropped Fourier tail
};

inline cplx phi_scatter(cplx s) {
    const cplx eps = 2.0 * s - 1.0;
    if (mag(eps) < 1e-6) {
        // both completed zetas are at their poles; the simple-pole residues
        // give phi(1/2) = -1 with slope 4*(gamma/2 - log(2 sqrt(pi)))
        const double A0 =
            0.5 * EULER_GAMMA - std::log(2.0) - 0.5 * std::log(PI);
        return -1.0 + 2.0 * A0 * eps;
    }
    if (mag(s) < 1e-7) {
        // zero of phi at s = 0: Lambda(2s) pole in the denominator
        const double A0 =
            0.5 * EULER_GAMMA - std::log(2.0) - 0.5 * std::log(PI);
        return completed_zeta(eps) * (2.0 * s) / (-1.0 + 2.0 * A0 * s);
    }
    return completed_zeta(eps) / completed_zeta(2.0 * s);
}

// Summation in the fundamental domain (E is automorphic, and the reduced
// representative maximizes y, which maximizes the K-Bessel decay).
inline EisensteinValue eisenstein_eval(const Point& z, cplx s,
                                       double tol = 1e-12) {
    const Point w = reduce_fund_domain(z).point;
    const double y = w.y, x = w.x;
    const cplx nu = s - 0.5;
    const cplx lam2s = completed_zeta(2.0 * s);
    const double pref = 4.0 / mag(lam2s) * std::sqrt(y);
    const double sig = s.real();

    EisensteinValue out;
    out.value = std::exp(s * std::log(y)) +
                phi_scatter(s) * std::exp((1.0 - s) * std::log(y));

    const cplx coeff = 4.0 / lam2s * std::sqrt(y);
    const double p = std::max(0.0, 1.0 - 2.0 * sig); // sigma_{1-2s} growth
    auto term_bound = [&](int n) {
        return pref * std::pow(double(n), sig - 0.5 + 1.0 + p) *
               bessel_k_bound(nu, TWO_PI * n * y);
    };
    cplx sum(0.0, 0.0);
    int n = 1;
    double best_tail = std::numeric_limits<double>::infinity();
    bool certified = false;
    for (; n <= 4000; ++n) {
        sum += std::pow(cplx(double(n)), nu) *
               divisor_sigma(1.0 - 2.0 * s, n) *
               bessel_k(nu, TWO_PI * n * y) * std::cos(TWO_PI * n * x);
        // geometric tail witness: ratio of consecutive bounds
        const double bnext = term_bound(n + 1);
        const double ratio = std::pow(double(n + 2) / double(n + 1),
                                      sig + 0.5 + p) *
                             std::exp(-TWO_PI * y);
        if (ratio < 1.0) {
            const double tail = bnext / (1.0 - ratio);
            best_tail = std::min(best_tail, tail);
            if (tail < tol) {
                certified = true;
                break;
            }
        }
    }
    if (!certified)
        throw tolerance_error("eisenstein_eval: tolerance unreachable",
                              best_tail);
    out.tail_bound = best_tail;
    out.truncation_n = n;
    out.value += coeff * sum;
    return out;
}

// The defining sum over Gamma_infty \ Gamma, truncated with rigorous
// analytic tails.  Converges for Re s > 1 (practical for Re s >~ 2);
// slow, used as the independent cross-check of the Fourier route.
inline EisensteinValue eisenstein_defining_sum(const Point& z, cplx s,
                                               double target_tail = 1e-9) {
    const double sig = s.real();
    if (sig <= 1.5)
        throw domain_error("eisenstein_defining_sum: requires Re s > 1.5");
    const double x = z.x, y = z.y;
    const double ys = std::pow(y, sig);
    const double Bc = 0.5 * std::sqrt(PI) *
                      std::exp(std::lgamma(sig - 0.5) - std::lgamma(sig));

    // c-range from the c>cmax tail bound, d-window from the per-c tail bound
    auto c_tail = [&](double C) {
        const double zt1 = std::pow(C, 1.0 - 2.0 * sig) / (2.0 * sig - 1.0);
        const double zt2 = std::pow(C, 2.0 - 2.0 * sig) / (2.0 * sig - 2.0);
        return 2.0 * ys * (std::pow(y, -2.0 * sig) * zt1 +
                           std::pow(y, 1.0 - 2.0 * sig) * Bc * zt2);
    };
    int cmax = 8;
    while (cmax < 4000 && c_tail(cmax) > 0.25 * target_tail) cmax *= 2;
    auto d_tail = [&](double W) {
        return 2.0 * ys * std::pow(W - 1.0, 1.0 - 2.0 * sig) /
               (2.0 * sig - 1.0);
    };
    double W = 8.0;
    while (W < 3e5 && d_tail(W) * cmax > 0.25 * target_tail) W *= 2.0;

    cplx sum = std::exp(s * std::log(y)); // identity coset
    for (int c = 1; c <= cmax; ++c) {
        const auto dlo = static_cast<std::int64_t>(std::floor(-c * x - W));
        const auto dhi = static_cast<std::int64_t>(std::ceil(-c * x + W));
        for (std::int64_t d = dlo; d <= dhi; ++d) {
            if (std::gcd(std::int64_t(c), std::abs(d)) != 1) continue;
            const double u = c * x + double(d);
            const double q = y / (double(c) * c * y * y + u * u);
            sum += std::exp(s * std::log(q));
        }
    }
    const double tail = c_tail(cmax) + cmax * d_tail(W);
    if (tail > target_tail)
        throw tolerance_error("eisenstein_defining_sum: tolerance unreachable",
                              tail);
    return {sum, cmax, tail};
}

} // namespace pscat
