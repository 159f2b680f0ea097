#pragma once

#include <cmath>

#include "complex_util.hpp"
#include "gammafn.hpp"

namespace pscat {

namespace detail {

// B_2 .. B_24
inline constexpr double kBernoulliZ[12] = {
    1.0 / 6.0,       -1.0 / 30.0,       1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,   7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0, 854513.0 / 138.0,
    -236364091.0 / 2730.0};

} // namespace detail

// Riemann zeta by Euler-Maclaurin.  The tail expansion is the analytic
// continuation, so this is valid well left of the critical strip
// (Re s > -20 with the order used here); accuracy ~1e-14 relative for
// |Im s| <= ~250.
inline cplx riemann_zeta(cplx s) {
    if (mag(s - cplx(1.0)) < 1e-12)
        throw pole_error("riemann_zeta: pole at s = 1");
    if (s.real() < -0.5) {
        // left of the strip the Euler-Maclaurin cancellation grows like
        // N^{1-Re s}; reflect instead
        const cplx chi_log = s * std::log(2.0) + (s - 1.0) * std::log(PI) +
                             detail::log_sin_pi(0.5 * s) + log_gamma(1.0 - s);
        return std::exp(chi_log) * riemann_zeta(1.0 - s);
    }
    const double t = std::abs(s.imag());
    const int N = std::max(30, static_cast<int>(0.9 * t) + 14);
    cplx sum(0.0, 0.0);
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
    const cplx Nps = std::exp(-s * std::log(double(N)));
    sum += Nps * (double(N) / (s - 1.0) + 0.5);
    // correction terms  B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    cplx poch = s;                  // rising product up to s+2k-2
    cplx Npow = Nps / double(N);    // N^{-s-1}
    double fact = 2.0;              // (2k)!
    const double N2 = double(N) * double(N);
    for (int k = 1; k <= 12; ++k) {
        sum += detail::kBernoulliZ[k - 1] / fact * poch * Npow;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        Npow /= N2;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

// Completed zeta  Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s), satisfying
// Lambda(s) = Lambda(1-s).  Evaluated directly (not via its own functional
// equation) wherever the Euler-Maclaurin continuation is accurate, so the
// FE residual is a meaningful check.  Simple poles at s = 0 and s = 1.
inline cplx completed_zeta(cplx s) {
    if (mag(s) < 1e-10 || mag(s - cplx(1.0)) < 1e-10)
        throw pole_error("completed_zeta: pole at s = 0 or s = 1");
    // Gamma(s/2) poles at nonpositive even integers are cancelled by the
    // trivial zeros of zeta; step around the indeterminate form itself.
    if (s.imag() == 0.0 && s.real() < -1.0) {
        const double r = s.real();
        if (std::abs(r - 2.0 * std::round(r / 2.0)) < 0.05)
            return completed_zeta(1.0 - s);
    }
    if (s.real() < -18.0) return completed_zeta(1.0 - s);
    return std::exp(-0.5 * s * std::log(cplx(PI)) + log_gamma(0.5 * s)) *
           riemann_zeta(s);
}

} // namespace pscat
