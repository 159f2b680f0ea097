#pragma once

#include <cmath>

#include "complex_util.hpp"

// Complex log-gamma, digamma and trigamma via recurrence shift into the
// Stirling regime, with reflection for Re z < 1/2.

namespace pscat {

namespace detail {

// B_2, B_4, ..., B_20
inline constexpr double kBernoulli[10] = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

inline constexpr double kStirlingRadius = 15.0;

// log(sin(pi z)) up to a multiple of 2*pi*i, stable for large |Im z|.
inline cplx log_sin_pi(cplx z) {
    const cplx w = PI * z;
    const cplx I(0.0, 1.0);
    if (z.imag() >= 0.0) {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        return I * w + std::log(1.0 - std::exp(-2.0 * I * w)) -
               std::log(2.0 * I);
    }
    // sin w = -e^{-iw} (1 - e^{2iw}) / (2i)
    return -I * w + std::log(1.0 - std::exp(2.0 * I * w)) +
           std::log(0.5 * I);
}

inline cplx log_gamma_stirling(cplx z) {
    const cplx lz = std::log(z);
    cplx s = (z - 0.5) * lz - z + 0.5 * std::log(TWO_PI);
    const cplx z2 = z * z;
    cplx zp = z;
    for (int k = 1; k <= 10; ++k) {
        s += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0) * zp);
        zp *= z2;
    }
    return s;
}

inline cplx digamma_stirling(cplx z) {
    cplx s = std::log(z) - 0.5 / z;
    const cplx z2 = z * z;
    cplx zp = z2;
    for (int k = 1; k <= 10; ++k) {
        s -= kBernoulli[k - 1] / (2.0 * k * zp);
        zp *= z2;
    }
    return s;
}

inline cplx trigamma_stirling(cplx z) {
    const cplx z2 = z * z;
    cplx s = 1.0 / z + 0.5 / z2;
    cplx zp = z * z2;
    for (int k = 1; k <= 10; ++k) {
        s += kBernoulli[k - 1] / zp;
        zp *= z2;
    }
    return s;
}

inline void check_not_pole(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 &&
        z.real() == std::floor(z.real()))
        throw pole_error("gamma-type function evaluated at a nonpositive integer");
}

} // namespace detail

inline cplx log_gamma(cplx z) {
    detail::check_not_pole(z);
    if (z.real() < 0.5) {
        // reflection; branch is irrelevant to exp(log_gamma)
        return std::log(cplx(PI)) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    cplx shift(0.0, 0.0);
    while (mag(z) < detail::kStirlingRadius) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
}

inline cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

inline cplx digamma(cplx z) {
    detail::check_not_pole(z);
    if (z.real() < 0.5) {
        const cplx w = PI * z;
        return digamma(1.0 - z) - PI * std::cos(w) / std::sin(w);
    }
    cplx shift(0.0, 0.0);
    while (mag(z) < detail::kStirlingRadius) {
        shift += 1.0 / z;
        z += 1.0;
    }
    return detail::digamma_stirling(z) - shift;
}

inline cplx trigamma(cplx z) {
    detail::check_not_pole(z);
    if (z.real() < 0.5) {
        const cplx s = std::sin(PI * z);
        return PI * PI / (s * s) - trigamma(1.0 - z);
    }
    cplx shift(0.0, 0.0);
    while (mag(z) < detail::kStirlingRadius) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    return detail::trigamma_stirling(z) + shift;
}

// Digamma with the normalization used throughout the spectral formulas:
// psi(s) = Gamma'(s)/Gamma(s) / (2 pi).  order 1 is d(psi)/ds.
inline cplx psi_paper(cplx s, int order = 0) {
    if (order == 0) return digamma(s) / TWO_PI;
    if (order == 1) return trigamma(s) / TWO_PI;
    throw domain_error("psi_paper: order must be 0 or 1");
}

} // namespace pscat
