#pragma once

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

#include "complex_util.hpp"
#include "gammafn.hpp"
#include "quadrature.hpp"

// Modified Bessel K of complex order and positive real argument.
//
// Three regimes:
//   - real order: boost::math::cyl_bessel_k
//   - x moderately large vs |Im nu|: saddle-shifted contour of the
//     integral  K_nu(x) = (1/2) Int exp(-x cosh t + nu t) dt  over the
//     horizontal line through the saddle t* = asinh(nu/x).  On that line
//     the integrand is non-oscillatory, so there is no exponential
//     cancellation even deep in the oscillatory regime x < |Im nu|.
//   - otherwise: the power series of I_{+nu}, I_{-nu} with the reflection
//     K = pi/2 (I_{-nu} - I_nu)/sin(pi nu), terms assembled in log space.
//     The exponentially small size e^{-pi|Im nu|/2} lives entirely in the
//     1/sin factor, so the cancellation loss stays mild (<~6 digits at the
//     worst corner x ~ |Im nu| ~ 60 of the supported range).

namespace pscat {

namespace detail {

inline cplx bessel_i_series(cplx nu, double x) {
    const double L = std::log(0.5 * x);
    cplx sum(0.0, 0.0);
    double maxmag = 0.0;
    for (int k = 0; k < 700; ++k) {
        const cplx le = (2.0 * k + nu) * L - log_gamma(cplx(k + 1.0)) -
                        log_gamma(nu + double(k + 1));
        const cplx term = std::exp(le);
        sum += term;
        maxmag = std::max(maxmag, mag(term));
        if (k > 0.6 * x && mag(term) < 1e-18 * std::max(mag(sum), maxmag * 1e-6))
            break;
    }
    return sum;
}

inline cplx sin_pi_stable(cplx z) {
    const cplx I(0.0, 1.0);
    const cplx w = PI * z;
    // (e^{iw} - e^{-iw}) / 2i, factoring out the dominant exponential
    if (z.imag() > 0.0)
        return std::exp(-I * w) * (std::exp(2.0 * I * w) - 1.0) / (2.0 * I);
    return std::exp(I * w) * (1.0 - std::exp(-2.0 * I * w)) / (2.0 * I);
}

inline cplx bessel_k_series(cplx nu, double x) {
    // guard: the reflection degenerates at real integer order
    const double dist_int = std::hypot(nu.real() - std::round(nu.real()),
                                       nu.imag());
    if (dist_int < 1e-5)
        throw domain_error(
            "bessel_k: order too close to a real integer for the series "
            "route at small argument");
    const cplx ip = bessel_i_series(nu, x);
    const cplx im = bessel_i_series(-nu, x);
    return 0.5 * PI * (im - ip) / sin_pi_stable(nu);
}

inline cplx bessel_k_saddle(cplx nu, double x) {
    const cplx tstar = std::asinh(nu / x);
    // exponent along the shifted line, relative to its value at the saddle
    const cplx e0 = -x * std::cosh(tstar) + nu * tstar;
    auto logf = [&](double u) {
        const cplx t = tstar + u;
        return -x * std::cosh(t) + nu * t - e0;
    };
    double U = 1.0;
    while (U < 40.0 &&
           (logf(U).real() > -44.0 || logf(-U).real() > -44.0))
        U += 0.5;
    auto f = [&](double u) { return std::exp(logf(u)); };
    auto q = integrate_gk(f, -U, U, 1e-14);
    return 0.5 * std::exp(e0) * q.value;
}

} // namespace detail

inline cplx bessel_k(cplx nu, double x) {
    if (!(x > 0.0)) throw domain_error("bessel_k: argument must be > 0");
    if (nu.real() < 0.0) nu = -nu; // K_{-nu} = K_nu
    if (nu.imag() == 0.0) {
        if (nu.real() == 0.5) return std::sqrt(0.5 * PI / x) * std::exp(-x);
        return cplx(boost::math::cyl_bessel_k(nu.real(), x), 0.0);
    }
    const double b = std::abs(nu.imag());
    if (x >= 1.5 && b <= 0.88 * x) return detail::bessel_k_saddle(nu, x);
    return detail::bessel_k_series(nu, x);
}

// Monotone-in-x upper bound |K_nu(x)| <= K_{|Re nu|}(x), from
// |cosh(nu t)| <= cosh(Re nu * t) in the defining integral.  Used for
// certified truncation of Fourier series against K-Bessel decay.
inline double bessel_k_bound(cplx nu, double x) {
    const double a = std::abs(nu.real());
    try {
        return boost::math::cyl_bessel_k(a, x);
    } catch (...) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace pscat
