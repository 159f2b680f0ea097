#pragma once

#include <cmath>
#include <optional>

#include "complex_util.hpp"
#include "contours.hpp"
#include "gammafn.hpp"
#include "quadrature.hpp"
#include "testfunction.hpp"

// The integral transform g_{beta,k} and the smooth and scattering terms
// of the trace identity.  All line integrals run on Im rho = -nu, where
// nu clears the at-most-one zero of 1 + m beta psi(1/2 + i rho) on the
// negative imaginary axis.

namespace pscat {

struct NuChoice {
    double nu = 0.0;
    std::optional<double> zero_location; // v_beta, if the denominator vanishes
};

inline cplx transform_denominator(double beta, int m, cplx rho) {
    return 1.0 + double(m) * beta * psi_paper(0.5 + cplx(0.0, 1.0) * rho);
}

// Locate the unique zero -i v_beta of 1 + m beta psi(1/2 + i rho) on
// (0, -i sigma), if any; the contour is then placed margin below it.
inline NuChoice find_nu(double beta, int m, double sigma,
                        double margin = 0.05) {
    NuChoice out;
    if (beta == 0.0 || m == 0) return out;
    auto f = [&](double v) {
        return 1.0 + double(m) * beta * psi_paper(cplx(0.5 + v, 0.0)).real();
    };
    // psi is strictly increasing on (1/2, infty), so f is monotone and
    // a sign change brackets the only possible zero
    const double eps = 1e-9;
    double lo = eps, hi = sigma - eps;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) return out;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13) break;
    }
    out.zero_location = 0.5 * (lo + hi);
    out.nu = *out.zero_location + margin;
    return out;
}

// Sampled minimum of |1 + m beta psi| along the contour Im rho = -nu.
inline double denominator_margin(double beta, int m, double nu,
                                 double xmax = 40.0) {
    double mn = std::numeric_limits<double>::infinity();
    for (double x = 0.0; x <= xmax; x += 0.05)
        mn = std::min(mn, mag(transform_denominator(beta, m, {x, -nu})));
    return mn;
}

namespace detail {

// integral over the line Im rho = -nu of f(rho), truncated by Gaussian
// decay and panelized against the e^{-i rho t} oscillation
template <typename F>
cplx line_integral(F&& f, const TestFunction& h, double nu, double t,
                   double tol) {
    const double a = h.width();
    const double X = std::sqrt(std::max(4.0, nu * nu + a * a * 45.0));
    const int panels =
        std::max(8, int(X * std::max(1.0, std::abs(t)) / (0.5 * PI)));
    std::vector<double> breaks(2 * panels + 1);
    for (int i = 0; i <= 2 * panels; ++i)
        breaks[i] = -X + 2.0 * X * double(i) / (2.0 * panels);
    auto g = [&](double x) { return f(cplx(x, -nu)); };
    return integrate_gk_panels(g, breaks, tol, 9).value;
}

} // namespace detail

// g_{beta,k}(t) = ((-1)^k / (2 pi i k)) Int h'(rho) e^{-i rho t}
//                 (1 + m beta psi(1/2 + i rho))^{-k} drho,  Im rho = -nu.
inline cplx g_transform_c(double beta, int k, double t, const TestFunction& h,
                          const NuChoice& nu, int m, double tol = 1e-12) {
    if (k < 1) throw domain_error("g_transform: k must be >= 1");
    if (nu.zero_location && nu.nu <= *nu.zero_location)
        throw domain_error("g_transform: contour hits the denominator zero");
    auto f = [&](cplx rho) {
        const cplx D = transform_denominator(beta, m, rho);
        return h.hprime(rho) * std::exp(cplx(0.0, -t) * rho) /
               std::pow(D, double(k));
    };
    const cplx I = detail::line_integral(f, h, nu.nu, t, tol);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign / (TWO_PI * cplx(0.0, 1.0) * double(k)) * I;
}

inline double g_transform(double beta, int k, double t, const TestFunction& h,
                          const NuChoice& nu, int m, double tol = 1e-12) {
    return g_transform_c(beta, k, t, h, nu, m, tol).real();
}

// (1/2 pi) Int h(rho) m beta psi'(1/2+i rho) / (1 + m beta psi) drho.
inline double smooth_term(const TestFunction& h, double beta, int m,
                          const NuChoice& nu, double tol = 1e-12) {
    if (beta == 0.0) return 0.0;
    auto f = [&](cplx rho) {
        const cplx s = 0.5 + cplx(0.0, 1.0) * rho;
        return h.h(rho) * double(m) * beta * psi_paper(s, 1) /
               transform_denominator(beta, m, rho);
    };
    const cplx I = detail::line_integral(f, h, nu.nu, 0.0, tol);
    return (I / TWO_PI).real();
}

// Same smooth term through integration by parts,
// -(1/2 pi i) Int h'(rho) log(1 + m beta psi) drho, with branch tracking.
// Kept as an independent quadrature route.
inline double smooth_term_by_parts(const TestFunction& h, double beta, int m,
                                   const NuChoice& nu, double tol = 1e-11) {
    if (beta == 0.0) return 0.0;
    const double a = h.width();
    const double X = std::sqrt(std::max(4.0, nu.nu * nu.nu + a * a * 45.0));
    auto F = [&](cplx rho) { return transform_denominator(beta, m, rho); };
    auto gp = [&](cplx rho) { return h.hprime(rho); };
    const cplx I = integrate_g_log(gp, F, cplx(-X, -nu.nu), cplx(X, -nu.nu), tol);
    return (-I / (TWO_PI * cplx(0.0, 1.0))).real();
}

struct ScatteringTerm {
    double value = 0.0;
    double error_est = 0.0;
};

// (1/4 pi) Int h (theta_alpha'/theta_alpha)(1/2+i rho) drho over the real
// line equals, after integration by parts, (1/pi) Int_0^P h' arg S_alpha
// with a tail below the arg bound |arg| <= pi times the h' tail mass.
// arg_s(rho) must return the continuous argument of S_alpha(1/2 + i rho).
template <typename ArgS>
ScatteringTerm scattering_term_generic(const TestFunction& h, ArgS&& arg_s,
                                       double rho_max,
                                       const std::vector<double>& breaks,
                                       double tol = 1e-9) {
    auto f = [&](double rho) { return h.hprime(rho).real() * arg_s(rho); };
    std::vector<double> bs{1e-7};
    for (double b : breaks)
        if (b > 1e-6 && b < rho_max) bs.push_back(b);
    bs.push_back(rho_max);
    std::sort(bs.begin(), bs.end());
    auto q = integrate_gk_panels(f, bs, tol, 12);
    ScatteringTerm out;
    out.value = q.value.real() / PI;
    out.error_est = q.error / PI + mag(h.h({rho_max, 0.0}));
    return out;
}

} // namespace pscat
