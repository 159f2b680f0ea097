#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <functional>
#include <vector>

#include "complex_util.hpp"

namespace pscat {

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0; // accumulated error estimate (absolute)
};

// Adaptive Gauss-Kronrod 7/15 on a real interval, complex-valued integrand.
template <typename F>
QuadResult integrate_gk(F&& f, double a, double b, double tol = 1e-12,
                        unsigned max_depth = 14) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    cplx v = gauss_kronrod<double, 15>::integrate(std::forward<F>(f), a, b,
                                                  max_depth, tol, &err);
    return {v, err};
}

// Same, but the caller supplies interior break points (known kinks, steep
// features, poles nearby); each panel is integrated adaptively.
template <typename F>
QuadResult integrate_gk_panels(F&& f, const std::vector<double>& breaks,
                               double tol = 1e-12, unsigned max_depth = 14) {
    QuadResult total;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        auto r = integrate_gk(f, breaks[i], breaks[i + 1], tol, max_depth);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

// Directed segment in the complex plane.
template <typename F>
QuadResult integrate_segment(F&& f, cplx z0, cplx z1, double tol = 1e-12,
                             unsigned max_depth = 14) {
    const cplx dz = z1 - z0;
    auto g = [&](double t) { return f(z0 + t * dz); };
    auto r = integrate_gk(g, 0.0, 1.0, tol, max_depth);
    return {dz * r.value, std::abs(dz) * r.error};
}

// Fixed-order Gauss-Legendre nodes/weights on [a, b].
inline void gauss_legendre_nodes(int order, double a, double b,
                                 std::vector<double>& x,
                                 std::vector<double>& w) {
    using G16 = boost::math::quadrature::gauss<double, 16>;
    using G32 = boost::math::quadrature::gauss<double, 32>;
    x.clear();
    w.clear();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    auto emit = [&](auto const& absc, auto const& wts) {
        const size_t n = absc.size();
        // boost stores the nonnegative half of the symmetric rule
        for (size_t i = 0; i < n; ++i) {
            double t = absc[i], wt = wts[i];
            if (t == 0.0) {
                x.push_back(c);
                w.push_back(wt * h);
            } else {
                x.push_back(c + h * t);
                w.push_back(wt * h);
                x.push_back(c - h * t);
                w.push_back(wt * h);
            }
        }
    };
    if (order <= 16)
        emit(G16::abscissa(), G16::weights());
    else
        emit(G32::abscissa(), G32::weights());
}

} // namespace pscat
