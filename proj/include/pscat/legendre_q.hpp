#pragma once

#include <cmath>
#include <vector>

#include "complex_util.hpp"
#include "quadrature.hpp"

namespace pscat {

// Legendre function of the second kind on the cut, Q_nu(cosh t), via
//
//   Q_nu(cosh t) = Int_t^oo e^{-(nu+1/2) u} (2 cosh u - 2 cosh t)^{-1/2} du
//
// with u = t + v^2 removing the inverse-square-root endpoint singularity:
// the same substitution that tames the diffractive-orbit kernels.
inline cplx legendre_q(cplx nu, double t, double tol = 1e-12) {
    if (!(t > 0.0)) throw domain_error("legendre_q: t must be > 0");
    if (nu.real() <= -1.0)
        throw domain_error("legendre_q: requires Re nu > -1");

    auto sinhc = [](double w) { return w == 0.0 ? 1.0 : std::sinh(w) / w; };
    const cplx mu = nu + 0.5;
    auto f = [&](double v) -> cplx {
        const double v2 = v * v;
        // 2 cosh(t+v^2) - 2 cosh t = 4 sinh(t + v^2/2) sinh(v^2/2)
        const double root =
            std::sqrt(2.0 * std::sinh(t + 0.5 * v2) * sinhc(0.5 * v2));
        return 2.0 * std::exp(-mu * (t + v2)) / root;
    };

    const double rate = nu.real() + 1.0;
    const double vmax = std::sqrt(46.0 / rate);
    // quadratic phase Im(mu) v^2: keep panels below ~2 pi of phase each
    const int osc_panels =
        1 + static_cast<int>(std::abs(nu.imag()) * vmax * vmax / TWO_PI);
    const int n_panels = std::min(4096, std::max(6, 2 * osc_panels));
    std::vector<double> breaks(n_panels + 1);
    for (int i = 0; i <= n_panels; ++i)
        breaks[i] = vmax * std::sqrt(double(i) / n_panels);
    // panels are phase-limited already; shallow adaptivity suffices and
    // avoids depth exhaustion on the oscillatory cancellation
    auto q = integrate_gk_panels(f, breaks, std::max(0.1 * tol, 1e-13), 7);
    return q.value;
}

} // namespace pscat
