#pragma once

#include <functional>
#include <vector>

#include "complex_util.hpp"
#include "quadrature.hpp"

// Branch-tracked evaluation of integrals of g(rho) * log F(rho) along a
// straight segment, for nonvanishing F.  The branch is fixed by
// accumulating argument increments between adjacent sample nodes, with
// refinement whenever a step turns by more than pi/2; each refined
// subsegment is then integrated with the branch pinned at its start.

namespace pscat {

struct TrackedLog {
    std::vector<double> param;  // partition of [0,1]
    std::vector<double> arg;    // continuous argument of F at the nodes
    double total_turn = 0.0;    // arg(end) - arg(start)
};

template <typename F>
TrackedLog track_argument(F&& f, cplx z0, cplx z1, int initial = 64,
                          int max_nodes = 200000) {
    TrackedLog out;
    std::vector<double> ts(initial + 1);
    for (int i = 0; i <= initial; ++i) ts[i] = double(i) / initial;
    std::vector<cplx> vals(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) vals[i] = f(z0 + ts[i] * (z1 - z0));

    // refine until each step's principal-argument increment is < pi/2
    for (size_t i = 0; i + 1 < ts.size();) {
        const cplx ratio = vals[i + 1] / vals[i];
        if (!finite(ratio) || mag(ratio) == 0.0)
            throw domain_error("track_argument: F vanishes on the contour");
        if (std::abs(std::arg(ratio)) > 0.5 * PI) {
            if (std::ssize(ts) > max_nodes)
                throw tolerance_error(
                    "track_argument: refinement exhausted (zero/pole near "
                    "the contour?)",
                    std::abs(std::arg(ratio)));
            const double tm = 0.5 * (ts[i] + ts[i + 1]);
            ts.insert(ts.begin() + i + 1, tm);
            vals.insert(vals.begin() + i + 1, f(z0 + tm * (z1 - z0)));
            continue;
        }
        ++i;
    }
    out.param = std::move(ts);
    out.arg.resize(out.param.size());
    out.arg[0] = std::arg(vals[0]);
    for (size_t i = 1; i < out.param.size(); ++i)
        out.arg[i] = out.arg[i - 1] + std::arg(vals[i] / vals[i - 1]);
    out.total_turn = out.arg.back() - out.arg.front();
    return out;
}

// Int_{z0}^{z1} g(rho) log F(rho) drho with the continuous branch whose
// argument at z0 is the principal one.
template <typename G, typename F>
cplx integrate_g_log(G&& g, F&& f, cplx z0, cplx z1, double tol = 1e-11) {
    const TrackedLog tr = track_argument(f, z0, z1);
    const cplx dz = z1 - z0;
    cplx total(0.0, 0.0);
    for (size_t i = 0; i + 1 < tr.param.size(); ++i) {
        // within this panel the argument moves by < pi/2 from theta0, so
        // log F = log(F e^{-i theta0}) + i theta0 with the principal log
        const double th0 = tr.arg[i];
        const cplx rot = std::exp(cplx(0.0, -th0));
        auto integrand = [&](double t) {
            const cplx rho = z0 + t * dz;
            return g(rho) * (std::log(f(rho) * rot) + cplx(0.0, th0));
        };
        auto q = integrate_gk(integrand, tr.param[i], tr.param[i + 1],
                              tol / tr.param.size(), 10);
        total += q.value;
    }
    return dz * total;
}

} // namespace pscat
