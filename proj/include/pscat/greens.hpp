#pragma once

#include <cmath>
#include <algorithm>
#include <vector>

#include "complex_util.hpp"
#include "eisenstein.hpp"
#include "gammafn.hpp"
#include "halfplane.hpp"
#include "legendre_q.hpp"
#include "orbit.hpp"
#include "spline.hpp"

// Free and automorphic Green's functions, the spectral function
// S_alpha(s) in its orbit-sum region Re s > 1, the renormalized coupling
// beta(alpha) with its constant c0, and the coupling <-> extension-phase
// map of the self-adjoint realization.

namespace pscat {

// Root of t(1-t) = i with Re t > 1/2 (deficiency parameter).
inline cplx t_parameter() { return 0.5 * (1.0 + std::sqrt(cplx(1.0, -4.0))); }

// Free Green's function on the halfplane as a point-pair invariant:
// G_s(l) = -(1/2 pi) Q_{s-1}(cosh l).
inline cplx free_green(cplx s, double l) {
    if (!(l > 0.0)) throw domain_error("free_green: requires l > 0");
    if (!(s.real() > 0.0)) throw domain_error("free_green: requires Re s > 0");
    return -legendre_q(s - 1.0, l) / TWO_PI;
}

struct GreenSum {
    cplx value{0.0, 0.0};
    double tail_est = 0.0; // estimated, not certified (counting fluctuation)
};

namespace detail {

// Scale of the fluctuation of the element count around the area main term
// 6 cosh l - 6, measured against e^{2l/3} on the table itself.
inline double counting_fluctuation(const OrbitTable& t) {
    double c = 0.05;
    const size_t n = t.entries.size();
    for (size_t i = n / 4; i < n; i += std::max<size_t>(1, n / 64)) {
        const double l = t.entries[i].length;
        const double dev =
            std::abs(double(i + 1) - (6.0 * std::cosh(l) - 6.0));
        c = std::max(c, dev / std::exp(2.0 * l / 3.0));
    }
    return c;
}

// int_X^oo Q_nu(x) dx = (Q_{nu-1}(X) - X Q_nu(X)) / (nu + 1), Re nu > 0,
// from the Legendre equation and (x^2-1) Q_nu' = nu (x Q_nu - Q_{nu-1}).
inline cplx legendre_q_integral(cplx nu, double R) {
    const double X = std::cosh(R);
    return (legendre_q(nu - 1.0, R) - X * legendre_q(nu, R)) / (nu + 1.0);
}

// Per-element modulus bound (1/2pi) |Q_{s-1}(cosh l)| <=
// C_kappa e^{-(kappa+1/2) l}, kappa = Re s - 1/2, valid for l >= 1/4.
inline double green_bound_coeff(double kappa) {
    return (1.0 / TWO_PI) * std::sqrt(PI / kappa) * 1.1;
}

} // namespace detail

namespace detail {

// sum of Q_{s-1}(cosh l) over a list of lengths, tabulating on an l-grid
// when the list is long (Q is smooth in l, oscillation rate ~ |Im s|)
inline cplx q_sum_over_lengths(cplx s, const std::vector<double>& ls) {
    if (ls.empty()) return {0.0, 0.0};
    if (ls.size() <= 3000) {
        cplx sum(0.0, 0.0);
        for (double l : ls) sum += legendre_q(s - 1.0, l);
        return sum;
    }
    const auto [mn, mx] = std::minmax_element(ls.begin(), ls.end());
    const double l0 = *mn * 0.999, l1 = *mx * 1.001;
    const int nodes = std::min(
        20000,
        std::max(700, int((l1 - l0) * (10.0 * std::abs(s.imag()) + 40.0))));
    std::vector<double> lx(nodes);
    std::vector<cplx> ly(nodes);
    for (int i = 0; i < nodes; ++i) {
        lx[i] = l0 + (l1 - l0) * double(i) / double(nodes - 1);
        ly[i] = legendre_q(s - 1.0, lx[i]);
    }
    const CubicSpline sp(std::move(lx), std::move(ly));
    cplx sum(0.0, 0.0);
    for (double l : ls) sum += sp(l);
    return sum;
}

inline double fluctuation_tail_estimate(double cfl, double kappa, double R) {
    const double Ck = green_bound_coeff(kappa);
    const double decay = kappa + 0.5 - 2.0 / 3.0;
    return cfl * Ck * std::exp(-decay * R) * (1.0 + (kappa + 0.5) / decay) *
           3.0;
}

} // namespace detail

// Sum of the free Green's function over the nontrivial orbit of the
// table's base point:  sum_{gamma not in I} G_s(z0, gamma z0).
//
// The enumerated part is corrected by the integral of G against the area
// main term 6 sinh l dl of the element count beyond the table radius; the
// reported tail is an estimate driven by the measured counting
// fluctuation (~ e^{2l/3}), which is what limits plain truncation.
inline GreenSum orbit_green_sum(cplx s, const OrbitTable& table) {
    if (!(s.real() > 1.0))
        throw domain_error("orbit_green_sum: requires Re s > 1");
    GreenSum out;
    const double R = table.radius;
    std::vector<double> ls;
    ls.reserve(table.entries.size());
    for (const auto& e : table.entries) ls.push_back(e.length);
    out.value = -detail::q_sum_over_lengths(s, ls) / TWO_PI;

    // area main term for the un-enumerated elements
    out.value -= (6.0 / TWO_PI) * detail::legendre_q_integral(s - 1.0, R);
    out.tail_est = detail::fluctuation_tail_estimate(
        detail::counting_fluctuation(table), s.real() - 0.5, R);
    return out;
}

// Automorphic Green's function G^Gamma_s(z, w) from the orbit table of w.
// Only translates with d(z, gamma w) <= R - d(z, w) are complete in the
// table, so the sum is clipped there and the area main term integrates
// from the clip radius.  z must not lie in the orbit of w.
inline GreenSum automorphic_green(cplx s, const Point& z, const Point& w,
                                  const OrbitTable& table) {
    if (!(s.real() > 1.0))
        throw domain_error("automorphic_green: requires Re s > 1");
    const double shift = hyp_distance(z, w);
    const double Lclip = table.radius - shift;
    if (Lclip < 1.0)
        throw tolerance_error(
            "automorphic_green: table radius too small for this z", 1.0);
    std::vector<double> ls;
    ls.reserve(table.entries.size() + table.stabilizer.size());
    auto add = [&](const GroupElement& g) {
        const double l = hyp_distance(z, mobius_apply(g, w));
        if (l < 1e-9)
            throw domain_error("automorphic_green: z lies in the orbit of w");
        if (l <= Lclip) ls.push_back(l);
    };
    for (const auto& g : table.stabilizer) add(g);
    for (const auto& e : table.entries) add(e.g);

    GreenSum out;
    out.value = -detail::q_sum_over_lengths(s, ls) / TWO_PI;
    out.value -= (6.0 / TWO_PI) * detail::legendre_q_integral(s - 1.0, Lclip);
    out.tail_est = detail::fluctuation_tail_estimate(
        detail::counting_fluctuation(table) + 1.0, s.real() - 0.5, Lclip);
    return out;
}

struct ScattererConfig {
    Point z0{0.0, 2.0}; // reduced representative
    double alpha = 1.0; // coupling constant, nonzero (ignored if alpha_inf)
    bool alpha_inf = false;
    int m = 1;      // |stabilizer of z0|
    cplx t{0.0, 0.0}; // deficiency parameter
};

// c0 = m Re psi(t) + Re sum_{gamma not in I} G_t(z0, gamma z0).
inline double c0_const(const ScattererConfig& cfg, const OrbitTable& table) {
    const GreenSum g = orbit_green_sum(cfg.t, table);
    return double(cfg.m) * psi_paper(cfg.t).real() + g.value.real();
}

inline double beta_of_alpha(double alpha, double c0, bool alpha_inf = false) {
    if (alpha_inf) return -1.0 / c0;
    if (alpha == 0.0) throw domain_error("beta_of_alpha: alpha must be nonzero");
    const double den = 1.0 - c0 * alpha;
    if (std::abs(den) < 1e-14)
        throw domain_error("beta_of_alpha: singular coupling alpha = 1/c0");
    return alpha / den;
}

// Extension-phase parameter phi in (-pi, pi):
// cot(phi/2) = -alpha * Im[m psi(t) + sum G_t].
inline double coupling_phase(const ScattererConfig& cfg,
                             const OrbitTable& table) {
    if (cfg.alpha_inf) return 0.0;
    const cplx reg = double(cfg.m) * psi_paper(cfg.t) +
                     orbit_green_sum(cfg.t, table).value;
    const double q = -cfg.alpha * reg.imag();
    if (q == 0.0) return PI;
    return 2.0 * std::atan(1.0 / q);
}

struct SpectralFunctionHandle {
    ScattererConfig config;
    const OrbitTable* table = nullptr;
    double beta = 0.0;
    double c0 = 0.0;
};

inline SpectralFunctionHandle make_handle(const Point& z0_in, double alpha,
                                          const OrbitTable& table,
                                          bool alpha_inf = false) {
    SpectralFunctionHandle h;
    const Point z0 = reduce_fund_domain(z0_in).point;
    if (hyp_distance(z0, table.z0) > 1e-10)
        throw domain_error("make_handle: table was built for a different z0");
    h.config.z0 = z0;
    h.config.alpha = alpha;
    h.config.alpha_inf = alpha_inf;
    h.config.m = table.stabilizer_order;
    h.config.t = t_parameter();
    h.table = &table;
    h.c0 = c0_const(h.config, table);
    h.beta = beta_of_alpha(alpha, h.c0, alpha_inf);
    return h;
}

// S_alpha(s) = 1/beta + m psi(s) + sum_{gamma not in I} G_s(z0, gamma z0),
// valid for Re s > 1.
inline GreenSum s_alpha_orbit(const SpectralFunctionHandle& h, cplx s) {
    const GreenSum g = orbit_green_sum(s, *h.table);
    return {1.0 / h.beta + double(h.config.m) * psi_paper(s) + g.value,
            g.tail_est};
}

// S_alpha(1-s) for Re s > 1, through the functional equation
// S_alpha(1-s) = S_alpha(s) - E(z0,s) E(z0,1-s) / (1-2s).
inline GreenSum s_alpha_reflected(const SpectralFunctionHandle& h, cplx s,
                                  double eis_tol = 1e-12) {
    const GreenSum direct = s_alpha_orbit(h, s);
    const cplx e1 = eisenstein_eval(h.config.z0, s, eis_tol).value;
    const cplx e2 = eisenstein_eval(h.config.z0, 1.0 - s, eis_tol).value;
    return {direct.value - e1 * e2 / (1.0 - 2.0 * s),
            direct.tail_est + 2.0 * eis_tol * (mag(e1) + mag(e2))};
}

} // namespace pscat
