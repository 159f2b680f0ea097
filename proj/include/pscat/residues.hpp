#pragma once

#include <random>
#include <string>
#include <vector>

#include "complex_util.hpp"
#include "gammafn.hpp"
#include "quadrature.hpp"
#include "testfunction.hpp"

// Contour machinery against planted synthetic spectra: a meromorphic
// stand-in for S_alpha(1/2 + i rho) with declared zeros and poles, an
// exact logarithmic derivative, and the box/line identities of the trace
// derivation evaluated independently by residue bookkeeping and by
// quadrature.

namespace pscat {

struct PlantedPoint {
    cplx location;
    int order = 1;
};

struct SyntheticSpectralFunction {
    std::vector<PlantedPoint> zeros;
    std::vector<PlantedPoint> poles;
    // optional entire factors: polynomial in rho (must be nonvanishing on
    // the contours, caller's responsibility) and/or 1 + m beta psi(1/2+i rho)
    std::vector<double> entire_poly;
    double psi_beta = 0.0;
    int psi_m = 0;

    cplx eval(cplx rho) const {
        cplx v(1.0, 0.0);
        for (const auto& z : zeros)
            v *= std::pow(rho - z.location, double(z.order));
        for (const auto& p : poles)
            v /= std::pow(rho - p.location, double(p.order));
        if (!entire_poly.empty()) {
            cplx q(0.0, 0.0);
            for (size_t i = entire_poly.size(); i-- > 0;)
                q = q * rho + entire_poly[i];
            v *= q;
        }
        if (psi_m != 0)
            v *= 1.0 + double(psi_m) * psi_beta *
                           psi_paper(0.5 + cplx(0.0, 1.0) * rho);
        return v;
    }

    // exact d/drho log S
    cplx log_deriv(cplx rho) const {
        cplx v = entire_log_deriv(rho);
        for (const auto& z : zeros) v += double(z.order) / (rho - z.location);
        for (const auto& p : poles) v -= double(p.order) / (rho - p.location);
        return v;
    }

    // theta(rho) = S(-rho)/S(rho) and its exact logarithmic derivative.
    // The +-rho contributions are combined pairwise so that poles/zeros
    // that cancel inside theta (e.g. at rho = 0 or +- pairs) cancel
    // exactly instead of meeting as 0/0 at a quadrature node.
    cplx theta(cplx rho) const { return eval(-rho) / eval(rho); }

    // a point at 0, or one half of a planted +- pair, cancels inside theta
    static bool theta_paired(const std::vector<PlantedPoint>& v,
                             const PlantedPoint& q) {
        if (mag(q.location) == 0.0) return true;
        for (const auto& o : v)
            if (o.location == -q.location && o.order == q.order) return true;
        return false;
    }

    cplx theta_log_deriv(cplx rho) const {
        auto paired = theta_paired;
        cplx v(0.0, 0.0);
        for (const auto& z : zeros)
            if (!paired(zeros, z))
                v -= double(z.order) * 2.0 * z.location /
                     (rho * rho - z.location * z.location);
        for (const auto& p : poles)
            if (!paired(poles, p))
                v += double(p.order) * 2.0 * p.location /
                     (rho * rho - p.location * p.location);
        v -= entire_log_deriv(-rho) + entire_log_deriv(rho);
        return v;
    }

    cplx entire_log_deriv(cplx rho) const {
        cplx v(0.0, 0.0);
        if (!entire_poly.empty()) {
            cplx q(0.0, 0.0), dq(0.0, 0.0);
            for (size_t i = entire_poly.size(); i-- > 0;) {
                q = q * rho + entire_poly[i];
                if (i > 0) dq = dq * rho + double(i) * entire_poly[i];
            }
            v += dq / q;
        }
        if (psi_m != 0) {
            const cplx I(0.0, 1.0);
            const cplx D = 1.0 + double(psi_m) * psi_beta *
                                     psi_paper(0.5 + I * rho);
            v += double(psi_m) * psi_beta * I * psi_paper(0.5 + I * rho, 1) / D;
        }
        return v;
    }
};

// (1/2 pi i) Int_{z0->z1} h(rho) L(rho) drho for an analytic logarithmic
// derivative L.
template <typename L>
cplx segment_log_derivative_integral(L&& ld, const TestFunction& h, cplx z0,
                                     cplx z1, double tol = 1e-11) {
    auto f = [&](cplx rho) { return h.h(rho) * ld(rho); };
    auto q = integrate_segment(f, z0, z1, tol, 13);
    return q.value / (TWO_PI * cplx(0.0, 1.0));
}

// (1/2 pi i) of the counterclockwise box integral of h * dlog F; corners
// given by lower-left and upper-right.
template <typename L>
cplx box_log_derivative_integral(L&& ld, const TestFunction& h, cplx lo,
                                 cplx hi, double tol = 1e-11) {
    const cplx lr{hi.real(), lo.imag()}, ul{lo.real(), hi.imag()};
    return segment_log_derivative_integral(ld, h, lo, lr, tol) +
           segment_log_derivative_integral(ld, h, lr, hi, tol) +
           segment_log_derivative_integral(ld, h, hi, ul, tol) +
           segment_log_derivative_integral(ld, h, ul, lo, tol);
}

struct ResidueReport {
    cplx integral{0.0, 0.0};
    cplx predicted{0.0, 0.0};
    double residual = 0.0;
    std::string contour;
};

inline bool inside_box(cplx z, cplx lo, cplx hi) {
    return z.real() > lo.real() && z.real() < hi.real() &&
           z.imag() > lo.imag() && z.imag() < hi.imag();
}

// Argument-principle check of a planted function on a box: quadrature of
// (1/2 pi i) Int h dlog F versus sum of order * h over enclosed zeros
// minus poles.
inline ResidueReport contour_log_derivative_integral(
    const SyntheticSpectralFunction& F, const TestFunction& h, cplx lo,
    cplx hi, double tol = 1e-11) {
    ResidueReport rep;
    rep.contour = "box";
    rep.integral = box_log_derivative_integral(
        [&](cplx rho) { return F.log_deriv(rho); }, h, lo, hi, tol);
    for (const auto& z : F.zeros)
        if (inside_box(z.location, lo, hi))
            rep.predicted += double(z.order) * h.h(z.location);
    for (const auto& p : F.poles)
        if (inside_box(p.location, lo, hi))
            rep.predicted -= double(p.order) * h.h(p.location);
    rep.residual = mag(rep.integral - rep.predicted);
    return rep;
}

// Integer winding number of F along the box (argument principle).
inline long winding_number(const SyntheticSpectralFunction& F, cplx lo,
                           cplx hi) {
    auto ld = [&](cplx rho) { return F.log_deriv(rho); };
    const cplx lr{hi.real(), lo.imag()}, ul{lo.real(), hi.imag()};
    cplx sum(0.0, 0.0);
    for (auto [a, b] : {std::pair<cplx, cplx>{lo, lr}, {lr, hi}, {hi, ul}, {ul, lo}}) {
        auto q = integrate_segment(ld, a, b, 1e-10, 13);
        sum += q.value;
    }
    const double w = (sum / (TWO_PI * cplx(0.0, 1.0))).real();
    return std::lround(w);
}

// The resonance identity: residues of h dlog theta over the lower box
// [0,-i sigma] x [-T, T] picked up from planted data versus the four line
// integrals.  Planted upper poles = unperturbed resonances r_j, planted
// upper zeros = perturbed resonances r^alpha_j, planted zeros on
// (0, -i sigma) = small perturbed eigenvalues.
inline ResidueReport verify_resonance_lemma(
    const SyntheticSpectralFunction& S, const TestFunction& h, double sigma,
    double T, double tol = 1e-11) {
    ResidueReport rep;
    rep.contour = "lower box [0,-i sigma] x [-T, T]";
    auto ld = [&](cplx rho) { return S.theta_log_deriv(rho); };
    const cplx bl{-T, -sigma}, br{T, -sigma}, tr{T, 0.0}, tl{-T, 0.0};
    rep.integral = segment_log_derivative_integral(ld, h, bl, br, tol) -
                   segment_log_derivative_integral(ld, h, tl, tr, tol) +
                   segment_log_derivative_integral(ld, h, tl, bl, tol) +
                   segment_log_derivative_integral(ld, h, br, tr, tol);
    // residue prediction from the planted data; +- paired features are
    // eigenvalues and cancel inside theta, so only unpaired ones count
    for (const auto& p : S.poles) {
        const cplx u = p.location;
        if (SyntheticSpectralFunction::theta_paired(S.poles, p)) continue;
        if (u.imag() > 0.0 && inside_box(-u, bl, tr))
            rep.predicted -= double(p.order) * h.h(u);
    }
    for (const auto& z : S.zeros) {
        const cplx v = z.location;
        if (SyntheticSpectralFunction::theta_paired(S.zeros, z)) continue;
        if (v.imag() > 0.0 && inside_box(-v, bl, tr))
            rep.predicted += double(z.order) * h.h(v);
        if (v.real() == 0.0 && v.imag() < 0.0 && v.imag() > -sigma)
            rep.predicted -= double(z.order) * h.h(v);
    }
    rep.residual = mag(rep.integral - rep.predicted);
    return rep;
}

// The truncated trace identity on a planted spectrum:
//   sum_pert h - sum_unpert h
//     = (1/2 pi i)[bottom + left-down + right-up] h dlog S
//       + (1/2) delta h(0) + (1/4 pi i) Int_{-T}^{T} h dlog theta
// with the conventions: real zeros/poles planted in +- pairs count once
// per pair; imaginary-axis unperturbed poles planted in +- pairs count
// once per pair; lower imaginary perturbed zeros count once; a simple
// pole at 0 contributes delta = 1; a double pole at 0 counts as the
// eigenvalue term h(0) instead.
inline ResidueReport verify_truncated_formula(
    const SyntheticSpectralFunction& S, const TestFunction& h, double sigma,
    double T, double tol = 1e-11) {
    ResidueReport rep;
    rep.contour = "three S-segments + real-line theta integral";
    auto lds = [&](cplx rho) { return S.log_deriv(rho); };
    auto ldt = [&](cplx rho) { return S.theta_log_deriv(rho); };
    const cplx bl{-T, -sigma}, br{T, -sigma}, tr{T, 0.0}, tl{-T, 0.0};

    const cplx rhs = segment_log_derivative_integral(lds, h, bl, br, tol) +
                     segment_log_derivative_integral(lds, h, tl, bl, tol) +
                     segment_log_derivative_integral(lds, h, br, tr, tol) +
                     0.5 * segment_log_derivative_integral(ldt, h, tl, tr, tol);

    // eigenvalue sums and the delta term from the planted data
    cplx lhs(0.0, 0.0);
    double delta_term = 0.0;
    for (const auto& z : S.zeros) {
        const cplx v = z.location;
        if (v.imag() == 0.0 && v.real() > 0.0 && v.real() < T)
            lhs += double(z.order) * h.h(v); // one per +- pair
        if (v.real() == 0.0 && v.imag() < 0.0 && v.imag() > -sigma)
            lhs += double(z.order) * h.h(v);
    }
    for (const auto& p : S.poles) {
        const cplx u = p.location;
        if (u.imag() == 0.0 && u.real() > 0.0 && u.real() < T)
            lhs -= double(p.order) * h.h(u);
        if (u.real() == 0.0 && u.imag() < 0.0 && u.imag() > -sigma)
            lhs -= double(p.order) * h.h(u); // one per +- pair
        if (mag(u) == 0.0) {
            if (p.order == 1)
                delta_term = 0.5 * h.h({0.0, 0.0}).real();
            else if (p.order == 2)
                lhs -= h.h({0.0, 0.0});
        }
    }
    rep.integral = rhs + delta_term;
    rep.predicted = lhs;
    rep.residual = mag(rep.integral - rep.predicted);
    return rep;
}

// Reproducible random planted configuration, keeping every feature away
// from the contours used by the verifiers.
inline SyntheticSpectralFunction random_synthetic(std::uint64_t seed,
                                                  double sigma, double T,
                                                  int n_res = 2,
                                                  int n_eig = 2,
                                                  int n_small = 1,
                                                  int pole0_order = 1) {
    std::mt19937_64 rng(seed);
    auto u = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    };
    SyntheticSpectralFunction S;
    const double margin = 0.12;
    for (int i = 0; i < n_res; ++i) {
        // unperturbed resonance: upper pole; perturbed: upper zero
        S.poles.push_back({{u(-0.8 * T, 0.8 * T), u(margin, sigma - margin)}, 1});
        S.zeros.push_back({{u(-0.8 * T, 0.8 * T), u(margin, sigma - margin)}, 1});
    }
    for (int i = 0; i < n_eig; ++i) {
        // one perturbed/unperturbed eigenvalue pair on the real line
        const double zp = u(margin, 0.8 * T), pp = u(margin, 0.8 * T);
        S.zeros.push_back({{zp, 0.0}, 1});
        S.zeros.push_back({{-zp, 0.0}, 1});
        S.poles.push_back({{pp, 0.0}, 1});
        S.poles.push_back({{-pp, 0.0}, 1});
    }
    for (int i = 0; i < n_small; ++i) {
        const double w = u(margin, sigma - margin);
        S.zeros.push_back({{0.0, -w}, 1});
    }
    // paired imaginary-axis unperturbed poles (a small unperturbed eigenvalue)
    const double wq = u(margin, sigma - margin);
    S.poles.push_back({{0.0, wq}, 1});
    S.poles.push_back({{0.0, -wq}, 1});
    if (pole0_order > 0) S.poles.push_back({{0.0, 0.0}, pole0_order});
    return S;
}

} // namespace pscat
