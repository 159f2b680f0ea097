#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bessel_k.hpp"
#include "eisenstein.hpp"
#include "greens.hpp"
#include "spline.hpp"

// Ingestion of tabulated Maass cusp-form data and everything that lives
// on or near the critical line: the spectral-expansion mode of S_alpha,
// theta_alpha / phi_alpha, the perturbed Eisenstein series, and the
// eigenvalue root scans.

namespace pscat {

inline constexpr const char* kMaassFormat = "pscat-maass-v1";

struct MaassForm {
    double r = 0.0;            // spectral parameter, lambda = 1/4 + r^2
    bool even = true;          // parity of the Fourier expansion
    std::vector<double> coeffs; // Hecke-normalized a_1..a_N (a_1 = 1)
    double l2_norm = 0.0;      // L^2(F) norm of the a_1-normalized form
    double r_err = 0.0;        // generator estimates, not certificates
    double coeff_err = 0.0;
    double hecke_resid = 0.0;
};

struct MaassDataset {
    std::vector<MaassForm> forms; // strictly increasing r
    double volume = PI / 3.0;     // covolume (residual constant form)
    std::string source;
    std::string digest; // content hash echoed into reports
    double r_max() const { return forms.empty() ? 0.0 : forms.back().r; }
};

namespace detail {

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace detail

inline nlohmann::json maass_dataset_to_json(const MaassDataset& ds) {
    nlohmann::json j;
    j["format"] = kMaassFormat;
    j["group"] = "PSL(2,Z)";
    j["volume"] = ds.volume;
    j["source"] = ds.source;
    auto& fs = j["forms"] = nlohmann::json::array();
    for (const auto& f : ds.forms) {
        nlohmann::json e;
        e["r"] = f.r;
        e["parity"] = f.even ? "even" : "odd";
        e["normalization"] = "hecke-a1";
        e["coeffs"] = f.coeffs;
        e["l2_norm"] = f.l2_norm;
        e["r_err"] = f.r_err;
        e["coeff_err"] = f.coeff_err;
        e["hecke_resid"] = f.hecke_resid;
        fs.push_back(std::move(e));
    }
    return j;
}

inline void save_maass_dataset(const MaassDataset& ds,
                               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_maass_dataset: cannot open " + path);
    out << maass_dataset_to_json(ds).dump(1, '\t') << "\n";
}

inline MaassDataset load_maass_dataset(const std::string& path,
                                       size_t min_coeffs = 8) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_maass_dataset: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("load_maass_dataset: parse: ") +
                                 e.what());
    }
    if (j.value("format", "") != kMaassFormat)
        throw std::runtime_error("load_maass_dataset: unknown format version");
    MaassDataset ds;
    if (!j.contains("volume"))
        throw std::runtime_error(
            "load_maass_dataset: missing residual-form volume");
    ds.volume = j["volume"].get<double>();
    ds.source = j.value("source", "");
    double prev = 0.0;
    for (const auto& e : j["forms"]) {
        MaassForm f;
        f.r = e["r"].get<double>();
        const std::string par = e["parity"].get<std::string>();
        if (par != "even" && par != "odd")
            throw std::runtime_error("load_maass_dataset: bad parity tag");
        f.even = par == "even";
        if (e.value("normalization", "") != "hecke-a1")
            throw std::runtime_error(
                "load_maass_dataset: unknown normalization tag");
        f.coeffs = e["coeffs"].get<std::vector<double>>();
        f.l2_norm = e["l2_norm"].get<double>();
        f.r_err = e.value("r_err", 0.0);
        f.coeff_err = e.value("coeff_err", 0.0);
        f.hecke_resid = e.value("hecke_resid", 0.0);
        if (!(f.r > 0.0) || !(f.r > prev))
            throw std::runtime_error(
                "load_maass_dataset: eigenvalues must be strictly increasing");
        if (f.coeffs.size() < min_coeffs)
            throw std::runtime_error("load_maass_dataset: too few coefficients");
        if (std::abs(f.coeffs.at(0) - 1.0) > 1e-12)
            throw std::runtime_error(
                "load_maass_dataset: hecke-a1 requires a_1 = 1");
        if (!(f.l2_norm > 0.0))
            throw std::runtime_error("load_maass_dataset: missing L2 norm");
        prev = f.r;
        ds.forms.push_back(std::move(f));
    }
    ds.digest = detail::fnv1a_hex(maass_dataset_to_json(ds).dump());
    return ds;
}

// L^2-normalized value of a cusp form at z (reduced internally).
// Truncation error is bounded through |K_{ir}(x)| <= K_0(x).
inline double maass_value_at(const MaassForm& f, const Point& z_in,
                             double tol = 1e-10) {
    const Point z = reduce_fund_domain(z_in).point;
    const double y = z.y, x = z.x;
    double amax = 1.0;
    for (double a : f.coeffs) amax = std::max(amax, std::abs(a));
    double sum = 0.0;
    size_t n = 1;
    for (; n <= f.coeffs.size(); ++n) {
        const double arg = TWO_PI * double(n);
        const double kb = bessel_k(cplx(0.0, f.r), arg * y).real();
        sum += f.coeffs[n - 1] * kb *
               (f.even ? std::cos(arg * x) : std::sin(arg * x));
        if (bessel_k_bound({0.0, 0.0}, arg * y) * amax * double(n + 1) < 0.25 * tol)
            break;
    }
    if (n > f.coeffs.size()) {
        const double rem =
            bessel_k_bound({0.0, 0.0}, TWO_PI * double(n) * y) * amax *
            double(n + 1) * 4.0;
        if (rem > tol)
            throw tolerance_error("maass_value_at: not enough coefficients",
                                  rem);
    }
    return std::sqrt(y) * sum / f.l2_norm;
}

struct CriticalValue {
    cplx value{0.0, 0.0};
    double discrete_truncation_error = 0.0;   // estimates, not certificates
    double continuous_truncation_error = 0.0;
};

// Evaluator for the regularized spectral expansion of S_alpha near the
// critical line:
//   S_alpha(1/2 + i rho) = 1/alpha
//     + sum_j |phi_j(z0)|^2 [ 1/(rho^2 - rho_j^2) + lambda_j/(1+lambda_j^2) ]
//     + (1/2 pi) Int_0^oo |E(z0, 1/2+ir)|^2
//                 [ 1/(rho^2 - r^2) + lambda_r/(1+lambda_r^2) ] dr,
// the subtraction being Re G at the deficiency parameter (lambda -> i).
// |E|^2 is tabulated once on an r-grid and splined.
class CriticalEvaluator {
  public:
    CriticalEvaluator(const SpectralFunctionHandle& h, const MaassDataset& ds,
                      double r_cut = 60.0, double grid_step = 0.02)
        : alpha_(h.config.alpha_inf
                     ? std::numeric_limits<double>::infinity()
                     : h.config.alpha),
          z0_(h.config.z0), ds_(&ds), r_cut_(r_cut) {
        // residual constant form
        weights_.push_back(1.0 / ds.volume);
        rho2_.push_back(-0.25);
        lambda_.push_back(0.0);
        rj_.push_back(0.0);
        for (const auto& f : ds.forms) {
            const double v = maass_value_at(f, z0_);
            weights_.push_back(v * v);
            rho2_.push_back(f.r * f.r);
            lambda_.push_back(0.25 + f.r * f.r);
            rj_.push_back(f.r);
        }
        // |E(z0, 1/2 + i r)|^2 master grid
        const int n = static_cast<int>(r_cut / grid_step) + 1;
        std::vector<double> xs(n);
        std::vector<cplx> ys(n);
        xs[0] = 0.0;
        ys[0] = 0.0; // E(z, 1/2) vanishes identically for the modular group
        for (int i = 1; i < n; ++i) {
            xs[i] = i * grid_step;
            const cplx e =
                eisenstein_eval(z0_, {0.5, xs[i]}, 1e-10).value;
            ys[i] = std::norm(e);
        }
        e2_ = CubicSpline(std::move(xs), std::move(ys));
    }

    double e2(double r) const {
        return r <= 0.0 ? e2_(-r).real() : e2_(r).real();
    }

    const std::vector<double>& pole_locations() const { return rj_; }
    double weight(size_t j) const { return weights_[j]; }

    // generic evaluation away from the real rho poles
    CriticalValue eval(cplx rho, double pole_margin = 0.05) const {
        CriticalValue out;
        cplx v = alpha_inv();
        for (size_t j = 0; j < weights_.size(); ++j) {
            const cplx den = rho * rho - rho2_[j];
            if (mag(den) < pole_margin * pole_margin * 0.5 &&
                weights_[j] > 1e-14)
                throw pole_error(
                    "s_alpha_critical: rho too close to a dataset pole");
            v += weights_[j] *
                 (1.0 / den + lambda_[j] / (1.0 + lambda_[j] * lambda_[j]));
        }
        // continuous part; integrand has a near-pole at r ~ |Re rho|
        const double rr = std::abs(rho.real());
        std::vector<double> breaks{0.0};
        for (double b : {rr - 0.5, rr - 0.05, rr + 0.05, rr + 0.5})
            if (b > 0.0 && b < r_cut_) breaks.push_back(b);
        breaks.push_back(r_cut_);
        std::sort(breaks.begin(), breaks.end());
        auto f = [&](double r) {
            const double lam = 0.25 + r * r;
            return e2(r) * (1.0 / (rho * rho - r * r) +
                            lam / (1.0 + lam * lam));
        };
        auto q = integrate_gk_panels(f, breaks, 1e-10, 13);
        v += q.value / TWO_PI;
        out.value = v;
        out.discrete_truncation_error = discrete_tail(rho);
        out.continuous_truncation_error = continuous_tail(rho) + q.error;
        return out;
    }

    // on the critical line: principal value for the real part, the
    // residue term i |E|^2/(4 rho) supplied analytically
    CriticalValue eval_real(double rho) const {
        if (rho < 0.0) {
            CriticalValue v = eval_real(-rho);
            v.value = std::conj(v.value);
            return v;
        }
        if (rho == 0.0) throw pole_error("s_alpha_critical: rho = 0");
        CriticalValue out;
        double v = alpha_inv().real();
        for (size_t j = 0; j < weights_.size(); ++j)
            v += weights_[j] * (1.0 / (rho * rho - rho2_[j]) +
                                lambda_[j] / (1.0 + lambda_[j] * lambda_[j]));
        // regular part of the continuous integral
        auto reg = [&](double r) {
            const double lam = 0.25 + r * r;
            return e2(r) * lam / (1.0 + lam * lam);
        };
        auto q1 = integrate_gk_panels(
            reg, {0.0, rho, std::min(2.0 * rho, r_cut_), r_cut_}, 1e-10, 13);
        // principal value of e2(r)/(rho^2 - r^2): subtract the pole on a
        // window symmetric about rho, where the PV of the bare kernel is
        // explicit, and integrate the smooth remainder
        const double L = std::min(2.0 * rho, r_cut_);
        const double f0 = e2(rho);
        auto sub = [&](double r) {
            const double d = rho * rho - r * r;
            const double fr = e2(r);
            if (std::abs(rho - r) < 1e-7) {
                // removable: derivative quotient
                const double d1 = (e2(r + 1e-5) - e2(r - 1e-5)) / 2e-5;
                return -d1 / (r + rho);
            }
            return (fr - f0) / d;
        };
        auto q2 = integrate_gk_panels(sub, {0.0, 0.5 * rho, rho, L}, 1e-10, 13);
        double pv = q2.value.real() +
                    f0 * std::log((rho + L) / std::abs(rho - L)) / (2.0 * rho) -
                    f0 * 0.0;
        auto far = [&](double r) { return e2(r) / (rho * rho - r * r); };
        cplx q3(0.0, 0.0);
        if (L < r_cut_) {
            auto q = integrate_gk_panels(far, {L, std::min(L + 3.0, r_cut_), r_cut_},
                                         1e-10, 13);
            q3 = q.value;
        }
        v += (q1.value.real() + pv + q3.real()) / TWO_PI;
        out.value = cplx(v, e2(rho) / (4.0 * rho));
        out.discrete_truncation_error = discrete_tail({rho, 0.0});
        out.continuous_truncation_error =
            continuous_tail({rho, 0.0}) + q1.error + q2.error;
        return out;
    }

    // continuous argument of S_alpha(1/2 + i rho) on the line; the image
    // stays in the closed upper half plane, so atan2 in [0, pi] is the
    // continuous branch for rho > 0
    double arg_S(double rho) const {
        const cplx v = eval_real(rho).value;
        return std::atan2(v.imag(), v.real());
    }

  private:
    cplx alpha_inv() const {
        return std::isinf(alpha_) ? cplx(0.0, 0.0) : cplx(1.0 / alpha_, 0.0);
    }
    double discrete_tail(cplx rho) const {
        const double R = ds_->r_max();
        if (R <= 0.0) return 1.0;
        return (0.25 + std::norm(rho)) / (4.0 * PI * R * R) * 4.0;
    }
    double continuous_tail(cplx rho) const {
        // |E|^2 has mean size ~ r; the regularized bracket decays ~ r^{-4}
        return (0.25 + std::norm(rho)) / (2.0 * r_cut_ * r_cut_) * 2.0;
    }

    double alpha_;
    Point z0_;
    const MaassDataset* ds_;
    double r_cut_;
    std::vector<double> weights_, rho2_, lambda_, rj_;
    CubicSpline e2_;
};

inline CriticalValue s_alpha_critical(const SpectralFunctionHandle& h,
                                      cplx rho, const MaassDataset& ds,
                                      double r_cut = 60.0) {
    const CriticalEvaluator ev(h, ds, r_cut);
    if (rho.imag() == 0.0) return ev.eval_real(rho.real());
    return ev.eval(rho);
}

// theta_alpha(s) = S_alpha(1-s)/S_alpha(s) and
// phi_alpha(s) = phi(s) theta_alpha(s), dispatched over the validity
// regions of the evaluation modes.
struct ThetaPhi {
    cplx theta;
    cplx phi_alpha;
};

inline ThetaPhi theta_phi_alpha(const SpectralFunctionHandle& h, cplx s,
                                const CriticalEvaluator& ev) {
    cplx S_s, S_1ms;
    if (s.real() > 1.0) {
        S_s = s_alpha_orbit(h, s).value;
        S_1ms = s_alpha_reflected(h, s).value;
    } else if (s.real() < 0.0) {
        S_s = s_alpha_reflected(h, 1.0 - s).value;
        S_1ms = s_alpha_orbit(h, 1.0 - s).value;
    } else {
        const cplx I(0.0, 1.0);
        const cplx rho = -I * (s - 0.5);
        S_s = (rho.imag() == 0.0) ? ev.eval_real(rho.real()).value
                                  : ev.eval(rho).value;
        const cplx rho2 = -I * (0.5 - s);
        S_1ms = (rho2.imag() == 0.0) ? ev.eval_real(rho2.real()).value
                                     : ev.eval(rho2).value;
    }
    if (mag(S_s) < 1e-12)
        throw domain_error("theta_phi_alpha: S_alpha(s) vanishes");
    ThetaPhi out;
    out.theta = S_1ms / S_s;
    out.phi_alpha = phi_scatter(s) * out.theta;
    return out;
}

// E^alpha(z, s) = E(z, s) - E(z0, s)/S_alpha(s) * G_s(z, z0), Re s > 1.
inline cplx perturbed_eisenstein(const SpectralFunctionHandle& h,
                                 const Point& z, cplx s,
                                 double eis_tol = 1e-12) {
    if (!(s.real() > 1.0))
        throw domain_error("perturbed_eisenstein: requires Re s > 1");
    const cplx S = s_alpha_orbit(h, s).value;
    if (mag(S) < 1e-12)
        throw domain_error("perturbed_eisenstein: S_alpha(s) vanishes");
    const cplx e_z = eisenstein_eval(z, s, eis_tol).value;
    const cplx e_z0 = eisenstein_eval(h.config.z0, s, eis_tol).value;
    const cplx g = automorphic_green(s, z, h.config.z0, *h.table).value;
    return e_z - e_z0 / S * g;
}

struct EigenvalueRoot {
    double v = 0.0;          // S_alpha(1/2 + v) = 0
    double bracket_lo = 0.0; // verified sign-change bracket
    double bracket_hi = 0.0;
    double residual = 0.0;   // |S_alpha| at the root
};

// Real zeros of S_alpha(1/2 + v) on a subinterval of (1/2, oo), located
// by sign-change bracketing on a grid and refined by bisection.  The
// interval must stay inside the orbit-sum region v > 1/2.
inline std::vector<EigenvalueRoot> find_small_eigenvalues(
    const SpectralFunctionHandle& h, double v_lo, double v_hi, int grid = 200,
    double target = 1e-10) {
    if (!(v_lo > 0.5))
        throw domain_error("find_small_eigenvalues: range must lie in (1/2, oo)");
    auto f = [&](double v) {
        return s_alpha_orbit(h, {0.5 + v, 0.0}).value.real();
    };
    std::vector<EigenvalueRoot> out;
    double x0 = v_lo, f0 = f(x0);
    for (int i = 1; i <= grid; ++i) {
        const double x1 = v_lo + (v_hi - v_lo) * double(i) / grid;
        const double f1 = f(x1);
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (std::abs(fm) < target && hi - lo < 1e-12) break;
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            EigenvalueRoot root;
            root.v = 0.5 * (lo + hi);
            root.bracket_lo = x0;
            root.bracket_hi = x1;
            root.residual = std::abs(f(root.v));
            out.push_back(root);
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

// Diagnostic scan for simultaneous smallness of |E(z0, 1/2+ir)| and
// |Re S_alpha(1/2+ir)| (the on-line eigenvalue condition); generically
// empty.
struct CriticalZeroCandidate {
    double r;
    double e_abs;
    double re_s;
};

inline std::vector<CriticalZeroCandidate> critical_zero_scan(
    const CriticalEvaluator& ev, double r_lo, double r_hi, int grid = 600,
    double e_threshold = 1e-3, double s_threshold = 1e-3) {
    std::vector<CriticalZeroCandidate> out;
    if (e_threshold <= 0.0 || s_threshold <= 0.0) return out;
    for (int i = 0; i <= grid; ++i) {
        const double r = r_lo + (r_hi - r_lo) * double(i) / grid;
        if (r <= 0.05) continue;
        bool near_pole = false;
        for (double rj : ev.pole_locations())
            if (std::abs(r - rj) < 0.05) near_pole = true;
        if (near_pole) continue;
        const double ea = std::sqrt(std::max(0.0, ev.e2(r)));
        if (ea > e_threshold) continue;
        const double rs = ev.eval_real(r).value.real();
        if (std::abs(rs) > s_threshold) continue;
        out.push_back({r, ea, rs});
    }
    return out;
}

} // namespace pscat
