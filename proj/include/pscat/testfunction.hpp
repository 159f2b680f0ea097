#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "complex_util.hpp"

// The Gaussian test-function family: h(rho) = p(rho^2) exp(-rho^2/a^2)
// with an optional even polynomial prefactor p.  Even, entire, and with
// super-polynomial decay in every horizontal strip, so membership in the
// H_{sigma,delta} class holds for every sigma.

namespace pscat {

class TestFunction {
  public:
    explicit TestFunction(double width, std::vector<double> poly = {1.0})
        : a_(width), poly_(std::move(poly)) {
        if (!(width > 0.0))
            throw domain_error("TestFunction: width must be > 0");
        if (poly_.empty()) poly_ = {1.0};
    }

    double width() const { return a_; }

    cplx h(cplx rho) const {
        const cplx u = rho * rho;
        return poly_eval(u) * std::exp(-u / (a_ * a_));
    }

    // analytic derivative dh/drho
    cplx hprime(cplx rho) const {
        const cplx u = rho * rho;
        return 2.0 * rho * std::exp(-u / (a_ * a_)) *
               (poly_deriv(u) - poly_eval(u) / (a_ * a_));
    }

    // certified bound: |h(x+iy)| <= strip_bound(sigma,delta) (1+|x|)^{-2-delta}
    // uniformly for |y| <= sigma
    double strip_bound(double sigma, double delta = 1.0) const {
        double pmax = 0.0; // |p(u)| grows polynomially; bound on |u| <= M^2
        double best = 0.0;
        for (double x = 0.0; x <= 60.0; x += 0.05) {
            double pabs = 0.0, up = 1.0;
            const double umod = x * x + sigma * sigma;
            for (double c : poly_) {
                pabs += std::abs(c) * up;
                up *= umod;
            }
            pmax = std::max(pmax, pabs);
            const double v = pabs *
                             std::exp((sigma * sigma - x * x) / (a_ * a_)) *
                             std::pow(1.0 + x, 2.0 + delta);
            best = std::max(best, v);
        }
        return best;
    }

    // pointwise sum of two members with the same width
    friend TestFunction operator+(const TestFunction& f,
                                  const TestFunction& g) {
        if (f.a_ != g.a_)
            throw domain_error("TestFunction: sum requires equal widths");
        std::vector<double> p(std::max(f.poly_.size(), g.poly_.size()), 0.0);
        for (size_t i = 0; i < f.poly_.size(); ++i) p[i] += f.poly_[i];
        for (size_t i = 0; i < g.poly_.size(); ++i) p[i] += g.poly_[i];
        return TestFunction(f.a_, std::move(p));
    }

  private:
    cplx poly_eval(cplx u) const {
        cplx v(0.0, 0.0);
        for (size_t i = poly_.size(); i-- > 0;) v = v * u + poly_[i];
        return v;
    }
    cplx poly_deriv(cplx u) const {
        cplx v(0.0, 0.0);
        for (size_t i = poly_.size(); i-- > 1;) v = v * u + double(i) * poly_[i];
        return v;
    }

    double a_;
    std::vector<double> poly_;
};

inline TestFunction make_test_function(double a) { return TestFunction(a); }

} // namespace pscat
