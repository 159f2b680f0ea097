#pragma once

#include <vector>

#include "complex_util.hpp"

namespace pscat {

// Natural cubic spline with complex values on a strictly increasing grid.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<cplx> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw domain_error("CubicSpline: need >= 3 matching nodes");
        m_.assign(n, cplx(0.0, 0.0));
        std::vector<double> h(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            if (!(h[i] > 0.0))
                throw domain_error("CubicSpline: grid must increase");
        }
        // tridiagonal solve for second derivatives (natural ends)
        std::vector<double> diag(n, 2.0), sub(n, 0.0);
        std::vector<cplx> rhs(n, cplx(0.0, 0.0));
        for (size_t i = 1; i + 1 < n; ++i) {
            const double a = h[i - 1] / (h[i - 1] + h[i]);
            const double b = 1.0 - a;
            sub[i] = a;
            rhs[i] = 6.0 / (h[i - 1] + h[i]) *
                     ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
            // store the upper coefficient in place of a full matrix
            upper_.push_back(b);
        }
        // forward elimination
        std::vector<double> c(n, 0.0);
        std::vector<cplx> d(n, cplx(0.0, 0.0));
        c[0] = 0.0;
        d[0] = {0.0, 0.0};
        for (size_t i = 1; i + 1 < n; ++i) {
            const double b = upper_[i - 1];
            const double m = diag[i] - sub[i] * c[i - 1];
            c[i] = b / m;
            d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
        }
        for (size_t i = n - 2; i >= 1; --i) {
            m_[i] = d[i] - c[i] * m_[i + 1];
            if (i == 1) break;
        }
    }

    cplx operator()(double x) const {
        const size_t n = x_.size();
        size_t lo = 0, hi = n - 1;
        if (x <= x_.front()) lo = 0, hi = 1;
        else if (x >= x_.back()) lo = n - 2, hi = n - 1;
        else {
            while (hi - lo > 1) {
                const size_t mid = (lo + hi) / 2;
                (x_[mid] <= x ? lo : hi) = mid;
            }
        }
        const double h = x_[hi] - x_[lo];
        const double a = (x_[hi] - x) / h, b = (x - x_[lo]) / h;
        return a * y_[lo] + b * y_[hi] +
               ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) *
                   (h * h) / 6.0;
    }

  private:
    std::vector<double> x_;
    std::vector<cplx> y_, m_;
    std::vector<double> upper_;
};

} // namespace pscat
