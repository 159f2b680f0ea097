#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace pscat {

using cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;
inline constexpr double EULER_GAMMA = 0.577215664901532860606512090082402431;

inline bool finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// |z| without overflow for the common "is it tiny/huge" checks.
inline double mag(cplx z) { return std::abs(z); }

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A requested tolerance could not be certified; carries what was achieved.
struct tolerance_error : std::runtime_error {
    double achieved;
    tolerance_error(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace pscat
