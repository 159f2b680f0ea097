#pragma once

#include <cmath>
#include <cstdint>

#include "complex_util.hpp"

namespace pscat {

// sigma_a(n) = sum over divisors d|n of d^a, complex exponent.
inline cplx divisor_sigma(cplx a, std::int64_t n) {
    if (n < 1) throw domain_error("divisor_sigma: n must be >= 1");
    cplx s(0.0, 0.0);
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += std::exp(a * std::log(double(d)));
        const std::int64_t q = n / d;
        if (q != d) s += std::exp(a * std::log(double(q)));
    }
    return s;
}

} // namespace pscat
