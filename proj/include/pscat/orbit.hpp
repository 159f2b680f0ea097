#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "complex_util.hpp"
#include "halfplane.hpp"

// Enumeration of all gamma in PSL(2,Z) with displacement
// d(z0, gamma z0) <= R, split into the stabilizer of z0 and a
// deterministic sorted table of (element, length) pairs.
//
// Completeness comes from two necessary conditions rather than a word
// search (parabolic words of bounded displacement have unbounded length,
// so generator BFS cannot be pruned soundly):
//   |c z0 + d|^2 <= e^R        (heights move by at most e^{+-R})
//   the translate family (a0+tc, b0+td; c, d) moves gamma0 z0 by t,
//   so t rangse over an explicit window.

namespace pscat {

struct OrbitEntry {
    GroupElement g;
    double length; // d(z0, g z0) > 0
};

struct OrbitTable {
    Point z0{0.0, 1.0};
    double radius = 0.0;
    int stabilizer_order = 1;
    std::vector<GroupElement> stabilizer; // includes identity
    std::vector<OrbitEntry> entries;      // sorted by (length, a, b, c, d)

    double min_length() const {
        return entries.empty() ? radius : entries.front().length;
    }

    // Rigorous packing bound on the number of group elements with
    // displacement <= L: disjoint balls of radius delta = min_length/2
    // around distinct orbit points inside the ball of radius L + delta,
    // times the stabilizer order.
    double count_bound(double L) const {
        const double delta = 0.5 * std::max(min_length(), 1e-8);
        return stabilizer_order * (std::cosh(L + delta) - 1.0) /
               (std::cosh(delta) - 1.0);
    }
};

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    // extended gcd; m >= 1, gcd(a, m) == 1
    if (m == 1) return 0;
    std::int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    return ((s0 % m) + m) % m;
}

} // namespace detail

inline OrbitTable enumerate_orbits(const Point& z0, double R,
                                   std::int64_t cap = 10'000'000) {
    if (R < 0.0) throw domain_error("enumerate_orbits: R must be >= 0");
    OrbitTable table;
    table.z0 = z0;
    table.radius = R;
    table.stabilizer.push_back(GroupElement{});

    const double x0 = z0.x, y0 = z0.y;
    const double coshR = std::cosh(R);
    const double nbound = std::exp(R) * (1.0 + 1e-9); // |c z0 + d|^2 bound
    const double stab_tol = 1e-12;

    if (3.0 * std::exp(R) > 2.0 * double(cap))
        throw capacity_error("enumerate_orbits: radius exceeds the entry cap");

    auto consider = [&](GroupElement g) {
        const double l = hyp_distance(z0, mobius_apply(g, z0));
        if (l > R) return;
        if (l < stab_tol) {
            if (!g.is_identity()) {
                table.stabilizer.push_back(g);
            }
            return;
        }
        if (std::ssize(table.entries) >= cap)
            throw capacity_error("enumerate_orbits: entry cap exceeded");
        table.entries.push_back({g, l});
    };

    // c = 0: translations T^b
    const std::int64_t bmax =
        static_cast<std::int64_t>(std::floor(2.0 * y0 * std::sinh(0.5 * R))) + 1;
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        if (b == 0) continue;
        consider(GroupElement{1, b, 0, 1});
    }

    // c > 0
    const auto cmax =
        static_cast<std::int64_t>(std::floor(std::sqrt(nbound) / y0)) + 1;
    for (std::int64_t c = 1; c <= cmax; ++c) {
        const double w2 = nbound - double(c) * double(c) * y0 * y0;
        if (w2 < 0.0) break;
        const double dc = -double(c) * x0, dhalf = std::sqrt(w2);
        const auto dlo = static_cast<std::int64_t>(std::ceil(dc - dhalf)) - 1;
        const auto dhi = static_cast<std::int64_t>(std::floor(dc + dhalf)) + 1;
        for (std::int64_t d = dlo; d <= dhi; ++d) {
            if (std::gcd(c, std::abs(d)) != 1) continue;
            const std::int64_t a0 = detail::mod_inverse(d, c);
            const std::int64_t b0 = (a0 * d - 1) / c;
            const Point w = mobius_apply(GroupElement{a0, b0, c, d}, z0);
            const double disc =
                2.0 * y0 * w.y * (coshR - 1.0) - (w.y - y0) * (w.y - y0);
            if (disc < 0.0) continue;
            const double half = std::sqrt(disc);
            const auto tlo =
                static_cast<std::int64_t>(std::ceil(x0 - w.x - half)) - 1;
            const auto thi =
                static_cast<std::int64_t>(std::floor(x0 - w.x + half)) + 1;
            for (std::int64_t t = tlo; t <= thi; ++t) {
                consider(GroupElement{a0 + t * c, b0 + t * d, c, d});
            }
        }
    }

    std::sort(table.entries.begin(), table.entries.end(),
              [](const OrbitEntry& l, const OrbitEntry& r) {
                  if (l.length != r.length) return l.length < r.length;
                  return l.g < r.g;
              });
    std::sort(table.stabilizer.begin(), table.stabilizer.end());
    table.stabilizer_order = static_cast<int>(table.stabilizer.size());
    return table;
}

// All gamma fixing z0 (tolerance 1e-12 on the displacement), with the
// group order of the stabilizer: 1, 2 or 3 for the modular group.
inline std::pair<std::vector<GroupElement>, int> stabilizer(const Point& z0) {
    const OrbitTable t = enumerate_orbits(z0, 1e-6);
    return {t.stabilizer, t.stabilizer_order};
}

} // namespace pscat
