#pragma once

#include <cmath>
#include <cstdint>
#include <tuple>

#include "complex_util.hpp"

// Upper half-plane model: points, PSL(2,Z) elements, Moebius action,
// hyperbolic distance and reduction to the standard fundamental domain
// |Re z| <= 1/2, |z| >= 1.

namespace pscat {

struct Point {
    double x = 0.0;
    double y = 1.0;

    Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
            throw domain_error("Point: requires finite coordinates, y > 0");
    }
    cplx z() const { return {x, y}; }
};

struct GroupElement {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    GroupElement inverse() const { return GroupElement{d, -b, -c, a}; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& l, const GroupElement& r) {
        return std::tie(l.a, l.b, l.c, l.d) <=> std::tie(r.a, r.b, r.c, r.d);
    }
};

namespace detail {

inline std::int64_t mul_check(std::int64_t x, std::int64_t y) {
    __int128 p = static_cast<__int128>(x) * y;
    if (p > INT64_MAX || p < INT64_MIN)
        throw capacity_error("GroupElement: entry overflow");
    return static_cast<std::int64_t>(p);
}

} // namespace detail

// Sign-normalized PSL(2,Z) representative: c > 0, or c = 0 and a > 0.
inline GroupElement canonicalize(std::int64_t a, std::int64_t b,
                                 std::int64_t c, std::int64_t d) {
    __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
    if (det != 1) throw domain_error("canonicalize: determinant must be 1");
    if (c < 0 || (c == 0 && a < 0)) return {-a, -b, -c, -d};
    return {a, b, c, d};
}

inline GroupElement canonicalize(const GroupElement& g) {
    return canonicalize(g.a, g.b, g.c, g.d);
}

inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
    using detail::mul_check;
    return canonicalize(mul_check(g.a, h.a) + mul_check(g.b, h.c),
                        mul_check(g.a, h.b) + mul_check(g.b, h.d),
                        mul_check(g.c, h.a) + mul_check(g.d, h.c),
                        mul_check(g.c, h.b) + mul_check(g.d, h.d));
}

inline Point mobius_apply(const GroupElement& g, const Point& z) {
    const double cx_d = double(g.c) * z.x + double(g.d);
    const double cy = double(g.c) * z.y;
    const double n = cx_d * cx_d + cy * cy; // |cz+d|^2 > 0 on the open halfplane
    const double ax_b = double(g.a) * z.x + double(g.b);
    const double ay = double(g.a) * z.y;
    // (az+b)(conj(cz+d)) / |cz+d|^2
    return Point{(ax_b * cx_d + ay * cy) / n, z.y / n};
}

// cosh d = 1 + |z-w|^2 / (2 Im z Im w), evaluated as
// d = 2 asinh(|z-w| / (2 sqrt(Im z Im w))) which is exact in the
// coincidence limit.
inline double hyp_distance(const Point& z, const Point& w) {
    const double dx = z.x - w.x, dy = z.y - w.y;
    const double q = std::sqrt(dx * dx + dy * dy) / (2.0 * std::sqrt(z.y * w.y));
    return 2.0 * std::asinh(q);
}

struct Reduction {
    Point point;
    GroupElement element; // element * z == point
};

inline Reduction reduce_fund_domain(Point z) {
    GroupElement g; // identity
    const GroupElement S{0, -1, 1, 0};
    for (int iter = 0; iter < 20000; ++iter) {
        const double n = std::floor(z.x + 0.5); // tie at x=+1/2 moves left
        if (n != 0.0) {
            const auto ni = static_cast<std::int64_t>(n);
            z.x -= n;
            g = compose(GroupElement{1, -ni, 0, 1}, g);
        }
        const double norm2 = z.x * z.x + z.y * z.y;
        if (norm2 < 1.0) {
            // z -> -1/z
            z = Point{-z.x / norm2, z.y / norm2};
            g = compose(S, g);
            continue;
        }
        if (norm2 == 1.0 && z.x > 0.0) { // boundary tie: prefer Re <= 0
            z = Point{-z.x, z.y};
            g = compose(S, g);
        }
        if (z.x == 0.5) {
            z.x = -0.5;
            g = compose(GroupElement{1, -1, 0, 1}, g);
        }
        return {z, g};
    }
    throw capacity_error("reduce_fund_domain: did not terminate");
}

} // namespace pscat
