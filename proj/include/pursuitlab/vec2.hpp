#pragma once

#include <cmath>

namespace pursuitlab {

/// 2D vector in environment units. Arena coordinates span [-half_extent, +half_extent].
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Unit vector along v, or (0,0) when |v| < eps.
inline Vec2 unit_or_zero(const Vec2& v, double eps = 1e-12) {
    const double n = v.norm();
    if (n < eps) return {};
    return v / n;
}

/// Rescale v so that |v| <= limit holds exactly in floating point, keeping its direction.
inline Vec2 clamp_norm(Vec2 v, double limit) {
    double n = v.norm();
    if (n <= limit) return v;
    if (limit <= 0.0) return {};
    v *= limit / n;
    // Rounding in the rescale can leave |v| one ulp above the limit.
    while (v.norm() > limit) v *= 0.9999999999999998;
    return v;
}

}  // namespace pursuitlab
