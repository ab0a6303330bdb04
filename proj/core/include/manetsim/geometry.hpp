#pragma once

#include <cmath>

namespace manetsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {a.x * s, a.y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return a * s; }
    friend constexpr bool operator==(Vec2, Vec2) noexcept = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) noexcept { return norm(a - b); }
constexpr double distance_sq(Vec2 a, Vec2 b) noexcept { return dot(a - b, a - b); }

struct Area {
    double width = 0.0;
    double height = 0.0;

    constexpr bool contains(Vec2 p, double eps = 1e-9) const noexcept {
        return p.x >= -eps && p.y >= -eps && p.x <= width + eps && p.y <= height + eps;
    }

    friend constexpr bool operator==(Area, Area) noexcept = default;
};

}  // namespace manetsim
