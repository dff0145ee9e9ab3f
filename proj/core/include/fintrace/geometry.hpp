#pragma once

#include <cmath>
#include <compare>

namespace fintrace {

// Pixel coordinate. Origin top-left, x grows rightward, y grows downward,
// so "north" means decreasing y.
struct Point {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

inline double distance(Point a, Point b)
{
    return std::hypot(double(a.x - b.x), double(a.y - b.y));
}

constexpr bool four_adjacent(Point a, Point b)
{
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx + dy == 1;
}

// Axis-aligned pixel rectangle: top-left corner plus extent.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    constexpr bool contains(Point p) const
    {
        return p.x >= x && p.y >= y && p.x < x + w && p.y < y + h;
    }

    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace fintrace
