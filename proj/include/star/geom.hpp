#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "star/error.hpp"

namespace star {

// Absolute tolerance (length units) for every boundary/incidence predicate.
inline constexpr double kGeomTol = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x_) || !std::isfinite(y_))
            throw Error(Errc::InvalidInput, "point coordinates must be finite");
    }

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
// > 0 when c lies to the left of the directed line a->b.
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Lexicographic (x, then y) ordering.
constexpr bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

double point_segment_distance(Point p, Point a, Point b);

// Simple polygon, counter-clockwise, implicitly closed.
class Polygon {
public:
    // Throws InvalidInput unless the loop is simple, has >= 3 vertices, no
    // repeated consecutive vertex, and positive signed area.
    explicit Polygon(std::vector<Point> vertices);

    // Accepts either orientation and reverses clockwise input.
    static Polygon normalized(std::vector<Point> vertices);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const Point& next(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

    double area() const;

    friend bool operator==(const Polygon&, const Polygon&) = default;

private:
    std::vector<Point> vertices_;
};

double signed_area(std::span<const Point> loop);

struct Rect {
    Point min;
    double l = 0.0;  // width (x extent)
    double m = 0.0;  // height (y extent)

    Rect(Point min_corner, double width, double height);

    Point max() const { return {min.x + l, min.y + m}; }
    Point center() const { return {min.x + 0.5 * l, min.y + 0.5 * m}; }
};

struct Line {
    Point anchor;
    Point direction;  // unit length

    Line(Point anchor_, Point direction_);
    static Line through(Point a, Point b);
};

enum class Containment { Inside, OnBoundary, Outside };

// Monotone chain. Collinear boundary points are dropped.
Polygon convex_hull(std::span<const Point> points);

Point reflect(Point q, const Line& o);

Containment contains(const Polygon& poly, Point p);

// True iff the open segment (a, b) meets the open interior of some obstacle.
bool segment_blocked(Point a, Point b, std::span<const Polygon> obstacles);
bool segment_blocked(Point a, Point b, const Polygon& obstacle);

// Axis-aligned bounding rectangle.
Rect enclosing_rect(const Polygon& poly);
Rect bounding_rect(std::span<const Point> points);

// Coordinate extremes; unlike Rect, zero width or height is allowed.
struct Bounds {
    Point lo;
    Point hi;
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
};
Bounds bounds_of(std::span<const Point> points);

// Positive-area overlap between a convex polygon and an axis-aligned square.
bool convex_overlaps_square(const Polygon& convex, Point center, double side);

}  // namespace star
