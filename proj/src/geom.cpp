#include "star/geom.hpp"

#include <algorithm>
#include <limits>

namespace star {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::FewerThanThreePoints: return "FewerThanThreePoints";
    case Errc::AllCollinear: return "AllCollinear";
    case Errc::EmptySites: return "EmptySites";
    case Errc::CoincidesWithSite: return "CoincidesWithSite";
    case Errc::NonPositiveTol: return "NonPositiveTol";
    case Errc::CellLargerThanRect: return "CellLargerThanRect";
    case Errc::CellLargerThanHull: return "CellLargerThanHull";
    case Errc::SubdivisionTooSmall: return "SubdivisionTooSmall";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::SiteOutsideGrid: return "SiteOutsideGrid";
    case Errc::NoPath: return "NoPath";
    case Errc::FirstStepNotNeighbor: return "FirstStepNotNeighbor";
    case Errc::EndpointInObstacle: return "EndpointInObstacle";
    case Errc::AllCandidatesSkipped: return "AllCandidatesSkipped";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::AllPointsBlocked: return "AllPointsBlocked";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

double point_segment_distance(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + t * d);
}

double signed_area(std::span<const Point> loop) {
    double twice = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
        twice += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * twice;
}

namespace {

bool on_segment(Point p, Point a, Point b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Closed segments [a,b] and [c,d] share at least one point.
bool segments_touch(Point a, Point b, Point c, Point d) {
    const int o1 = sign(orient(a, b, c));
    const int o2 = sign(orient(a, b, d));
    const int o3 = sign(orient(c, d, a));
    const int o4 = sign(orient(c, d, b));
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

bool is_simple(std::span<const Point> v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point c = v[j], d = v[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (segments_touch(a, b, c, d)) return false;
                continue;
            }
            // Adjacent edges may only share their common vertex: reject folds back onto the previous edge.
            const Point shared = (j == i + 1) ? b : a;
            const Point p = (j == i + 1) ? a : b;
            const Point q = (j == i + 1) ? d : c;
            if (orient(p, shared, q) == 0.0 && dot(p - shared, q - shared) > 0.0) return false;
        }
    }
    return true;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw Error(Errc::InvalidInput, "polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == next(i)) throw Error(Errc::InvalidInput, "polygon has repeated consecutive vertices");
    if (!(signed_area(vertices_) > 0.0))
        throw Error(Errc::InvalidInput, "polygon must be counter-clockwise with positive area");
    if (!is_simple(vertices_)) throw Error(Errc::InvalidInput, "polygon edges self-intersect");
}

Polygon Polygon::normalized(std::vector<Point> vertices) {
    if (vertices.size() >= 3 && signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    return Polygon(std::move(vertices));
}

double Polygon::area() const { return signed_area(vertices_); }

Rect::Rect(Point min_corner, double width, double height) : min(min_corner), l(width), m(height) {
    if (!(l > 0.0) || !(m > 0.0) || !std::isfinite(l) || !std::isfinite(m))
        throw Error(Errc::InvalidInput, "rectangle sides must be positive");
}

Line::Line(Point anchor_, Point direction_) : anchor(anchor_), direction(direction_) {
    if (std::abs(norm(direction) - 1.0) > 1e-12) throw Error(Errc::InvalidInput, "line direction must be a unit vector");
}

Line Line::through(Point a, Point b) {
    const double len = distance(a, b);
    if (len == 0.0) throw Error(Errc::InvalidInput, "line needs two distinct points");
    const Point d = (1.0 / len) * (b - a);
    // Renormalize so the unit-length invariant survives rounding.
    return Line(a, (1.0 / norm(d)) * d);
}

Polygon convex_hull(std::span<const Point> points) {
    if (points.size() < 3) throw Error(Errc::FewerThanThreePoints, "convex hull needs at least 3 points");

    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw Error(Errc::AllCollinear, "collinear sites");

    // Collinearity: every point within tolerance of the line through the extreme pair.
    {
        const Point a = pts.front(), b = pts.back();
        const double len = distance(a, b);
        bool collinear = true;
        for (const Point& p : pts) {
            if (len == 0.0 || std::abs(orient(a, b, p)) / len > kGeomTol) {
                collinear = false;
                break;
            }
        }
        if (collinear) throw Error(Errc::AllCollinear, "collinear sites");
    }

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return Polygon(std::move(hull));
}

Point reflect(Point q, const Line& o) {
    const Point rel = q - o.anchor;
    const Point foot = o.anchor + dot(rel, o.direction) * o.direction;
    return 2.0 * foot - q;
}

Containment contains(const Polygon& poly, Point p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_segment_distance(p, poly[i], poly.next(i)) <= kGeomTol) return Containment::OnBoundary;

    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = poly[i], b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

bool segment_blocked(Point a, Point b, const Polygon& obstacle) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 <= kGeomTol * kGeomTol) return false;

    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const Point& v : obstacle.vertices()) {
        lo_x = std::min(lo_x, v.x), hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y), hi_y = std::max(hi_y, v.y);
    }
    if (std::max(a.x, b.x) < lo_x - kGeomTol || std::min(a.x, b.x) > hi_x + kGeomTol ||
        std::max(a.y, b.y) < lo_y - kGeomTol || std::min(a.y, b.y) > hi_y + kGeomTol)
        return false;

    // Split the segment at every boundary contact; each open piece is then
    // either wholly inside or wholly outside, decided at its midpoint.
    std::vector<double> cuts{0.0, 1.0};
    const std::size_t n = obstacle.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point c = obstacle[i], e = obstacle.next(i);
        if (point_segment_distance(c, a, b) <= kGeomTol) cuts.push_back(std::clamp(dot(c - a, d) / len2, 0.0, 1.0));
        const Point f = e - c;
        const double denom = cross(d, f);
        if (std::abs(denom) > 1e-300) {
            const double t = cross(c - a, f) / denom;
            const double u = cross(c - a, d) / denom;
            if (t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
        const Point mid = a + (0.5 * (cuts[i] + cuts[i + 1])) * d;
        if (contains(obstacle, mid) == Containment::Inside) return true;
    }
    return false;
}

bool segment_blocked(Point a, Point b, std::span<const Polygon> obstacles) {
    return std::any_of(obstacles.begin(), obstacles.end(),
                       [&](const Polygon& poly) { return segment_blocked(a, b, poly); });
}

Bounds bounds_of(std::span<const Point> points) {
    if (points.empty()) throw Error(Errc::InvalidInput, "bounding rectangle of an empty set");
    Bounds b{points[0], points[0]};
    for (const Point& p : points) {
        b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
        b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
    }
    return b;
}

Rect bounding_rect(std::span<const Point> points) {
    const Bounds b = bounds_of(points);
    return Rect(b.lo, b.width(), b.height());
}

Rect enclosing_rect(const Polygon& poly) { return bounding_rect(poly.vertices()); }

bool convex_overlaps_square(const Polygon& convex, Point center, double side) {
    const double h = 0.5 * side;
    const Point corners[4] = {{center.x - h, center.y - h},
                              {center.x + h, center.y - h},
                              {center.x + h, center.y + h},
                              {center.x - h, center.y + h}};
    auto separated = [&](Point axis) {
        double p_lo = std::numeric_limits<double>::infinity(), p_hi = -p_lo;
        for (const Point& v : convex.vertices()) {
            const double s = dot(v, axis);
            p_lo = std::min(p_lo, s), p_hi = std::max(p_hi, s);
        }
        double s_lo = std::numeric_limits<double>::infinity(), s_hi = -s_lo;
        for (const Point& c : corners) {
            const double s = dot(c, axis);
            s_lo = std::min(s_lo, s), s_hi = std::max(s_hi, s);
        }
        const double overlap = std::min(p_hi, s_hi) - std::max(p_lo, s_lo);
        return overlap <= 1e-12 * norm(axis);
    };
    if (separated({1.0, 0.0}) || separated({0.0, 1.0})) return false;
    for (std::size_t i = 0; i < convex.size(); ++i) {
        const Point e = convex.next(i) - convex[i];
        if (separated({-e.y, e.x})) return false;
    }
    return true;
}

}  // namespace star
