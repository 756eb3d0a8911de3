#pragma once

// Test-only references and scene generators. Nothing here calls the
// refinement, heuristic or median code under test.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <vector>

#include "star/geom.hpp"
#include "star/osp.hpp"
#include "star/wrp.hpp"

namespace oracle {

using star::Point;
using star::Polygon;

// Smallest level i >= 1 whose refinement-square diagonal 2^i n sqrt2 / s^(i-1)
// is within epsilon, found by walking the levels.
inline int iterations_by_search(double epsilon, double n, int s_c) {
    double diag = 2.0 * n * std::numbers::sqrt2;
    for (int i = 1; i < 100000; ++i) {
        if (diag <= epsilon * (1.0 + 1e-12)) return i;
        diag *= 2.0 / s_c;
    }
    return -1;
}

// Brute-force hull membership dilated by r: inside the CCW hull, or within r of an edge.
inline bool in_dilated_hull(const Polygon& hull, Point p, double r) {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (star::orient(hull[i], hull.next(i), p) < 0.0) inside = false;
    if (inside) return true;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (star::point_segment_distance(p, hull[i], hull.next(i)) <= r + 1e-12) return true;
    return false;
}

inline Polygon hull_of(std::vector<Point> pts) { return star::convex_hull(pts); }

// Shortest lattice path at pitch h with the 16-neighbourhood (axis, diagonal
// and knight moves); a move is allowed when its segment stays out of every
// obstacle interior. Endpoints snap to their nearest lattice points.
inline double grid_geodesic(const std::vector<Polygon>& obstacles, Point a, Point b, double h, Point lo, Point hi) {
    const int cols = static_cast<int>(std::ceil((hi.x - lo.x) / h)) + 1;
    const int rows = static_cast<int>(std::ceil((hi.y - lo.y) / h)) + 1;
    auto at = [&](int i) { return Point(lo.x + (i % cols) * h, lo.y + (i / cols) * h); };
    auto nearest = [&](Point p) {
        const int c = std::clamp(static_cast<int>(std::lround((p.x - lo.x) / h)), 0, cols - 1);
        const int r = std::clamp(static_cast<int>(std::lround((p.y - lo.y) / h)), 0, rows - 1);
        return r * cols + c;
    };
    auto blocked_point = [&](Point p) {
        for (const auto& o : obstacles)
            if (star::contains(o, p) == star::Containment::Inside) return true;
        return false;
    };
    static constexpr int moves[16][2] = {{1, 0},  {-1, 0}, {0, 1},   {0, -1}, {1, 1},  {1, -1},  {-1, 1}, {-1, -1},
                                         {2, 1},  {2, -1}, {-2, 1},  {-2, -1}, {1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
    const int n = cols * rows;
    std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    using E = std::pair<double, int>;
    std::priority_queue<E, std::vector<E>, std::greater<>> pq;
    const int s = nearest(a), t = nearest(b);
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        if (u == t) break;
        const int uc = u % cols, ur = u / cols;
        for (const auto& m : moves) {
            const int c = uc + m[0], r = ur + m[1];
            if (c < 0 || r < 0 || c >= cols || r >= rows) continue;
            const int v = r * cols + c;
            const Point pu = at(u), pv = at(v);
            if (blocked_point(pv) || star::segment_blocked(pu, pv, obstacles)) continue;
            const double nd = d + star::distance(pu, pv);
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist[t];
}

// Random convex polygon: hull of k points in a disc.
inline Polygon random_convex(std::mt19937& rng, Point c, double radius, int k = 6) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), rad(0.3, 1.0);
    while (true) {
        std::vector<Point> pts;
        for (int i = 0; i < k; ++i) {
            const double a = ang(rng), r = radius * rad(rng);
            pts.emplace_back(c.x + r * std::cos(a), c.y + r * std::sin(a));
        }
        try {
            Polygon p = star::convex_hull(pts);
            if (p.area() > 0.2 * radius * radius) return p;
        } catch (const star::Error&) {
        }
    }
}

inline std::vector<Point> random_sites(std::mt19937& rng, int n, double size) {
    std::uniform_real_distribution<double> u(0.0, size);
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) out.emplace_back(u(rng), u(rng));
    return out;
}

inline bool non_degenerate(const std::vector<Point>& pts) {
    try {
        return star::convex_hull(pts).area() > 1.0;
    } catch (const star::Error&) {
        return false;
    }
}

inline star::WeightedScene random_weighted(std::mt19937& rng, int max_sites = 6, int max_regions = 3) {
    std::uniform_int_distribution<int> ns(3, max_sites), nr(1, max_regions);
    std::uniform_real_distribution<double> u(0.0, 10.0), w(0.5, 4.0), rr(1.5, 4.0);
    star::WeightedScene s;
    do {
        s.sites = random_sites(rng, ns(rng), 10.0);
    } while (!non_degenerate(s.sites));
    const int regions = nr(rng);
    for (int i = 0; i < regions; ++i) s.regions.push_back({random_convex(rng, {u(rng), u(rng)}, rr(rng)), w(rng)});
    return s;
}

inline star::ObstacleScene random_obstacles(std::mt19937& rng, int max_sites = 6, int max_obstacles = 3) {
    std::uniform_int_distribution<int> ns(3, max_sites), no(1, max_obstacles);
    std::uniform_real_distribution<double> u(1.5, 8.5), rr(0.8, 1.6);
    star::ObstacleScene s;
    const int k = no(rng);
    std::vector<std::pair<Point, double>> discs;
    while (static_cast<int>(discs.size()) < k) {
        const Point c(u(rng), u(rng));
        const double r = rr(rng);
        bool clear = true;
        for (const auto& [c2, r2] : discs) clear = clear && star::distance(c, c2) > r + r2 + 0.3;
        if (clear) discs.emplace_back(c, r);
    }
    for (const auto& [c, r] : discs) s.obstacles.push_back(random_convex(rng, c, r));
    const int n = ns(rng);
    std::uniform_real_distribution<double> site(0.0, 10.0);
    while (static_cast<int>(s.sites.size()) < n) {
        const Point p(site(rng), site(rng));
        bool clear = true;
        for (const auto& o : s.obstacles) clear = clear && star::contains(o, p) == star::Containment::Outside;
        if (clear) s.sites.push_back(p);
    }
    return s;
}

}  // namespace oracle
