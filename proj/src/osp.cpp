#include "star/osp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "star/parallel.hpp"

namespace star {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int stable_ceil(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<int>(r);
    return static_cast<int>(std::ceil(v));
}

std::vector<Point> padded_box(std::span<const Point> pts, double pad) {
    const Bounds b = bounds_of(pts);
    const Point lo = b.lo - Point(pad, pad), hi = b.hi + Point(pad, pad);
    return {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
}

}  // namespace

void ObstacleScene::validate() const {
    if (sites.empty()) throw Error(Errc::EmptySites, "obstacle scene has no sites");
    if (!site_weights.empty()) {
        if (site_weights.size() != sites.size())
            throw Error(Errc::InvalidInput, "one weight per site is required");
        if (std::any_of(site_weights.begin(), site_weights.end(), [](double w) { return !(w >= 0.0) || !std::isfinite(w); }))
            throw Error(Errc::InvalidInput, "site weights must be finite and non-negative");
        if (std::none_of(site_weights.begin(), site_weights.end(), [](double w) { return w > 0.0; }))
            throw Error(Errc::InvalidInput, "at least one site needs a positive weight");
    }
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (blocked(sites[i]))
            throw Error(Errc::EndpointInObstacle, "site " + std::to_string(i) + " lies inside an obstacle");
}

bool ObstacleScene::blocked(Point p) const {
    return std::any_of(obstacles.begin(), obstacles.end(),
                       [&](const Polygon& o) { return contains(o, p) == Containment::Inside; });
}

Polygon obstacle_hull(const ObstacleScene& scene, double pad) {
    std::vector<Point> pts = scene.sites;
    for (const auto& o : scene.obstacles) pts.insert(pts.end(), o.vertices().begin(), o.vertices().end());
    try {
        return convex_hull(pts);
    } catch (const Error& e) {
        if (e.code() != Errc::AllCollinear && e.code() != Errc::FewerThanThreePoints) throw;
    }
    return Polygon(padded_box(pts, pad));
}

CellStatus MaskedGrid::at(int col, int row) const {
    if (!spec.in_bounds(col, row)) return CellStatus::Empty;
    return status[static_cast<std::size_t>(spec.index(col, row))];
}

MaskedGrid build_masked_grid(const ObstacleScene& scene, double n) {
    if (!(n > 0.0)) throw Error(Errc::InvalidInput, "cell side must be positive");
    const Polygon hull = obstacle_hull(scene, n);
    const Rect box = enclosing_rect(hull);
    if (n > std::min(box.l, box.m) * (1.0 + 1e-12))
        throw Error(Errc::CellLargerThanHull, "cell side exceeds the hull's bounding box");

    MaskedGrid g;
    g.spec.origin = box.min;
    g.spec.cell_side = n;
    g.spec.cols = stable_ceil(box.l / n);
    g.spec.rows = stable_ceil(box.m / n);
    g.status.assign(static_cast<std::size_t>(g.spec.size()), CellStatus::Empty);
    for (int i = 0; i < g.spec.size(); ++i) {
        const Point c = g.spec.node(i);
        if (!convex_overlaps_square(hull, c, n)) continue;
        g.status[i] = scene.blocked(c) ? CellStatus::InObstacle : CellStatus::Active;
        ++g.r;
    }
    return g;
}

GeodesicEngine::GeodesicEngine(const ObstacleScene& scene) : scene_(&scene) {
    for (const auto& o : scene.obstacles) vertices_.insert(vertices_.end(), o.vertices().begin(), o.vertices().end());
    const int v = static_cast<int>(vertices_.size());
    adjacency_.resize(vertices_.size());
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            if (visible(vertices_[i], vertices_[j])) {
                const double d = star::distance(vertices_[i], vertices_[j]);
                adjacency_[i].emplace_back(j, d);
                adjacency_[j].emplace_back(i, d);
            }
    site_visible_.resize(scene.sites.size());
    for (std::size_t s = 0; s < scene.sites.size(); ++s)
        for (int i = 0; i < v; ++i)
            if (visible(scene.sites[s], vertices_[i])) site_visible_[s].push_back(i);
}

bool GeodesicEngine::visible(Point a, Point b) const { return !segment_blocked(a, b, scene_->obstacles); }

std::vector<double> GeodesicEngine::vertex_distances(Point from) const {
    std::vector<double> dist(vertices_.size(), kInf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (visible(from, vertices_[i])) {
            dist[i] = star::distance(from, vertices_[i]);
            open.emplace(dist[i], static_cast<int>(i));
        }
    while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (d != dist[u]) continue;
        for (const auto& [w, len] : adjacency_[u])
            if (d + len < dist[w]) {
                dist[w] = d + len;
                open.emplace(dist[w], w);
            }
    }
    return dist;
}

GeodesicPath GeodesicEngine::path(Point a, Point b) const {
    if (scene_->blocked(a) || scene_->blocked(b))
        throw Error(Errc::EndpointInObstacle, "geodesic endpoint lies inside an obstacle");
    if (a == b) return {0.0, {a, b}};
    if (visible(a, b)) return {star::distance(a, b), {a, b}};

    const std::vector<double> to_b = vertex_distances(b);
    const std::vector<double> from_a = vertex_distances(a);
    double total = kInf;
    for (std::size_t i = 0; i < vertices_.size(); ++i) total = std::min(total, from_a[i] + to_b[i]);
    if (total == kInf) throw Error(Errc::NoPath, "no obstacle-free path between the endpoints");
    const double tol = 1e-9 * std::max(1.0, total);

    // Walk forward along tight edges, always taking the smallest next point.
    std::vector<Point> way{a};
    std::vector<bool> used(vertices_.size(), false);
    double walked = 0.0;
    Point cur = a;
    while (true) {
        std::optional<Point> next;
        std::size_t next_index = vertices_.size();
        if (visible(cur, b) && walked + star::distance(cur, b) <= total + tol) next = b;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (used[i] || vertices_[i] == cur || to_b[i] == kInf) continue;
            const double via = walked + star::distance(cur, vertices_[i]) + to_b[i];
            if (via > total + tol || !visible(cur, vertices_[i])) continue;
            if (!next || lex_less(vertices_[i], *next)) {
                next = vertices_[i];
                next_index = i;
            }
        }
        if (!next) throw Error(Errc::NoPath, "path reconstruction failed");
        walked += star::distance(cur, *next);
        cur = *next;
        way.push_back(cur);
        if (next_index == vertices_.size()) break;
        // Every copy of a shared vertex is spent together.
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == cur) used[i] = true;
    }

    // Drop waypoints that lie on a straight run.
    for (std::size_t i = 1; i + 1 < way.size();) {
        const double bent = star::distance(way[i - 1], way[i]) + star::distance(way[i], way[i + 1]);
        if (star::distance(way[i - 1], way[i + 1]) >= bent - tol && visible(way[i - 1], way[i + 1]))
            way.erase(way.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    GeodesicPath out;
    out.waypoints = std::move(way);
    for (std::size_t i = 0; i + 1 < out.waypoints.size(); ++i)
        out.length += star::distance(out.waypoints[i], out.waypoints[i + 1]);
    return out;
}

double GeodesicEngine::distance(Point a, Point b) const { return path(a, b).length; }

std::vector<std::optional<double>> GeodesicEngine::site_distances(Point center) const {
    if (scene_->blocked(center)) throw Error(Errc::EndpointInObstacle, "center lies inside an obstacle");
    const auto& sites = scene_->sites;
    std::vector<std::optional<double>> out(sites.size());
    if (scene_->obstacles.empty()) {
        for (std::size_t j = 0; j < sites.size(); ++j)
            if (scene_->weight(j) > 0.0) out[j] = star::distance(center, sites[j]);
        return out;
    }
    const std::vector<double> dist = vertex_distances(center);
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (scene_->weight(j) == 0.0) continue;
        double d = visible(center, sites[j]) ? star::distance(center, sites[j]) : kInf;
        for (int v : site_visible_[j]) d = std::min(d, dist[v] + star::distance(vertices_[v], sites[j]));
        if (d < kInf) out[j] = d;
    }
    return out;
}

double GeodesicEngine::star_cost(Point center) const {
    const auto d = site_distances(center);
    double total = 0.0;
    std::string missing;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (scene_->weight(j) == 0.0) continue;
        if (d[j]) {
            total += scene_->weight(j) * *d[j];
        } else {
            missing += (missing.empty() ? "" : ", ") + std::to_string(j);
        }
    }
    if (!missing.empty()) throw Error(Errc::NoPath, "unreachable sites: " + missing);
    return total;
}

GeodesicPath geodesic(Point a, Point b, const ObstacleScene& scene) { return GeodesicEngine(scene).path(a, b); }

double star_geodesic_cost(Point center, const ObstacleScene& scene) { return GeodesicEngine(scene).star_cost(center); }

namespace {

// True when the square overlaps no kept base cell with positive area.
bool in_empty_territory(const MaskedGrid& g, const RefinementSquare& sq) {
    const GridSpec& s = g.spec;
    const Point lo = sq.min_corner();
    const double eps = 1e-9;
    const int c0 = static_cast<int>(std::floor((lo.x - s.origin.x) / s.cell_side + eps));
    const int c1 = static_cast<int>(std::ceil((lo.x + sq.side - s.origin.x) / s.cell_side - eps)) - 1;
    const int r0 = static_cast<int>(std::floor((lo.y - s.origin.y) / s.cell_side + eps));
    const int r1 = static_cast<int>(std::ceil((lo.y + sq.side - s.origin.y) / s.cell_side - eps)) - 1;
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
            if (g.at(c, r) != CellStatus::Empty) return false;
    return true;
}

}  // namespace

SolveResult solve_obstacles(const ObstacleScene& scene, const ObstacleOptions& opt) {
    scene.validate();
    check_epsilon(opt.epsilon, opt.n);
    if (opt.mode != SolveMode::Obstacles && opt.mode != SolveMode::Plain)
        throw Error(Errc::InvalidInput, "obstacle solver runs in obstacles or plain mode");
    if (opt.mode == SolveMode::Plain && !scene.obstacles.empty())
        throw Error(Errc::InvalidInput, "plain mode takes no obstacles");
    const unsigned threads = resolve_threads(opt.threads);

    const MaskedGrid grid = build_masked_grid(scene, opt.n);
    const GridSpec& spec = grid.spec;
    const int s_c = opt.subdivision_override.value_or(
        static_cast<int>(std::round(std::sqrt(static_cast<double>(grid.r)))));

    SolveResult result;
    result.mode = opt.mode;
    result.s_c = s_c;

    // Every weighted site at one point: that point costs nothing.
    std::vector<Point> live;
    for (std::size_t j = 0; j < scene.sites.size(); ++j)
        if (scene.weight(j) > 0.0) live.push_back(scene.sites[j]);
    if (std::all_of(live.begin(), live.end(), [&](Point p) { return p == live[0]; })) {
        result.q = live[0];
        result.objective = 0.0;
        result.iterations = 0;
        result.accuracy_bound = max_inaccuracy(1, opt.n, std::max(2, s_c));
        result.trace.push_back({0, result.q, 0.0, opt.n, grid.r, 0});
        return result;
    }

    check_subdivision(s_c);
    const Schedule schedule = Schedule::make(opt.epsilon, opt.n, opt.schedule_sc_override.value_or(s_c));
    const GeodesicEngine engine(scene);

    std::vector<std::optional<double>> values(static_cast<std::size_t>(spec.size()));
    parallel_for(values.size(), threads, [&](std::size_t i) {
        if (grid.status[i] == CellStatus::Active) values[i] = engine.star_cost(spec.node(static_cast<int>(i)));
    });
    const auto first = argmin_index(values);
    if (!first) throw Error(Errc::AllCandidatesSkipped, "every base cell is empty or inside an obstacle");
    const int active = static_cast<int>(std::count(grid.status.begin(), grid.status.end(), CellStatus::Active));
    Point best = spec.node(static_cast<int>(*first));
    double best_value = *values[*first];
    result.trace.push_back({0, best, best_value, spec.cell_side, grid.r, active});

    double n = opt.n;
    for (int level = 1; level <= schedule.iterations; ++level) {
        const RefinementSquare square = successor_square(best, n, level - 1);
        const auto children = subdivide(square, s_c);
        std::vector<std::optional<double>> child_values(children.size());
        parallel_for(children.size(), threads, [&](std::size_t k) {
            const Subcell& c = children[k];
            if (scene.blocked(c.center_node) || in_empty_territory(grid, c.child)) return;
            child_values[k] = engine.star_cost(c.center_node);
        });
        const auto k = argmin_index(child_values);
        if (!k)
            throw Error(Errc::AllCandidatesSkipped,
                        "every candidate at level " + std::to_string(level) + " is empty or inside an obstacle");
        // The incumbent survives unless a candidate beats it.
        if (*child_values[*k] < best_value) {
            best = children[*k].center_node;
            best_value = *child_values[*k];
        }
        const int evaluated =
            static_cast<int>(std::count_if(child_values.begin(), child_values.end(), [](const auto& v) { return v; }));
        result.trace.push_back({level, best, best_value, square.side, static_cast<int>(children.size()), evaluated});
        n = next_side(n, s_c);
    }

    result.q = best;
    result.objective = best_value;
    result.iterations = schedule.iterations;
    result.accuracy_bound = schedule.accuracy_bound();
    return result;
}

}  // namespace star
