#include "star/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>

#include "star/parallel.hpp"

namespace star {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSteps[8][2] = {{-1, 1}, {0, 1}, {1, 1}, {-1, 0}, {1, 0}, {-1, -1}, {0, -1}, {1, -1}};

// Points origin + (i, j) * pitch for i <= cols - 1, j <= rows - 1.
struct Lattice {
    Point origin;
    double pitch = 0.0;
    int cols = 0;
    int rows = 0;

    int size() const { return cols * rows; }
    Point at(int i) const { return {origin.x + (i % cols) * pitch, origin.y + (i / cols) * pitch}; }
    int nearest(Point p) const {
        const int c = std::clamp(static_cast<int>(std::lround((p.x - origin.x) / pitch)), 0, cols - 1);
        const int r = std::clamp(static_cast<int>(std::lround((p.y - origin.y) / pitch)), 0, rows - 1);
        return r * cols + c;
    }
};

Lattice lattice_over(Rect box, double resolution) {
    if (!(resolution > 0.0)) throw Error(Errc::InvalidInput, "resolution must be positive");
    Lattice l;
    l.origin = box.min;
    l.pitch = resolution;
    l.cols = static_cast<int>(std::ceil(box.l / resolution - 1e-9)) + 1;
    l.rows = static_cast<int>(std::ceil(box.m / resolution - 1e-9)) + 1;
    // At least four lattice cells, so the minimum is not just a box corner.
    if (static_cast<long>(l.cols - 1) * (l.rows - 1) < 4)
        throw Error(Errc::ResolutionTooCoarse, "oracle pitch leaves fewer than 4 lattice cells");
    return l;
}

Rect box_of(std::span<const Point> pts, double pad) {
    const Bounds b = bounds_of(pts);
    if (b.width() > 0.0 && b.height() > 0.0) {
        try {
            convex_hull(pts);
            return Rect(b.lo, b.width(), b.height());
        } catch (const Error&) {
        }
    }
    return Rect(b.lo - Point(pad, pad), b.width() + 2.0 * pad, b.height() + 2.0 * pad);
}

OracleResult pick(const Lattice& l, const std::vector<std::optional<double>>& values) {
    OracleResult out;
    out.resolution = l.pitch;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) continue;
        ++out.evaluated;
        if (!best || *values[i] < *values[*best]) best = i;
    }
    if (!best) throw Error(Errc::AllPointsBlocked, "every oracle lattice point is blocked");
    out.q = l.at(static_cast<int>(*best));
    out.objective = *values[*best];
    return out;
}

}  // namespace

std::vector<double> reference_dijkstra(const WeightGrid& grid, int source) {
    const GridSpec& s = grid.spec;
    std::vector<double> dist(static_cast<std::size_t>(s.size()), kInf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[source] = 0.0;
    open.emplace(0.0, source);
    while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (d != dist[u]) continue;
        const int col = u % s.cols, row = u / s.cols;
        for (const auto& st : kSteps) {
            const int c = col + st[0], r = row + st[1];
            if (c < 0 || r < 0 || c >= s.cols || r >= s.rows) continue;
            const int v = r * s.cols + c;
            const double len = (st[0] != 0 && st[1] != 0) ? s.cell_side * std::numbers::sqrt2 : s.cell_side;
            const double nd = d + len * grid.node_weight[v];
            if (nd < dist[v]) {
                dist[v] = nd;
                open.emplace(nd, v);
            }
        }
    }
    return dist;
}

OracleResult dense_weighted_min(const WeightedScene& scene, double resolution, unsigned threads, int samples) {
    scene.validate();
    const Lattice l = lattice_over(box_of(scene.sites, resolution), resolution);
    threads = resolve_threads(threads);

    // Each lattice point owns the square of side `resolution` around it.
    std::vector<double> weight(static_cast<std::size_t>(l.size()));
    parallel_for(weight.size(), threads, [&](std::size_t i) {
        const Point c = l.at(static_cast<int>(i));
        double sum = 0.0;
        for (int b = 0; b < samples; ++b)
            for (int a = 0; a < samples; ++a)
                sum += scene.weight_at(
                    {c.x + ((a + 0.5) / samples - 0.5) * l.pitch, c.y + ((b + 0.5) / samples - 0.5) * l.pitch});
        weight[i] = sum / (static_cast<double>(samples) * samples);
    });

    // Reverse search from every site: D(u) = min over v of step(u, v) * w(v) + D(v).
    std::vector<std::vector<double>> to_site(scene.sites.size());
    parallel_for(scene.sites.size(), threads, [&](std::size_t j) {
        std::vector<double> dist(static_cast<std::size_t>(l.size()), kInf);
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
        const int src = l.nearest(scene.sites[j]);
        dist[src] = 0.0;
        open.emplace(0.0, src);
        while (!open.empty()) {
            const auto [d, v] = open.top();
            open.pop();
            if (d != dist[v]) continue;
            const int col = v % l.cols, row = v / l.cols;
            for (const auto& st : kSteps) {
                const int c = col + st[0], r = row + st[1];
                if (c < 0 || r < 0 || c >= l.cols || r >= l.rows) continue;
                const int u = r * l.cols + c;
                const double len = (st[0] != 0 && st[1] != 0) ? l.pitch * std::numbers::sqrt2 : l.pitch;
                const double nd = d + len * weight[v];
                if (nd < dist[u]) {
                    dist[u] = nd;
                    open.emplace(nd, u);
                }
            }
        }
        to_site[j] = std::move(dist);
    });

    std::vector<std::optional<double>> values(static_cast<std::size_t>(l.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        double sum = 0.0;
        for (const auto& d : to_site) sum += d[i];
        values[i] = sum;
    }
    return pick(l, values);
}

OracleResult dense_obstacle_min(const ObstacleScene& scene, double resolution, unsigned threads) {
    scene.validate();
    std::vector<Point> pts = scene.sites;
    for (const auto& o : scene.obstacles) pts.insert(pts.end(), o.vertices().begin(), o.vertices().end());
    const Lattice l = lattice_over(box_of(pts, resolution), resolution);
    const GeodesicEngine engine(scene);

    std::vector<std::optional<double>> values(static_cast<std::size_t>(l.size()));
    parallel_for(values.size(), resolve_threads(threads), [&](std::size_t i) {
        const Point p = l.at(static_cast<int>(i));
        if (scene.blocked(p)) return;
        const auto d = engine.site_distances(p);
        double sum = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (scene.weight(j) == 0.0) continue;
            if (!d[j]) return;  // sealed pocket
            sum += scene.weight(j) * *d[j];
        }
        values[i] = sum;
    });
    return pick(l, values);
}

double lipschitz_slack(double max_weight, double resolution, std::size_t sites) {
    return max_weight * resolution * std::numbers::sqrt2 * static_cast<double>(sites);
}

}  // namespace star
