#include "star/wrp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

#include "star/parallel.hpp"

namespace star {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Keeps the heuristic strictly consistent under rounding of the edge costs.
constexpr double kHeuristicScale = 1.0 - 1e-9;

double step_length(double side, int dcol, int drow) {
    return (dcol != 0 && drow != 0) ? side * std::numbers::sqrt2 : side;
}

}  // namespace

void WeightedScene::validate() const {
    if (sites.empty()) throw Error(Errc::EmptySites, "weighted scene has no sites");
    if (!(default_weight > 0.0) || !std::isfinite(default_weight))
        throw Error(Errc::InvalidInput, "default weight must be positive");
    for (const auto& r : regions)
        if (!(r.weight > 0.0) || !std::isfinite(r.weight))
            throw Error(Errc::InvalidInput, "region weights must be positive");
}

double WeightedScene::weight_at(Point p) const {
    for (auto it = regions.rbegin(); it != regions.rend(); ++it)
        if (contains(it->polygon, p) != Containment::Outside) return it->weight;
    return default_weight;
}

double WeightedScene::min_weight() const {
    double w = default_weight;
    for (const auto& r : regions) w = std::min(w, r.weight);
    return w;
}

double WeightedScene::max_weight() const {
    double w = default_weight;
    for (const auto& r : regions) w = std::max(w, r.weight);
    return w;
}

double cell_weight(Point center, double side, const WeightedScene& scene, int samples_per_axis) {
    if (samples_per_axis < 1) throw Error(Errc::InvalidInput, "samples_per_axis must be >= 1");
    const int k = samples_per_axis;
    const double x0 = center.x - 0.5 * side, y0 = center.y - 0.5 * side;
    double sum = 0.0;
    for (int b = 0; b < k; ++b)
        for (int a = 0; a < k; ++a)
            sum += scene.weight_at({x0 + (a + 0.5) / k * side, y0 + (b + 0.5) / k * side});
    return sum / (static_cast<double>(k) * k);
}

double WeightGrid::min_weight() const { return *std::min_element(node_weight.begin(), node_weight.end()); }

std::vector<int> snap_points(std::span<const Point> points, const GridSpec& grid) {
    auto axis_cell = [&](double coord, double origin, int count) {
        const double f = (coord - origin) / grid.cell_side;
        const double r = std::round(f);
        int lo;
        if (std::abs(f - r) * grid.cell_side <= kGeomTol) {
            // On a grid line: the lower neighbor if it exists.
            lo = static_cast<int>(r) - 1;
            if (lo < 0) lo = static_cast<int>(r);
            if (lo >= count) lo = -1;
        } else {
            lo = static_cast<int>(std::floor(f));
            if (lo < 0 || lo >= count) lo = -1;
        }
        return lo;
    };
    std::vector<int> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int col = axis_cell(points[i].x, grid.origin.x, grid.cols);
        const int row = axis_cell(points[i].y, grid.origin.y, grid.rows);
        if (col < 0 || row < 0)
            throw Error(Errc::SiteOutsideGrid, "site " + std::to_string(i) + " lies outside the grid");
        out.push_back(grid.index(col, row));
    }
    return out;
}

std::vector<int> snap_sites(const WeightedScene& scene, const GridSpec& grid) { return snap_points(scene.sites, grid); }

WeightGrid build_weight_grid(const WeightedScene& scene, const GridSpec& spec, int samples_per_axis, unsigned threads) {
    WeightGrid g;
    g.spec = spec;
    g.node_weight.resize(static_cast<std::size_t>(spec.size()));
    parallel_for(g.node_weight.size(), threads, [&](std::size_t i) {
        g.node_weight[i] = cell_weight(spec.node(static_cast<int>(i)), spec.cell_side, scene, samples_per_axis);
    });
    g.site_index = snap_sites(scene, spec);
    return g;
}

LatticePath astar_cost(const WeightGrid& grid, int from, int to) {
    const GridSpec& spec = grid.spec;
    const int n = spec.size();
    if (from < 0 || from >= n || to < 0 || to >= n) throw Error(Errc::InvalidInput, "node index out of range");
    if (from == to) return {0.0, {from}};

    const double h_scale = grid.min_weight() * kHeuristicScale;
    const Point goal = spec.node(to);
    auto heuristic = [&](int i) { return h_scale * distance(spec.node(i), goal); };

    std::vector<double> g(static_cast<std::size_t>(n), kInf);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    using Entry = std::tuple<double, int, double>;  // f, node, g
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[from] = 0.0;
    open.emplace(heuristic(from), from, 0.0);

    while (!open.empty()) {
        const auto [f, node, g_node] = open.top();
        open.pop();
        if (g_node != g[node]) continue;
        if (node == to) break;
        const int col = spec.col_of(node), row = spec.row_of(node);
        for (const auto& [dc, dr] : kNeighborOffsets) {
            const int c = col + dc, r = row + dr;
            if (!spec.in_bounds(c, r)) continue;
            const int nb = spec.index(c, r);
            const double ng = g_node + step_length(spec.cell_side, dc, dr) * grid.node_weight[nb];
            if (ng < g[nb]) {
                g[nb] = ng;
                parent[nb] = node;
                open.emplace(ng + heuristic(nb), nb, ng);
            }
        }
    }
    if (g[to] == kInf) throw Error(Errc::NoPath, "no lattice path between nodes");

    LatticePath path;
    path.cost = g[to];
    for (int v = to; v != -1; v = parent[v]) path.nodes.push_back(v);
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

StarCost star_cost(const WeightGrid& grid, int center, std::span<const int> site_nodes) {
    StarCost out;
    out.costs.reserve(site_nodes.size());
    out.first_steps.reserve(site_nodes.size());
    for (int site : site_nodes) {
        if (site == center) {
            out.costs.push_back(0.0);
            out.first_steps.emplace_back();
            continue;
        }
        const LatticePath p = astar_cost(grid, center, site);
        out.total += p.cost;
        out.costs.push_back(p.cost);
        out.first_steps.emplace_back(p.nodes[1]);
    }
    return out;
}

std::optional<int> neighbor_slot(int dcol, int drow) {
    for (int s = 0; s < 8; ++s)
        if (kNeighborOffsets[s][0] == dcol && kNeighborOffsets[s][1] == drow) return s;
    return std::nullopt;
}

int direction_slot(Point direction) {
    const double angle = std::atan2(direction.y, direction.x);
    const long octant = std::lround(angle / (std::numbers::pi / 4.0));
    static constexpr int kOctantOffsets[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    const auto& o = kOctantOffsets[((octant % 8) + 8) % 8];
    return *neighbor_slot(o[0], o[1]);
}

int AnchorSet::total() const {
    int t = 0;
    for (int c : counts) t += c;
    return t;
}

std::vector<WeightedSite> AnchorSet::weighted_sites() const {
    std::vector<WeightedSite> out;
    for (int s = 0; s < 8; ++s)
        if (counts[s] > 0) out.push_back({coords[s], static_cast<double>(counts[s])});
    return out;
}

namespace {

// The node and its in-bounds 8-neighbours.
std::vector<int> node_block(const GridSpec& g, int node) {
    std::vector<int> out;
    const int col = g.col_of(node), row = g.row_of(node);
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
            if (g.in_bounds(col + dc, row + dr)) out.push_back(g.index(col + dc, row + dr));
    return out;
}

AnchorSet anchors_around(Point center, double spacing) {
    AnchorSet a;
    for (int s = 0; s < 8; ++s)
        a.coords[s] = center + Point(kNeighborOffsets[s][0] * spacing, kNeighborOffsets[s][1] * spacing);
    return a;
}

}  // namespace

AnchorSet anchor_weights(std::span<const int> first_steps, int center, const GridSpec& grid) {
    AnchorSet a = anchors_around(grid.node(center), grid.cell_side);
    const int cc = grid.col_of(center), cr = grid.row_of(center);
    for (int step : first_steps) {
        const auto slot = neighbor_slot(grid.col_of(step) - cc, grid.row_of(step) - cr);
        if (!slot) throw Error(Errc::FirstStepNotNeighbor, "first step is not a lattice neighbor of the center");
        ++a.counts[*slot];
    }
    return a;
}

Rect weighted_domain(const WeightedScene& scene, double n1) {
    if (scene.sites.size() >= 3) {
        try {
            return enclosing_rect(convex_hull(scene.sites));
        } catch (const Error& e) {
            if (e.code() != Errc::AllCollinear && e.code() != Errc::FewerThanThreePoints) throw;
        }
    }
    const Bounds b = bounds_of(scene.sites);
    return Rect(b.lo - Point(n1, n1), b.width() + 2.0 * n1, b.height() + 2.0 * n1);
}

WeightedCostModel::WeightedCostModel(const WeightedScene& scene, WeightGrid grid, int samples_per_axis,
                                     int route_refine, unsigned threads)
    : scene_(&scene), grid_(std::move(grid)), sample_pitch_(grid_.spec.cell_side / std::max(1, samples_per_axis)) {
    if (route_refine < 1) throw Error(Errc::InvalidInput, "route_refine must be >= 1");
    table_.resize(static_cast<std::size_t>(grid_.spec.size()));
    parallel_for(table_.size(), threads,
                 [&](std::size_t i) { table_[i] = star_cost(grid_, static_cast<int>(i), grid_.site_index); });

    if (route_refine == 1) {
        route_ = grid_;
    } else {
        GridSpec fine = grid_.spec;
        fine.cell_side /= route_refine;
        fine.cols *= route_refine;
        fine.rows *= route_refine;
        route_ = build_weight_grid(scene, fine, samples_per_axis, threads);
    }

    // Reverse search from each site: cost(u) = min over neighbors v of step * w(v) + cost(v).
    const GridSpec& rs = route_.spec;
    const std::size_t n_sites = scene.sites.size();
    to_site_.resize(n_sites);
    next_hop_.resize(n_sites);
    parallel_for(n_sites, threads, [&](std::size_t j) {
        std::vector<double> dist(static_cast<std::size_t>(rs.size()), kInf);
        std::vector<int> next(static_cast<std::size_t>(rs.size()), -1);
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
        // Seed the block around the site with its straight legs.
        const int src = route_.site_index[j];
        for (const int u : node_block(rs, src)) {
            dist[u] = segment_cost(rs.node(u), scene.sites[j]);
            open.emplace(dist[u], u);
        }
        while (!open.empty()) {
            const auto [d, v] = open.top();
            open.pop();
            if (d != dist[v]) continue;
            const int col = rs.col_of(v), row = rs.row_of(v);
            for (const auto& [dc, dr] : kNeighborOffsets) {
                const int c = col + dc, r = row + dr;
                if (!rs.in_bounds(c, r)) continue;
                const int u = rs.index(c, r);
                const double nd = d + step_length(rs.cell_side, dc, dr) * route_.node_weight[v];
                if (nd < dist[u]) {
                    dist[u] = nd;
                    next[u] = v;
                    open.emplace(nd, u);
                }
            }
        }
        to_site_[j] = std::move(dist);
        next_hop_[j] = std::move(next);
    });

}

double WeightedCostModel::segment_cost(Point a, Point b) const {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    const int k = std::max(1, static_cast<int>(std::ceil(len / sample_pitch_)));
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += scene_->weight_at(a + ((i + 0.5) / k) * (b - a));
    return len / k * sum;
}

int WeightedCostModel::nearest_node(Point c) const {
    const GridSpec& s = route_.spec;
    const int col = std::clamp(static_cast<int>(std::floor((c.x - s.origin.x) / s.cell_side)), 0, s.cols - 1);
    const int row = std::clamp(static_cast<int>(std::floor((c.y - s.origin.y) / s.cell_side)), 0, s.rows - 1);
    return s.index(col, row);
}

double WeightedCostModel::lattice_cost(Point c, std::size_t site, int& node) const {
    double best = kInf;
    node = -1;
    for (const int u : node_block(route_.spec, nearest_node(c))) {
        const double cost = segment_cost(c, route_.spec.node(u)) + to_site_[site][static_cast<std::size_t>(u)];
        if (cost < best) best = cost, node = u;
    }
    return best;
}

double WeightedCostModel::site_cost(Point c, std::size_t site) const {
    int node;
    return std::min(segment_cost(c, scene_->sites[site]), lattice_cost(c, site, node));
}

double WeightedCostModel::total(Point c) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < scene_->sites.size(); ++j) sum += site_cost(c, j);
    return sum;
}

std::vector<Point> WeightedCostModel::route(Point c, std::size_t site) const {
    const Point target = scene_->sites[site];
    int node;
    const double lattice = lattice_cost(c, site, node);
    std::vector<Point> out{c};
    if (segment_cost(c, target) > lattice) {
        for (int v = node; v != -1; v = next_hop_[site][static_cast<std::size_t>(v)]) out.push_back(route_.spec.node(v));
    }
    out.push_back(target);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Point> WeightedCostModel::departure(Point c, std::size_t site) const {
    const auto path = route(c, site);
    if (path.size() < 2) return std::nullopt;
    return path[1] - path[0];
}

namespace {

bool uniform_weights(std::span<const Subcell> cells, const WeightedScene& scene, int samples) {
    double lo = kInf, hi = -kInf;
    for (const auto& c : cells) {
        const double w = cell_weight(c.center_node, c.child.side, scene, samples);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    return hi - lo <= 1e-9;
}

// Fine lattice at half the child pitch over a refinement square: child
// centers land on odd nodes and the 8 anchors on the boundary/midlines.
WeightGrid anchored_lattice(const RefinementSquare& square, int s_c, const WeightedScene& scene, int samples) {
    const double half = square.side / s_c / 2.0;
    WeightGrid g;
    g.spec.cell_side = half;
    g.spec.cols = g.spec.rows = 2 * s_c + 1;
    g.spec.origin = square.min_corner() - Point(0.5 * half, 0.5 * half);
    g.node_weight.resize(static_cast<std::size_t>(g.spec.size()));
    for (int i = 0; i < g.spec.size(); ++i) g.node_weight[i] = cell_weight(g.spec.node(i), half, scene, samples);
    return g;
}

}  // namespace

SolveResult solve_weighted(const WeightedScene& scene, const WeightedOptions& opt) {
    scene.validate();
    check_epsilon(opt.epsilon, opt.n1);
    if (opt.mode != SolveMode::Full && opt.mode != SolveMode::Anchored)
        throw Error(Errc::InvalidInput, "weighted solver runs in full or anchored mode");
    const unsigned threads = resolve_threads(opt.threads);

    const GridSpec base = base_grid(weighted_domain(scene, opt.n1), opt.n1);
    WeightGrid wg = build_weight_grid(scene, base, opt.samples_per_axis, threads);
    const int s_c = subdivision_count(base.cols, base.rows);

    SolveResult result;
    result.mode = opt.mode;
    result.s_c = s_c;

    // Every site on one node: that node is the answer at base accuracy.
    if (std::all_of(wg.site_index.begin(), wg.site_index.end(), [&](int i) { return i == wg.site_index[0]; })) {
        result.q = base.node(wg.site_index[0]);
        result.objective = 0.0;
        result.iterations = 0;
        result.accuracy_bound = max_inaccuracy(1, opt.n1, std::max(2, s_c));
        result.trace.push_back({0, result.q, 0.0, opt.n1, base.size(), base.size()});
        return result;
    }

    check_subdivision(s_c);
    const int schedule_sc = opt.schedule_sc_override.value_or(s_c);
    const Schedule schedule = Schedule::make(opt.epsilon, opt.n1, schedule_sc);
    const WeightedCostModel model(scene, std::move(wg), opt.samples_per_axis, opt.route_refine, threads);
    const GridSpec& spec = model.grid().spec;

    // Level 0: every base node.
    std::vector<std::optional<double>> values(static_cast<std::size_t>(spec.size()));
    parallel_for(values.size(), threads, [&](std::size_t i) {
        values[i] = opt.mode == SolveMode::Full ? model.total(spec.node(static_cast<int>(i)))
                                                : model.lattice_star(static_cast<int>(i)).total;
    });
    const int best_node = static_cast<int>(*argmin_index(values));
    Point best = spec.node(best_node);
    double best_value = *values[best_node];
    result.trace.push_back({0, best, best_value, spec.cell_side, spec.size(), spec.size()});

    AnchorSet anchors;
    if (opt.mode == SolveMode::Anchored) {
        std::vector<int> steps;
        for (const auto& fs : model.lattice_star(best_node).first_steps)
            if (fs) steps.push_back(*fs);
        anchors = anchor_weights(steps, best_node, spec);
    }

    auto finish_with_handoff = [&](const AnchorSet& a, int level) {
        const auto sites = a.weighted_sites();
        result.handoff_level = level;
        result.iterations = level;
        result.accuracy_bound = max_inaccuracy(level, opt.n1, schedule_sc);
        if (sites.empty()) {
            result.q = best;
        } else {
            result.handoff = weiszfeld_solve(sites, opt.weiszfeld_tol, opt.weiszfeld_max_iter);
            result.q = result.handoff->q;
        }
        result.objective = model.total(result.q);
        return result;
    };

    double n = opt.n1;
    for (int level = 1; level <= schedule.iterations; ++level) {
        const RefinementSquare square = successor_square(best, n, level - 1);
        const auto children = subdivide(square, s_c);

        if (opt.handoff && uniform_weights(children, scene, opt.samples_per_axis)) {
            if (opt.mode == SolveMode::Full) {
                AnchorSet a = anchors_around(best, n);
                for (std::size_t j = 0; j < scene.sites.size(); ++j)
                    if (const auto dir = model.departure(best, j)) ++a.counts[direction_slot(*dir)];
                return finish_with_handoff(a, level);
            }
            return finish_with_handoff(anchors, level);
        }

        std::vector<std::optional<double>> child_values(children.size());
        if (opt.mode == SolveMode::Full) {
            parallel_for(children.size(), threads,
                         [&](std::size_t k) { child_values[k] = model.total(children[k].center_node); });
            const std::size_t k = *argmin_index(child_values);
            // The incumbent (center of this square) is kept unless a child beats it.
            if (*child_values[k] < best_value) {
                best = children[k].center_node;
                best_value = *child_values[k];
            }
        } else {
            const WeightGrid fine = anchored_lattice(square, s_c, scene, opt.samples_per_axis);
            auto anchor_node = [&](int slot) {
                return fine.spec.index(s_c + kNeighborOffsets[slot][0] * s_c, s_c + kNeighborOffsets[slot][1] * s_c);
            };
            auto candidate_node = [&](std::size_t k) {
                const int a = static_cast<int>(k) % s_c, b = static_cast<int>(k) / s_c;
                return fine.spec.index(2 * a + 1, 2 * b + 1);
            };
            parallel_for(children.size(), threads, [&](std::size_t k) {
                double sum = 0.0;
                for (int s = 0; s < 8; ++s)
                    if (anchors.counts[s] > 0)
                        sum += anchors.counts[s] * astar_cost(fine, candidate_node(k), anchor_node(s)).cost;
                child_values[k] = sum;
            });
            const std::size_t k = *argmin_index(child_values);
            best = children[k].center_node;
            best_value = *child_values[k];

            // Re-anchor on the neighbors of the new best, one child pitch away.
            AnchorSet next = anchors_around(best, children[k].child.side);
            const int from = candidate_node(k);
            for (int s = 0; s < 8; ++s) {
                if (anchors.counts[s] == 0) continue;
                const auto path = astar_cost(fine, from, anchor_node(s));
                const int step = path.nodes[1];
                const int slot = *neighbor_slot(fine.spec.col_of(step) - fine.spec.col_of(from),
                                                fine.spec.row_of(step) - fine.spec.row_of(from));
                next.counts[slot] += anchors.counts[s];
            }
            anchors = next;
        }
        const int count = static_cast<int>(children.size());
        result.trace.push_back({level, best, best_value, square.side, count, count});
        n = next_side(n, s_c);
    }

    result.q = best;
    result.iterations = schedule.iterations;
    result.accuracy_bound = schedule.accuracy_bound();
    result.objective = opt.mode == SolveMode::Full ? best_value : model.total(best);
    return result;
}

}  // namespace star
