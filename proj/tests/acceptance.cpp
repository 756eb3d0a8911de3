// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "star/commands.hpp"
#include "star/median.hpp"
#include "star/oracle.hpp"
#include "star/osp.hpp"
#include "star/refine.hpp"
#include "star/scene_io.hpp"
#include "star/wrp.hpp"

using namespace star;

namespace {

struct Outcome {
    bool pass = true;
    int failures = 0;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) detail = why;
        if (!ok) ++failures;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

template <class E>
bool throws_code(Errc code, E&& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

// 1. Iteration counts against a level-by-level search.
Outcome iteration_formula() {
    Outcome o;
    const double n = 1.0;
    int checked = 0;
    for (int s_c = 3; s_c <= 12; ++s_c)
        for (int k = 1; k <= 100; ++k) {
            const double eps = 2.0 * n * std::numbers::sqrt2 * (k / 100.0);
            const int got = iterations_needed(eps, n, s_c), want = oracle::iterations_by_search(eps, n, s_c);
            o.require(got == want, fmt("eps=%g s_c=%g: formula %g", eps, s_c, got) + " vs search " + std::to_string(want));
            ++checked;
        }
    o.require(iterations_needed(2.0 * std::numbers::sqrt2, 1.0, 4) == 1, "eps = 2 n sqrt2 must give 1");
    o.require(iterations_needed(0.01, 1.0, 4) == 10, "eps_c = 0.01, s_c = 4 must give 10");
    if (o.pass) o.detail = std::to_string(checked) + " sweep points, boundary 1, eps_c=0.01/s_c=4 -> 10";
    return o;
}

// Plain scene spanning k x k cells of side 1 so the weighted grid gets s_c = k.
WeightedScene square_scene(int k) {
    WeightedScene s;
    s.sites = {{0.0, 0.0}, {static_cast<double>(k), 0.3}, {0.4 * k, static_cast<double>(k)}};
    return s;
}

// 2. Realized refinement-square diagonals.
Outcome inaccuracy_schedule() {
    Outcome o;
    const double n = 1.0, eps = 1e-7;
    int levels = 0;
    for (int s_c = 3; s_c <= 8; ++s_c) {
        WeightedOptions wo;
        wo.n1 = n;
        wo.epsilon = eps;
        const SolveResult wr = solve_weighted(square_scene(s_c), wo);
        o.require(wr.s_c == s_c, "weighted grid did not produce s_c = " + std::to_string(s_c));

        ObstacleScene plain;
        plain.sites = square_scene(s_c).sites;
        ObstacleOptions oo;
        oo.n = n;
        oo.epsilon = eps;
        oo.mode = SolveMode::Plain;
        oo.subdivision_override = s_c;
        const SolveResult pr = solve_obstacles(plain, oo);

        for (const SolveResult* r : {&wr, &pr}) {
            o.require(r->iterations >= 12, "fewer than 12 levels for s_c = " + std::to_string(s_c));
            for (int i = 1; i <= std::min(12, r->iterations); ++i) {
                const double realized = r->trace[static_cast<std::size_t>(i)].square_side * std::numbers::sqrt2;
                const double want = std::pow(2.0, i) * n * std::numbers::sqrt2 / std::pow(s_c, i - 1);
                o.require(std::abs(realized - want) <= 1e-9 * want,
                          fmt("s_c=%g level %g: diameter %.17g", s_c, i, realized));
                ++levels;
            }
            const double last = r->trace.back().square_side * std::numbers::sqrt2;
            o.require(last <= eps * (1.0 + 1e-12), fmt("final diameter %g exceeds eps for s_c=%g", last, s_c));
        }
    }
    if (o.pass) o.detail = std::to_string(levels) + " live levels matched within 1e-9 relative; final diameters <= eps";
    return o;
}

// 3. s_c = 2 is rejected and its inaccuracy never shrinks.
Outcome non_convergence_guard() {
    Outcome o;
    o.require(throws_code(Errc::SubdivisionTooSmall, [] { check_subdivision(2); }), "check_subdivision(2) accepted");
    o.require(throws_code(Errc::SubdivisionTooSmall, [] { iterations_needed(0.1, 1.0, 2); }),
              "iterations_needed accepted s_c = 2");
    WeightedScene s;
    s.sites = {{0.0, 0.0}, {2.0, 0.2}, {0.7, 2.0}};  // 2 x 2 base grid
    WeightedOptions wo;
    wo.n1 = 1.0;
    wo.epsilon = 0.1;
    o.require(throws_code(Errc::SubdivisionTooSmall, [&] { solve_weighted(s, wo); }), "2x2 weighted grid accepted");
    ObstacleScene p;
    p.sites = s.sites;
    ObstacleOptions oo;
    oo.n = 1.0;
    oo.epsilon = 0.1;
    oo.mode = SolveMode::Plain;
    o.require(throws_code(Errc::SubdivisionTooSmall, [&] { solve_obstacles(p, oo); }), "2x2 masked grid accepted");
    const double first = max_inaccuracy(1, 1.0, 2);
    for (int i = 1; i <= 60; ++i) o.require(max_inaccuracy(i, 1.0, 2) == first, "s_c = 2 inaccuracy changed with i");
    if (o.pass) o.detail = "rejected by schedule and both solvers; max_inaccuracy(i, 1, 2) == 2*sqrt2 for i = 1..60";
    return o;
}

// 4. A* against plain Dijkstra.
Outcome astar_equals_dijkstra() {
    Outcome o;
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> side(5, 30);
    std::uniform_real_distribution<double> w(0.5, 5.0);
    int pairs = 0;
    for (int g = 0; g < 50; ++g) {
        WeightGrid grid;
        grid.spec.cell_side = 0.7;
        grid.spec.cols = side(rng);
        grid.spec.rows = side(rng);
        for (int i = 0; i < grid.spec.size(); ++i) grid.node_weight.push_back(w(rng));
        std::uniform_int_distribution<int> node(0, grid.spec.size() - 1);
        for (int p = 0; p < 50; ++p) {
            const int a = node(rng), b = node(rng);
            const double want = reference_dijkstra(grid, a)[static_cast<std::size_t>(b)];
            const double got = astar_cost(grid, a, b).cost;
            o.require(got == want, fmt("grid %g: A* %.17g vs Dijkstra %.17g", g, got, want));
            ++pairs;
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs on 50 grids up to 30x30, exact equality";
    return o;
}

double final_cell_diagonal(const SolveResult& r) {
    return r.trace.back().square_side / r.s_c * std::numbers::sqrt2;
}

SolveResult plain_solve(const std::vector<Point>& sites) {
    ObstacleScene s;
    s.sites = sites;
    SceneFile f;
    f.kind = SceneKind::Plain;
    f.sites = sites;
    ObstacleOptions oo;
    oo.n = default_n1(f);
    oo.epsilon = 0.01 * oo.n;
    oo.mode = SolveMode::Plain;
    return solve_obstacles(s, oo);
}

SolveResult weighted_solve(const WeightedScene& s, SolveMode mode = SolveMode::Full) {
    SceneFile f;
    f.kind = SceneKind::Weighted;
    f.sites = s.sites;
    WeightedOptions wo;
    wo.n1 = default_n1(f);
    wo.epsilon = 0.01 * wo.n1;
    wo.mode = mode;
    return solve_weighted(s, wo);
}

SolveResult obstacle_solve(const ObstacleScene& s) {
    SceneFile f;
    f.kind = SceneKind::Obstacles;
    f.sites = s.sites;
    f.obstacles = s.obstacles;
    ObstacleOptions oo;
    oo.n = default_n1(f);
    oo.epsilon = 0.01 * oo.n;
    return solve_obstacles(s, oo);
}

// 5. Solutions stay in the relevant hull.
Outcome hull_confinement() {
    Outcome o;
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> ns(3, 10);
    int scenes = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<Point> sites;
        do {
            sites = oracle::random_sites(rng, ns(rng), 10.0);
        } while (!oracle::non_degenerate(sites));
        const SolveResult r = plain_solve(sites);
        o.require(oracle::in_dilated_hull(oracle::hull_of(sites), r.q, final_cell_diagonal(r)),
                  fmt("plain scene %g: q (%g, %g) outside hull", i, r.q.x, r.q.y));
        ++scenes;
    }
    for (int i = 0; i < 100; ++i) {
        const WeightedScene s = oracle::random_weighted(rng);
        std::vector<Point> pts = s.sites;
        for (const auto& reg : s.regions) pts.insert(pts.end(), reg.polygon.vertices().begin(), reg.polygon.vertices().end());
        for (SolveMode mode : {SolveMode::Full, SolveMode::Anchored}) {
            const SolveResult r = weighted_solve(s, mode);
            o.require(oracle::in_dilated_hull(oracle::hull_of(pts), r.q, final_cell_diagonal(r)),
                      fmt("weighted scene %g: q (%g, %g) outside hull", i, r.q.x, r.q.y) + " mode " + mode_name(mode));
        }
        ++scenes;
    }
    for (int i = 0; i < 100; ++i) {
        const ObstacleScene s = oracle::random_obstacles(rng);
        std::vector<Point> pts = s.sites;
        for (const auto& ob : s.obstacles) pts.insert(pts.end(), ob.vertices().begin(), ob.vertices().end());
        const SolveResult r = obstacle_solve(s);
        o.require(oracle::in_dilated_hull(oracle::hull_of(pts), r.q, final_cell_diagonal(r)),
                  fmt("obstacle scene %g: q (%g, %g) outside hull", i, r.q.x, r.q.y));
        ++scenes;
    }
    if (o.pass) o.detail = std::to_string(scenes) + " scenes (plain, weighted full+anchored, obstacles) confined";
    return o;
}

// 6. Plain plane reproduces the geometric median.
Outcome plain_equivalence() {
    Outcome o;
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> ns(3, 10);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<Point> sites;
        do {
            sites = oracle::random_sites(rng, ns(rng), 10.0);
        } while (!oracle::non_degenerate(sites));
        const Point median = weiszfeld_solve(unit_weights(sites)).q;

        const SolveResult p = plain_solve(sites);
        const double eps_p = 0.01 * p.trace[0].square_side;
        worst = std::max(worst, distance(p.q, median) / (eps_p + 1e-6));
        o.require(distance(p.q, median) <= eps_p + 1e-6,
                  fmt("obstacle-free scene %g: |q - median| = %g > %g", i, distance(p.q, median), eps_p + 1e-6));

        WeightedScene ws;
        ws.sites = sites;
        ws.default_weight = 1.0 + (i % 3);
        const SolveResult w = weighted_solve(ws);
        const double eps_w = 0.01 * w.trace[0].square_side;
        worst = std::max(worst, distance(w.q, median) / (eps_w + 1e-6));
        o.require(distance(w.q, median) <= eps_w + 1e-6,
                  fmt("uniform-weight scene %g: |q - median| = %g > %g", i, distance(w.q, median), eps_w + 1e-6));
    }
    if (o.pass) o.detail = fmt("50 obstacle-free + 50 uniform-weight scenes; worst |q - median| / (eps + 1e-6) = %.3f", worst);
    return o;
}

// 7. Weiszfeld: symmetry, monotone descent, dense-lattice agreement.
Outcome weiszfeld_correctness() {
    Outcome o;
    const std::vector<Point> tri{{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}};
    const Point centroid(1.0, std::sqrt(3.0) / 3.0);
    o.require(distance(weiszfeld_solve(unit_weights(tri)).q, centroid) <= 1e-6, "equilateral median is not the centroid");

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> ns(3, 12);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    for (int i = 0; i < 1000; ++i) {
        std::vector<WeightedSite> sites;
        for (const Point& p : oracle::random_sites(rng, ns(rng), 10.0)) sites.push_back({p, w(rng)});
        const WeiszfeldResult r = weiszfeld_solve(sites);
        for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
            const double before = objective(r.trajectory[k - 1], sites), after = objective(r.trajectory[k], sites);
            o.require(after <= before + kDescentSlack, fmt("instance %g step %g rose by %g", i, k, after - before));
        }
    }

    std::uniform_int_distribution<int> iw(1, 4);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        ObstacleScene s;
        s.sites = oracle::random_sites(rng, 5, 10.0);
        std::vector<WeightedSite> sites;
        for (const Point& p : s.sites) {
            s.site_weights.push_back(iw(rng));
            sites.push_back({p, s.site_weights.back()});
        }
        const Point q = weiszfeld_solve(sites).q;
        // Lattice plus the sites themselves: a weighted median often sits on a site.
        const OracleResult dense = dense_obstacle_min(s, 0.05);
        auto f = [&](Point c) {
            double sum = 0.0;
            for (const auto& ws : sites) sum += ws.weight * std::hypot(c.x - ws.position.x, c.y - ws.position.y);
            return sum;
        };
        Point best = dense.q;
        for (const auto& ws : sites)
            if (f(ws.position) < f(best)) best = ws.position;
        const double off = std::max(std::abs(q.x - best.x), std::abs(q.y - best.y));
        worst = std::max(worst, off / dense.resolution);
        o.require(off <= dense.resolution, fmt("instance %g: oracle argmin %g cells away", i, off / dense.resolution));
    }
    if (o.pass) o.detail = fmt("centroid ok; 1000 monotone runs; worst oracle offset %.3f cells", worst);
    return o;
}

// 8. Geodesics.
Outcome geodesic_correctness() {
    Outcome o;
    std::mt19937 rng(8);
    ObstacleScene empty;
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const Point a(u(rng), u(rng)), b(u(rng), u(rng));
        o.require(geodesic(a, b, empty).length == distance(a, b), "unobstructed length is not the straight distance");
    }
    ObstacleScene sq;
    sq.obstacles.push_back(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    const double hand = geodesic({-1.0, 0.5}, {2.0, 0.5}, sq).length;
    o.require(std::abs(hand - (1.0 + 2.0 * std::sqrt(1.25))) <= 1e-9, fmt("square case length %.12g", hand));

    double worst = 0.0;
    const double h = 0.05;
    for (int i = 0; i < 20; ++i) {
        const ObstacleScene s = oracle::random_obstacles(rng, 3, 3);
        const Point a = s.sites[0], b = s.sites[1];
        const double exact = geodesic(a, b, s).length;
        const double grid = oracle::grid_geodesic(s.obstacles, a, b, h, {-0.5, -0.5}, {10.5, 10.5});
        const double tol = 0.03 * exact + 2.0 * h;
        worst = std::max(worst, std::abs(grid - exact) / tol);
        o.require(std::abs(grid - exact) <= tol, fmt("scene %g: exact %g vs lattice %g", i, exact, grid));
    }
    if (o.pass) o.detail = fmt("straight lines exact; square case 1+2*sqrt(1.25); worst lattice gap %.3f of budget", worst);
    return o;
}

// 9. Solver never worse than the brute force beyond the stated budget.
Outcome oracle_gap() {
    Outcome o;
    std::mt19937 rng(9);
    double worst = -1e300;
    for (int i = 0; i < 20; ++i) {
        const WeightedScene s = oracle::random_weighted(rng);
        SceneFile f;
        f.kind = SceneKind::Weighted;
        f.sites = s.sites;
        f.regions = s.regions;
        const VerifyReport rep = run_verify(f, {}, std::nullopt);
        worst = std::max(worst, rep.gap() - rep.threshold());
        o.require(rep.pass(), fmt("weighted scene %g: gap %g > %g", i, rep.gap(), rep.threshold()));
    }
    for (int i = 0; i < 20; ++i) {
        const ObstacleScene s = oracle::random_obstacles(rng);
        SceneFile f;
        f.kind = SceneKind::Obstacles;
        f.sites = s.sites;
        f.obstacles = s.obstacles;
        const VerifyReport rep = run_verify(f, {}, std::nullopt);
        worst = std::max(worst, rep.gap() - rep.threshold());
        o.require(rep.pass(), fmt("obstacle scene %g: gap %g > %g", i, rep.gap(), rep.threshold()));
    }
    if (o.pass) o.detail = fmt("40 scenes within budget; worst gap - budget = %.4g", worst);
    return o;
}

// 10. Every refinement level tallies exactly s_c^2 candidates.
Outcome candidate_count() {
    Outcome o;
    ObstacleScene s;
    s.sites = {{0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}, {0.0, 10.0}};
    s.obstacles.push_back(Polygon({{4, 4}, {6, 4}, {6, 6}, {4, 6}}));
    ObstacleOptions oo;
    oo.n = 1.0;
    oo.epsilon = 0.001;
    oo.subdivision_override = 4;
    const SolveResult r = solve_obstacles(s, oo);
    int levels = 0, skipped = 0;
    for (const auto& t : r.trace) {
        if (t.level == 0) continue;
        o.require(t.candidates == 16, "forced s_c = 4 level tallied " + std::to_string(t.candidates));
        skipped += t.candidates - t.evaluated;
        ++levels;
    }
    std::mt19937 rng(10);
    for (int i = 0; i < 10; ++i) {
        for (const SolveResult& x : {obstacle_solve(oracle::random_obstacles(rng)), weighted_solve(oracle::random_weighted(rng))})
            for (const auto& t : x.trace)
                if (t.level > 0) {
                    o.require(t.candidates == x.s_c * x.s_c, "level tally differs from s_c^2");
                    ++levels;
                }
    }
    if (o.pass) o.detail = std::to_string(levels) + " levels at s_c^2 (16 under forced s_c = 4, " +
                           std::to_string(skipped) + " skipped candidates counted)";
    return o;
}

std::string strip_timing(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    j.erase("timing_ms");
    return j.dump();
}

// 11. Byte-identical results across repeats and thread counts.
Outcome determinism(const std::string& cli) {
    Outcome o;
    std::mt19937 rng(11);
    std::vector<SceneFile> scenes;
    {
        SceneFile f;
        const WeightedScene s = oracle::random_weighted(rng);
        f.kind = SceneKind::Weighted;
        f.sites = s.sites;
        f.regions = s.regions;
        scenes.push_back(f);
        SceneFile g;
        const ObstacleScene t = oracle::random_obstacles(rng);
        g.kind = SceneKind::Obstacles;
        g.sites = t.sites;
        g.obstacles = t.obstacles;
        scenes.push_back(g);
        SceneFile h;
        h.kind = SceneKind::Plain;
        h.sites = oracle::random_sites(rng, 7, 10.0);
        scenes.push_back(h);
    }
    int runs = 0;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        for (SolveMode mode : {SolveMode::Full, SolveMode::Anchored}) {
            std::string first;
            for (unsigned threads : {1u, 4u, 1u, 4u}) {
                SolveArgs a;
                a.threads = threads;
                a.mode = mode;
                const std::string text = emit_result(run_solve(scenes[i], a).file, false);
                if (first.empty()) first = text;
                o.require(text == first, "scene " + std::to_string(i) + " differs at threads=" + std::to_string(threads));
                ++runs;
            }
        }
        if (!cli.empty()) {
            const std::filesystem::path dir = std::filesystem::temp_directory_path() / "star_route_determinism";
            std::filesystem::create_directories(dir);
            const std::string path = (dir / ("scene_" + std::to_string(i) + ".json")).string();
            write_text(path, emit_scene(scenes[i]));
            std::string first;
            for (const char* threads : {"1", "4", "1", "4"}) {
                const std::string out = (dir / ("result_" + std::to_string(i) + "_" + threads + ".json")).string();
                const std::string cmd = cli + " solve " + path + " --threads " + threads + " --out " + out;
                o.require(std::system(cmd.c_str()) == 0, "CLI run failed: " + cmd);
                const std::string text = strip_timing(read_text(out));
                if (first.empty()) first = text;
                o.require(text == first, "CLI output differs for " + path + " at --threads " + threads);
                ++runs;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(runs) + " runs byte-identical (timing excluded)";
    return o;
}

// 12. The eight weighted anchors around the origin.
Outcome anchor_manifold() {
    Outcome o;
    // Clockwise from (-1, 1).
    const int weights[8] = {1, 0, 1, 2, 4, 2, 1, 2};
    AnchorSet anchors;
    for (int k = 0; k < 8; ++k) {
        const int slot = kClockwiseFromNW[k];
        anchors.coords[slot] = Point(kNeighborOffsets[slot][0], kNeighborOffsets[slot][1]);
        anchors.counts[slot] = weights[k];
    }
    const WeiszfeldResult w = weiszfeld_solve(anchors.weighted_sites());
    o.require(w.converged, "iteration did not converge");
    o.require(std::abs(w.q.x) < 1.0 && std::abs(w.q.y) < 1.0, fmt("fixed point (%g, %g) outside the anchor square", w.q.x, w.q.y));

    SceneFile f;
    f.kind = SceneKind::Plain;
    for (int s = 0; s < 8; ++s) {
        f.sites.push_back(anchors.coords[s]);
        f.weights.push_back(anchors.counts[s]);
    }
    const Manifold m = run_manifold(f, 0.05, {});
    o.require(m.argmin.has_value(), "manifold has no minimum");
    if (m.argmin) {
        const Point c = m.raster.cells.node(static_cast<int>(*m.argmin));
        const double h = 0.5 * m.raster.cells.cell_side;
        o.require(std::abs(w.q.x - c.x) <= h && std::abs(w.q.y - c.y) <= h,
                  fmt("argmin cell centered (%g, %g) misses fixed point", c.x, c.y));
    }
    if (o.pass) o.detail = fmt("fixed point (%.6f, %.6f) after %g iterations, inside the argmin cell", w.q.x, w.q.y, w.iterations);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "iteration formula", 1.0, iteration_formula},
        {2, "inaccuracy schedule", 0.0, inaccuracy_schedule},
        {3, "non-convergence guard", 0.0, non_convergence_guard},
        {4, "A* equals Dijkstra", 10.0, astar_equals_dijkstra},
        {5, "hull confinement", 120.0, hull_confinement},
        {6, "plain-plane equivalence", 0.0, plain_equivalence},
        {7, "Weiszfeld correctness", 0.0, weiszfeld_correctness},
        {8, "geodesic correctness", 0.0, geodesic_correctness},
        {9, "end-to-end oracle gap", 600.0, oracle_gap},
        {10, "candidate-count bound", 0.0, candidate_count},
        {11, "determinism", 0.0, [&] { return determinism(cli); }},
        {12, "eight-anchor manifold", 0.0, anchor_manifold},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0.0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += fmt(" (took %.2f s, limit %.0f s)", secs, c.limit_s);
        }
        if (o.failures > 1) o.detail += " [" + std::to_string(o.failures) + " failed checks]";
        if (!o.pass) ++failed;
        std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
