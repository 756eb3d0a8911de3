#include "star/commands.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "star/parallel.hpp"

namespace star {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json encode(Point p) { return json::array({p.x, p.y}); }

// Runs body and maps library errors onto exit codes with a one-line diagnostic.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

Rect domain_of(const SceneFile& scene, double n1) {
    if (scene.kind == SceneKind::Weighted) return weighted_domain(scene.weighted(), n1);
    return enclosing_rect(obstacle_hull(scene.obstacle(), n1));
}

std::optional<Polygon> hull_of(const SceneFile& scene, double n1) {
    if (scene.kind != SceneKind::Weighted) return obstacle_hull(scene.obstacle(), n1);
    try {
        return convex_hull(scene.sites);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

int exit_code(Errc code) {
    switch (code) {
    case Errc::Parse:
    case Errc::InvalidInput:
    case Errc::EmptySites: return 2;
    case Errc::FewerThanThreePoints:
    case Errc::AllCollinear:
    case Errc::CellLargerThanRect:
    case Errc::CellLargerThanHull:
    case Errc::SiteOutsideGrid:
    case Errc::EndpointInObstacle:
    case Errc::CoincidesWithSite: return 3;
    case Errc::EpsilonOutOfRange: return 4;
    case Errc::SubdivisionTooSmall: return 5;
    case Errc::NoPath: return 6;
    default: return 1;
    }
}

double default_n1(const SceneFile& scene) {
    const Bounds box = bounds_of(scene.hull_points());
    const double longest = std::max(box.width(), box.height()), shortest = std::min(box.width(), box.height());
    if (longest == 0.0) return 1.0;
    double n1 = longest / 8.0;
    if (shortest > 0.0) n1 = std::min(n1, shortest);
    return n1;
}

SolveRun run_solve(const SceneFile& scene, const SolveArgs& args) {
    const auto t0 = Clock::now();
    SolveRun run;
    run.n1 = args.n1.value_or(default_n1(scene));
    run.epsilon = args.epsilon.value_or(0.01 * run.n1);
    check_epsilon(run.epsilon, run.n1);

    if (scene.kind == SceneKind::Weighted) {
        WeightedOptions opt;
        opt.n1 = run.n1;
        opt.epsilon = run.epsilon;
        opt.mode = args.mode;
        opt.handoff = args.handoff;
        opt.samples_per_axis = args.samples_per_axis;
        opt.route_refine = args.route_refine;
        opt.threads = args.threads;
        opt.schedule_sc_override = args.schedule_sc_override;
        run.result = solve_weighted(scene.weighted(), opt);
    } else {
        ObstacleOptions opt;
        opt.n = run.n1;
        opt.epsilon = run.epsilon;
        opt.threads = args.threads;
        opt.mode = scene.kind == SceneKind::Plain ? SolveMode::Plain : SolveMode::Obstacles;
        opt.schedule_sc_override = args.schedule_sc_override;
        opt.subdivision_override = args.subdivision_override;
        const ObstacleScene os = scene.obstacle();
        run.result = solve_obstacles(os, opt);
        // Without obstacles the objective is the plain weighted median one,
        // so the refined point can be polished directly.
        if (args.handoff && scene.kind == SceneKind::Plain) {
            std::vector<WeightedSite> sites;
            for (std::size_t j = 0; j < os.sites.size(); ++j) sites.push_back({os.sites[j], os.weight(j)});
            run.result.handoff = weiszfeld_solve(sites, run.result.q);
            run.result.handoff_level = run.result.iterations;
            run.result.q = run.result.handoff->q;
            run.result.objective = objective(run.result.q, sites);
        }
    }
    run.file = ResultFile::from(run.result);
    run.file.timing_ms["solve"] = ms_since(t0);
    return run;
}

SolveDrawing solution_drawing(const SceneFile& scene, const SolveRun& run, const SolveArgs& args) {
    SolveDrawing d;
    d.hull = hull_of(scene, run.n1);
    if (scene.kind == SceneKind::Weighted) {
        const WeightedScene ws = scene.weighted();
        const GridSpec base = base_grid(weighted_domain(ws, run.n1), run.n1);
        d.grid = base;
        const unsigned threads = resolve_threads(args.threads);
        const WeightedCostModel model(ws, build_weight_grid(ws, base, args.samples_per_axis, threads),
                                      args.samples_per_axis, args.route_refine, threads);
        for (std::size_t j = 0; j < ws.sites.size(); ++j) d.routes.push_back(model.route(run.result.q, j));
    } else {
        const ObstacleScene os = scene.obstacle();
        d.grid = build_masked_grid(os, run.n1).spec;
        const GeodesicEngine engine(os);
        for (const Point& s : os.sites) d.routes.push_back(engine.path(run.result.q, s).waypoints);
    }
    return d;
}

std::string VerifyReport::to_json() const {
    json j;
    j["solver_q"] = encode(solver_q);
    j["solver_objective"] = solver_objective;
    j["oracle_q"] = encode(oracle_q);
    j["oracle_objective"] = oracle_objective;
    j["resolution"] = resolution;
    j["gap"] = gap();
    j["accuracy_bound"] = accuracy_bound;
    j["slack"] = slack;
    j["threshold"] = threshold();
    j["status"] = pass() ? "PASS" : "FAIL";
    return j.dump(2) + "\n";
}

VerifyReport run_verify(const SceneFile& scene, const SolveArgs& args, std::optional<double> resolution) {
    const SolveRun run = run_solve(scene, args);
    const double res = resolution.value_or(run.n1 / 8.0);
    VerifyReport rep;
    rep.solver_q = run.result.q;
    rep.solver_objective = run.result.objective;
    rep.accuracy_bound = run.result.accuracy_bound;
    rep.resolution = res;
    OracleResult oracle;
    if (scene.kind == SceneKind::Weighted) {
        const WeightedScene ws = scene.weighted();
        oracle = dense_weighted_min(ws, res, args.threads, args.samples_per_axis);
        rep.slack = lipschitz_slack(ws.max_weight(), res, ws.sites.size());
    } else {
        const ObstacleScene os = scene.obstacle();
        oracle = dense_obstacle_min(os, res, args.threads);
        double w = 0.0;
        for (std::size_t j = 0; j < os.sites.size(); ++j) w = std::max(w, os.weight(j));
        rep.slack = lipschitz_slack(w, res, os.sites.size());
    }
    rep.oracle_q = oracle.q;
    rep.oracle_objective = oracle.objective;
    return rep;
}

Manifold run_manifold(const SceneFile& scene, double resolution, const SolveArgs& args) {
    if (!(resolution > 0.0)) throw Error(Errc::InvalidInput, "resolution must be positive");
    const double n1 = args.n1.value_or(default_n1(scene));
    const Rect box = domain_of(scene, n1);
    Manifold m;
    m.hull = hull_of(scene, n1);
    GridSpec& g = m.raster.cells;
    g.origin = box.min;
    g.cell_side = resolution;
    g.cols = std::max(1, static_cast<int>(std::ceil(box.l / resolution - 1e-9)));
    g.rows = std::max(1, static_cast<int>(std::ceil(box.m / resolution - 1e-9)));
    m.raster.values.resize(static_cast<std::size_t>(g.size()));
    const unsigned threads = resolve_threads(args.threads);

    if (scene.kind == SceneKind::Weighted) {
        const WeightedScene ws = scene.weighted();
        const GridSpec base = base_grid(weighted_domain(ws, n1), n1);
        const WeightedCostModel model(ws, build_weight_grid(ws, base, args.samples_per_axis, threads),
                                      args.samples_per_axis, args.route_refine, threads);
        parallel_for(m.raster.values.size(), threads,
                     [&](std::size_t i) { m.raster.values[i] = model.total(g.node(static_cast<int>(i))); });
    } else {
        const ObstacleScene os = scene.obstacle();
        const GeodesicEngine engine(os);
        parallel_for(m.raster.values.size(), threads, [&](std::size_t i) {
            const Point c = g.node(static_cast<int>(i));
            if (os.blocked(c)) return;
            try {
                m.raster.values[i] = engine.star_cost(c);
            } catch (const Error& e) {
                if (e.code() != Errc::NoPath) throw;
            }
        });
    }
    m.argmin = argmin_index(m.raster.values);
    return m;
}

int cmd_hull(const std::string& scene_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const SceneFile scene = load_scene(scene_path);
        const std::vector<Point> pts = scene.kind == SceneKind::Obstacles ? scene.hull_points() : scene.sites;
        try {
            const Polygon hull = convex_hull(pts);
            json arr = json::array();
            for (const Point& v : hull.vertices()) arr.push_back(encode(v));
            out << arr.dump() << "\n";
            return 0;
        } catch (const Error& e) {
            if (e.code() == Errc::AllCollinear) {
                err << "error: collinear sites, no hull with positive area\n";
                return 3;
            }
            if (e.code() == Errc::FewerThanThreePoints) {
                err << "error: fewer than three sites, no hull with positive area\n";
                return 3;
            }
            throw;
        }
    });
}

int cmd_solve(const std::string& scene_path, const SolveArgs& args, const std::optional<std::string>& out_path,
              const std::optional<std::string>& svg_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = Clock::now();
        const SceneFile scene = load_scene(scene_path);
        SolveRun run = run_solve(scene, args);
        if (svg_path) {
            const auto t1 = Clock::now();
            write_text(*svg_path, render_solution_svg(scene, run.result, solution_drawing(scene, run, args)));
            run.file.timing_ms["svg"] = ms_since(t1);
        }
        run.file.timing_ms["total"] = ms_since(t0);
        const std::string text = emit_result(run.file);
        if (out_path)
            write_text(*out_path, text);
        else
            out << text;
        return 0;
    });
}

int cmd_verify(const std::string& scene_path, const SolveArgs& args, std::optional<double> resolution,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const VerifyReport rep = run_verify(load_scene(scene_path), args, resolution);
        out << rep.to_json();
        return rep.pass() ? 0 : 1;
    });
}

int cmd_manifold(const std::string& scene_path, const SolveArgs& args, std::optional<double> resolution,
                 const std::string& svg_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const SceneFile scene = load_scene(scene_path);
        const double res = resolution.value_or(args.n1.value_or(default_n1(scene)) / 8.0);
        const Manifold m = run_manifold(scene, res, args);
        write_text(svg_path, render_manifold_svg(m.raster, scene, m.hull));
        json j;
        j["resolution"] = res;
        j["cols"] = m.raster.cells.cols;
        j["rows"] = m.raster.cells.rows;
        if (m.argmin) {
            const GridSpec& g = m.raster.cells;
            const Point c = g.node(static_cast<int>(*m.argmin));
            const Point h(0.5 * res, 0.5 * res);
            j["argmin"] = encode(c);
            j["argmin_cell"] = json::array({encode(c - h), encode(c + h)});
            j["objective"] = *m.raster.values[*m.argmin];
        }
        out << j.dump(2) << "\n";
        return 0;
    });
}

}  // namespace star
