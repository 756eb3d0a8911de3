#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "star/oracle.hpp"
#include "star/scene_io.hpp"
#include "star/svg.hpp"

namespace star {

// 0 ok, 2 parse/input, 3 degenerate geometry, 4 epsilon contract,
// 5 subdivision contract, 6 no path, 1 anything else.
int exit_code(Errc code);

// Longest bounding-box side / 8, capped by the shorter side when that is positive.
double default_n1(const SceneFile& scene);

struct SolveArgs {
    std::optional<double> n1;
    std::optional<double> epsilon;  // default 0.01 * n1
    SolveMode mode = SolveMode::Full;  // weighted scenes only
    bool handoff = false;
    unsigned threads = 0;  // 0: STAR_ROUTE_THREADS, else 1
    int samples_per_axis = kDefaultSamplesPerAxis;
    int route_refine = kDefaultRouteRefine;
    // Test hooks, see WeightedOptions / ObstacleOptions.
    std::optional<int> schedule_sc_override;
    std::optional<int> subdivision_override;  // obstacle and plain scenes
};

struct SolveRun {
    SolveResult result;
    ResultFile file;
    double n1 = 0.0;
    double epsilon = 0.0;
};

SolveRun run_solve(const SceneFile& scene, const SolveArgs& args);
// Hull, base grid and per-site routes from the solution.
SolveDrawing solution_drawing(const SceneFile& scene, const SolveRun& run, const SolveArgs& args);

struct VerifyReport {
    Point solver_q;
    double solver_objective = 0.0;
    Point oracle_q;
    double oracle_objective = 0.0;
    double resolution = 0.0;
    double accuracy_bound = 0.0;
    double slack = 0.0;

    double gap() const { return solver_objective - oracle_objective; }
    double threshold() const { return accuracy_bound + slack; }
    bool pass() const { return gap() <= threshold(); }
    std::string to_json() const;
};

// Solver against the matching dense-lattice oracle (default pitch n1 / 8).
VerifyReport run_verify(const SceneFile& scene, const SolveArgs& args, std::optional<double> resolution);

struct Manifold {
    ManifoldRaster raster;
    std::optional<std::size_t> argmin;  // raster cell index
    std::optional<Polygon> hull;
};

// Star-cost objective at every raster cell center over the hull's bounding box.
Manifold run_manifold(const SceneFile& scene, double resolution, const SolveArgs& args);

int cmd_hull(const std::string& scene_path, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& scene_path, const SolveArgs& args, const std::optional<std::string>& out_path,
              const std::optional<std::string>& svg_path, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& scene_path, const SolveArgs& args, std::optional<double> resolution,
               std::ostream& out, std::ostream& err);
int cmd_manifold(const std::string& scene_path, const SolveArgs& args, std::optional<double> resolution,
                 const std::string& svg_path, std::ostream& out, std::ostream& err);

}  // namespace star
