#pragma once

#include <optional>
#include <string>
#include <vector>

#include "star/geom.hpp"
#include "star/refine.hpp"
#include "star/scene_io.hpp"

namespace star {

struct SolveDrawing {
    std::optional<Polygon> hull;
    std::optional<GridSpec> grid;
    std::vector<std::vector<Point>> routes;  // one polyline per site
};

// Self-contained SVG: grid, regions tinted by weight, obstacles, hull,
// routes and the solution marker.
std::string render_solution_svg(const SceneFile& scene, const SolveResult& result, const SolveDrawing& drawing);

struct ManifoldRaster {
    GridSpec cells;                       // one raster cell per node
    std::vector<std::optional<double>> values;  // nullopt = blocked, drawn as a gap
};

std::string render_manifold_svg(const ManifoldRaster& raster, const SceneFile& scene, const std::optional<Polygon>& hull);

}  // namespace star
