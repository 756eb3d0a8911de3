#pragma once

#include <optional>
#include <span>
#include <vector>

#include "star/geom.hpp"
#include "star/refine.hpp"

namespace star {

struct ObstacleScene {
    std::vector<Point> sites;
    std::vector<Polygon> obstacles;  // open interiors are forbidden
    std::vector<double> site_weights;  // empty means 1 for every site

    // Throws EmptySites, InvalidInput for bad weights, or EndpointInObstacle
    // for a site strictly inside an obstacle.
    void validate() const;
    double weight(std::size_t site) const { return site_weights.empty() ? 1.0 : site_weights[site]; }
    bool blocked(Point p) const;  // strictly inside some obstacle
};

// Hull of sites and obstacle vertices. With fewer than 3 distinct or
// collinear points, the bounding box padded by `pad` stands in for it.
Polygon obstacle_hull(const ObstacleScene& scene, double pad);

enum class CellStatus { Active, InObstacle, Empty };

struct MaskedGrid {
    GridSpec spec;
    std::vector<CellStatus> status;
    int r = 0;  // Active + InObstacle

    CellStatus at(int col, int row) const;  // Empty outside the lattice
};

// Lattice anchored at the hull's bounding-box lower-left corner. A cell is
// kept when it overlaps the hull with positive area; kept cells whose center
// is strictly inside an obstacle become InObstacle. Throws CellLargerThanHull.
MaskedGrid build_masked_grid(const ObstacleScene& scene, double n);

struct GeodesicPath {
    double length = 0.0;
    std::vector<Point> waypoints;
};

// Shortest paths among polygonal obstacles over the visibility graph of the
// obstacle vertices. The vertex-to-vertex visibility is computed once; each
// query adds its own endpoints.
class GeodesicEngine {
public:
    explicit GeodesicEngine(const ObstacleScene& scene);

    const ObstacleScene& scene() const { return *scene_; }

    // Throws EndpointInObstacle or NoPath. Among optimal paths, the
    // lexicographically smallest waypoint sequence is returned.
    GeodesicPath path(Point a, Point b) const;
    double distance(Point a, Point b) const;
    // Geodesic distance from center to every site; nullopt for unreachable sites.
    // Zero-weight sites are not searched and report nullopt.
    std::vector<std::optional<double>> site_distances(Point center) const;
    // Weighted sum over sites. Throws NoPath naming the unreachable site indices.
    double star_cost(Point center) const;

private:
    bool visible(Point a, Point b) const;
    // Single-source distances over the vertex graph from a free point.
    std::vector<double> vertex_distances(Point from) const;

    const ObstacleScene* scene_;
    std::vector<Point> vertices_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<std::vector<int>> site_visible_;  // per site: visible vertex indices
};

GeodesicPath geodesic(Point a, Point b, const ObstacleScene& scene);
double star_geodesic_cost(Point center, const ObstacleScene& scene);

struct ObstacleOptions {
    double n = 1.0;
    double epsilon = 0.01;
    unsigned threads = 1;
    // Replaces the derived subdivision count everywhere (cutting and schedule).
    std::optional<int> subdivision_override;
    // Test hook: size the schedule with this count while cutting with the real one.
    std::optional<int> schedule_sc_override;
    SolveMode mode = SolveMode::Obstacles;  // Plain for obstacle-free scenes
};

SolveResult solve_obstacles(const ObstacleScene& scene, const ObstacleOptions& options);

}  // namespace star
