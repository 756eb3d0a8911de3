#pragma once

#include <vector>

#include "star/geom.hpp"
#include "star/osp.hpp"
#include "star/wrp.hpp"

namespace star {

// Brute-force references. They share geometry primitives with the solvers
// but none of the refinement or heuristic search code.

struct OracleResult {
    Point q;
    double objective = 0.0;
    double resolution = 0.0;
    int evaluated = 0;
};

// Plain Dijkstra on the same 8-connected graph astar_cost searches.
std::vector<double> reference_dijkstra(const WeightGrid& grid, int source);

// Uniform lattice at the given pitch over the hull's bounding rectangle (the
// padded site box for degenerate inputs); star cost at every lattice point
// from fine-lattice Dijkstra runs. Throws ResolutionTooCoarse when the pitch
// leaves fewer than 4 lattice cells.
OracleResult dense_weighted_min(const WeightedScene& scene, double resolution, unsigned threads = 1,
                                int samples_per_axis = kDefaultSamplesPerAxis);

// Geodesic star cost at every lattice point outside the obstacles.
// Throws ResolutionTooCoarse or AllPointsBlocked.
OracleResult dense_obstacle_min(const ObstacleScene& scene, double resolution, unsigned threads = 1);

// Per-point error budget of a lattice minimum: weight x cell diagonal x sites.
double lipschitz_slack(double max_weight, double resolution, std::size_t sites);

}  // namespace star
