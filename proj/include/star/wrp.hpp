#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "star/geom.hpp"
#include "star/refine.hpp"

namespace star {

struct WeightedRegion {
    Polygon polygon;
    double weight = 1.0;

    friend bool operator==(const WeightedRegion&, const WeightedRegion&) = default;
};

struct WeightedScene {
    std::vector<Point> sites;
    std::vector<WeightedRegion> regions;  // later entries take precedence where regions overlap
    double default_weight = 1.0;

    // Throws InvalidInput on empty sites or non-positive weights.
    void validate() const;
    // Weight of the last region containing p (boundary included), else default_weight.
    double weight_at(Point p) const;
    double min_weight() const;
    double max_weight() const;
};

inline constexpr int kDefaultSamplesPerAxis = 8;
// Routing lattice pitch is the base cell side divided by this.
inline constexpr int kDefaultRouteRefine = 8;

// Mean weight over k x k stratified samples at cell offsets ((a + 0.5) / k, (b + 0.5) / k).
double cell_weight(Point center, double side, const WeightedScene& scene, int samples_per_axis = kDefaultSamplesPerAxis);

struct WeightGrid {
    GridSpec spec;
    std::vector<double> node_weight;
    std::vector<int> site_index;  // snapped node per scene site

    double min_weight() const;
};

WeightGrid build_weight_grid(const WeightedScene& scene, const GridSpec& spec,
                             int samples_per_axis = kDefaultSamplesPerAxis, unsigned threads = 1);

// Node whose cell contains each point; points on a shared edge or corner go to
// the lowest row-major index. Throws SiteOutsideGrid.
std::vector<int> snap_points(std::span<const Point> points, const GridSpec& grid);
std::vector<int> snap_sites(const WeightedScene& scene, const GridSpec& grid);

struct LatticePath {
    double cost = 0.0;
    std::vector<int> nodes;  // from .. to inclusive
};

// 8-connected lattice; moving onto node b costs step length * node_weight(b).
// Euclidean distance times the minimum node weight is the (monotone) heuristic.
LatticePath astar_cost(const WeightGrid& grid, int from, int to);

struct StarCost {
    double total = 0.0;
    std::vector<double> costs;                    // per site
    std::vector<std::optional<int>> first_steps;  // per site; empty when snapped onto the center
};

StarCost star_cost(const WeightGrid& grid, int center, std::span<const int> site_nodes);

// Neighbor slots in the fixed order NW, N, NE, W, E, SW, S, SE.
inline constexpr std::array<std::array<int, 2>, 8> kNeighborOffsets{{
    {-1, 1}, {0, 1}, {1, 1}, {-1, 0}, {1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
// Slots listed clockwise starting from NW.
inline constexpr std::array<int, 8> kClockwiseFromNW{0, 1, 2, 4, 7, 6, 5, 3};

std::optional<int> neighbor_slot(int dcol, int drow);
// Slot whose direction is closest in angle to (dx, dy).
int direction_slot(Point direction);

struct AnchorSet {
    std::array<Point, 8> coords{};
    std::array<int, 8> counts{};

    int total() const;
    std::vector<WeightedSite> weighted_sites() const;  // zero-count anchors dropped
};

// Throws FirstStepNotNeighbor.
AnchorSet anchor_weights(std::span<const int> first_steps, int center, const GridSpec& grid);

struct WeightedOptions {
    double n1 = 1.0;
    double epsilon = 0.01;
    SolveMode mode = SolveMode::Full;
    bool handoff = false;
    int samples_per_axis = kDefaultSamplesPerAxis;
    int route_refine = kDefaultRouteRefine;
    double weiszfeld_tol = kDefaultWeiszfeldTol;
    int weiszfeld_max_iter = kDefaultWeiszfeldMaxIter;
    unsigned threads = 1;
    // Test hook: pretend this subdivision count when sizing the schedule
    // (iteration count and accuracy bound) while still cutting with the real one.
    std::optional<int> schedule_sc_override;
};

// Rectangle the base grid covers: hull bounding box, or the site bounding box
// padded by n1 when fewer than 3 sites or all collinear.
Rect weighted_domain(const WeightedScene& scene, double n1);

// Connection cost of a candidate to each site: the cheaper of a straight
// segment (weight integrated along it) and the best route made of a straight
// leg onto one of the 3 x 3 routing nodes around the candidate, a lattice path,
// and a straight leg from one of the 3 x 3 nodes around the site. The routing lattice covers the base
// grid at 1/route_refine of its pitch; route_refine = 1 routes on the base
// lattice itself.
class WeightedCostModel {
public:
    WeightedCostModel(const WeightedScene& scene, WeightGrid grid, int samples_per_axis,
                      int route_refine = kDefaultRouteRefine, unsigned threads = 1);

    const WeightGrid& grid() const { return grid_; }
    const WeightGrid& routing() const { return route_; }
    const StarCost& lattice_star(int node) const { return table_[static_cast<std::size_t>(node)]; }

    double site_cost(Point c, std::size_t site) const;
    double total(Point c) const;
    // Polyline the cheaper connection follows.
    std::vector<Point> route(Point c, std::size_t site) const;
    // Direction in which the connection leaves c; nullopt when c is the site.
    std::optional<Point> departure(Point c, std::size_t site) const;
    double segment_cost(Point a, Point b) const;
    // Routing node whose cell contains c (clamped to the lattice).
    int nearest_node(Point c) const;

private:
    double lattice_cost(Point c, std::size_t site, int& node) const;

    const WeightedScene* scene_;
    WeightGrid grid_;
    WeightGrid route_;
    std::vector<StarCost> table_;
    std::vector<std::vector<double>> to_site_;  // per site, cost from every routing node incl. the final leg
    std::vector<std::vector<int>> next_hop_;    // per site, next routing node toward it
    double sample_pitch_;
};

SolveResult solve_weighted(const WeightedScene& scene, const WeightedOptions& options);

}  // namespace star
