#pragma once

#include <span>
#include <vector>

#include "star/geom.hpp"

namespace star {

struct WeightedSite {
    Point position;
    double weight = 1.0;
};

inline constexpr double kDefaultWeiszfeldTol = 1e-9;
inline constexpr int kDefaultWeiszfeldMaxIter = 10000;
// Largest objective rise an accepted step may show (rounding noise).
inline constexpr double kDescentSlack = 1e-12;

// Sum of weight * Euclidean distance. Throws EmptySites.
double objective(Point q, std::span<const WeightedSite> sites);

// One inverse-distance-weighted averaging step. Throws CoincidesWithSite when
// q sits exactly on a positive-weight site; zero-weight sites are skipped.
Point weiszfeld_step(Point q, std::span<const WeightedSite> sites);

struct WeiszfeldResult {
    Point q;
    int iterations = 0;
    bool converged = false;
    std::vector<Point> trajectory;  // q0 followed by every accepted iterate
};

// Iterates until the step displacement drops below tol. An iterate that
// lands within tol of a positive-weight site is snapped to it and compared
// against steps taken from the four axis perturbations (distance tol); the
// best of those continues, or the site is returned if nothing beats it.
// A step that would raise the objective by more than kDescentSlack ends the
// iteration.
WeiszfeldResult weiszfeld_solve(std::span<const WeightedSite> sites, Point q0,
                                double tol = kDefaultWeiszfeldTol, int max_iter = kDefaultWeiszfeldMaxIter);

// Starts from the weighted centroid.
WeiszfeldResult weiszfeld_solve(std::span<const WeightedSite> sites, double tol = kDefaultWeiszfeldTol,
                                int max_iter = kDefaultWeiszfeldMaxIter);

Point weighted_centroid(std::span<const WeightedSite> sites);

std::vector<WeightedSite> unit_weights(std::span<const Point> points);

}  // namespace star
