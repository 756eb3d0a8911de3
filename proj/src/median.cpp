#include "star/median.hpp"

#include <optional>

namespace star {

namespace {

void check_sites(std::span<const WeightedSite> sites) {
    if (sites.empty()) throw Error(Errc::EmptySites, "site list is empty");
    bool any_positive = false;
    for (const auto& s : sites) {
        if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
            throw Error(Errc::InvalidInput, "site weights must be finite and non-negative");
        any_positive = any_positive || s.weight > 0.0;
    }
    if (!any_positive) throw Error(Errc::InvalidInput, "at least one site needs a positive weight");
}

// Nearest positive-weight site within tol of q, if any.
std::optional<Point> nearby_site(Point q, std::span<const WeightedSite> sites, double tol) {
    std::optional<Point> hit;
    double best = tol;
    for (const auto& s : sites) {
        if (s.weight <= 0.0) continue;
        const double d = distance(q, s.position);
        if (d < best || (d == best && !hit)) {
            best = d;
            hit = s.position;
        }
    }
    return hit;
}

}  // namespace

double objective(Point q, std::span<const WeightedSite> sites) {
    if (sites.empty()) throw Error(Errc::EmptySites, "site list is empty");
    double total = 0.0;
    for (const auto& s : sites)
        if (s.weight > 0.0) total += s.weight * distance(q, s.position);
    return total;
}

Point weiszfeld_step(Point q, std::span<const WeightedSite> sites) {
    if (sites.empty()) throw Error(Errc::EmptySites, "site list is empty");
    double num_x = 0.0, num_y = 0.0, den = 0.0;
    for (const auto& s : sites) {
        if (s.weight <= 0.0) continue;
        const double d = distance(q, s.position);
        if (d == 0.0) throw Error(Errc::CoincidesWithSite, "iterate coincides with a site");
        const double k = s.weight / d;
        num_x += k * s.position.x;
        num_y += k * s.position.y;
        den += k;
    }
    return {num_x / den, num_y / den};
}

Point weighted_centroid(std::span<const WeightedSite> sites) {
    check_sites(sites);
    double x = 0.0, y = 0.0, w = 0.0;
    for (const auto& s : sites) {
        if (s.weight <= 0.0) continue;
        x += s.weight * s.position.x;
        y += s.weight * s.position.y;
        w += s.weight;
    }
    return {x / w, y / w};
}

std::vector<WeightedSite> unit_weights(std::span<const Point> points) {
    std::vector<WeightedSite> out;
    out.reserve(points.size());
    for (const Point& p : points) out.push_back({p, 1.0});
    return out;
}

WeiszfeldResult weiszfeld_solve(std::span<const WeightedSite> sites, Point q0, double tol, int max_iter) {
    check_sites(sites);
    if (!(tol > 0.0)) throw Error(Errc::NonPositiveTol, "tolerance must be positive");
    if (max_iter < 1) throw Error(Errc::InvalidInput, "max_iter must be positive");

    WeiszfeldResult out;
    out.q = q0;
    out.trajectory.push_back(q0);

    Point q = q0;
    for (int it = 1; it <= max_iter; ++it) {
        Point next;
        if (const auto site = nearby_site(q, sites, tol)) {
            Point best = *site;
            double best_f = objective(best, sites);
            auto consider = [&](Point from) {
                try {
                    const Point stepped = weiszfeld_step(from, sites);
                    const double f = objective(stepped, sites);
                    if (f < best_f) {
                        best = stepped;
                        best_f = f;
                    }
                } catch (const Error& e) {
                    if (e.code() != Errc::CoincidesWithSite) throw;
                }
            };
            if (q != *site) consider(q);
            const Point axes[4] = {{tol, 0.0}, {-tol, 0.0}, {0.0, tol}, {0.0, -tol}};
            for (const Point& a : axes) consider(*site + a);

            if (best == *site) {
                if (best_f > objective(q, sites)) {
                    out.q = q;
                    out.iterations = it - 1;
                    out.converged = true;
                    return out;
                }
                q = *site;
                out.trajectory.push_back(q);
                out.q = q;
                out.iterations = it;
                out.converged = true;
                return out;
            }
            next = best;
        } else {
            next = weiszfeld_step(q, sites);
        }
        // A rise beyond rounding noise means the iteration has stalled.
        if (objective(next, sites) > objective(q, sites) + kDescentSlack) {
            out.converged = true;
            break;
        }
        const double moved = distance(next, q);
        q = next;
        out.trajectory.push_back(q);
        out.iterations = it;
        if (moved < tol) {
            out.converged = true;
            break;
        }
    }
    out.q = q;
    return out;
}

WeiszfeldResult weiszfeld_solve(std::span<const WeightedSite> sites, double tol, int max_iter) {
    return weiszfeld_solve(sites, weighted_centroid(sites), tol, max_iter);
}

}  // namespace star
