#include <limits>
#include <random>

#include "oracles.hpp"
#include "star/median.hpp"
#include "support.hpp"

using namespace star;

namespace {

// Brute-force argmin of the weighted distance sum over an n x n lattice on [lo, hi]^2.
Point dense_argmin(const std::vector<WeightedSite>& sites, double lo, double hi, int n, double& pitch) {
    pitch = (hi - lo) / (n - 1);
    double best = std::numeric_limits<double>::infinity();
    Point arg;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = lo + i * pitch, y = lo + j * pitch;
            double f = 0.0;
            for (const auto& s : sites) f += s.weight * std::hypot(x - s.position.x, y - s.position.y);
            if (f < best) best = f, arg = Point(x, y);
        }
    return arg;
}

std::vector<WeightedSite> random_instance(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 10.0), w(0.1, 5.0);
    std::vector<WeightedSite> out;
    for (int i = 0; i < n; ++i) out.push_back({{u(rng), u(rng)}, w(rng)});
    return out;
}

}  // namespace

TEST_CASE("objective examples") {
    CHECK(objective({0, 0}, std::vector<WeightedSite>{{{3, 4}, 2.0}}) == doctest::Approx(10.0));
    CHECK(objective({1, 1}, std::vector<WeightedSite>{{{1, 1}, 5.0}, {{4, 5}, 1.0}}) == doctest::Approx(5.0));
    CHECK(objective({0, 0}, std::vector<WeightedSite>{{{1, 0}, 1.0}, {{-1, 0}, 1.0}}) == doctest::Approx(2.0));
    CHECK_ERRC(objective({0, 0}, std::vector<WeightedSite>{}), Errc::EmptySites);
}

TEST_CASE("weiszfeld step") {
    const std::vector<WeightedSite> square{{{-1, -1}, 1}, {{1, -1}, 1}, {{1, 1}, 1}, {{-1, 1}, 1}};
    const Point q(0.3, 0.1);
    CHECK(norm(weiszfeld_step(q, square)) < norm(q));

    const std::vector<WeightedSite> tri{{{0, 0}, 1}, {{2, 0}, 1}, {{1, std::sqrt(3.0)}, 1}};
    const Point c(1.0, std::sqrt(3.0) / 3.0);
    CHECK(distance(weiszfeld_step(c, tri), c) <= 1e-12);

    CHECK_ERRC(weiszfeld_step({2, 0}, tri), Errc::CoincidesWithSite);
    // A zero-weight site may coincide with q.
    std::vector<WeightedSite> with_zero = tri;
    with_zero.push_back({{5, 5}, 0.0});
    CHECK_NOTHROW(weiszfeld_step({5, 5}, with_zero));
}

TEST_CASE("fifty steps descend and land in the dense argmin cell") {
    std::mt19937 rng(21);
    const auto sites = random_instance(rng, 6);
    Point q = weighted_centroid(sites);
    double f = objective(q, sites);
    for (int k = 0; k < 50; ++k) {
        if (error_of([&] { q = weiszfeld_step(q, sites); })) break;  // landed on a site
        const double next = objective(q, sites);
        CHECK(next <= f + 1e-12);
        f = next;
    }
    double pitch = 0.0;
    const Point arg = dense_argmin(sites, 0.0, 10.0, 2000, pitch);
    CHECK(std::abs(q.x - arg.x) <= pitch);
    CHECK(std::abs(q.y - arg.y) <= pitch);
}

TEST_CASE("weiszfeld solve examples") {
    const std::vector<WeightedSite> tri{{{0, 0}, 1}, {{2, 0}, 1}, {{1, std::sqrt(3.0)}, 1}};
    const WeiszfeldResult r = weiszfeld_solve(tri);
    CHECK(r.converged);
    CHECK(distance(r.q, Point(1.0, std::sqrt(3.0) / 3.0)) <= 1e-6);

    const std::vector<WeightedSite> heavy{{{0, 0}, 10}, {{6, 5}, 1}, {{7, 6}, 1}, {{5, 7}, 1}};
    double pitch = 0.0;
    const Point arg = dense_argmin(heavy, -1.0, 9.0, 1001, pitch);
    CHECK(distance(arg, Point(0, 0)) <= 1e-9);
    CHECK(distance(weiszfeld_solve(heavy).q, Point(0, 0)) <= kDefaultWeiszfeldTol);

    const std::vector<WeightedSite> single{{{3, -2}, 1.0}, {{8, 8}, 0.0}};
    CHECK(weiszfeld_solve(single).q == Point(3, -2));

    CHECK_ERRC(weiszfeld_solve(std::vector<WeightedSite>{}), Errc::EmptySites);
    CHECK_ERRC(weiszfeld_solve(tri, {1, 1}, 0.0), Errc::NonPositiveTol);
}

TEST_CASE("descent, confinement and equivariance on random instances") {
    std::mt19937 rng(22);
    std::uniform_int_distribution<int> n(3, 12);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int t = 0; t < 1000; ++t) {
        const auto sites = random_instance(rng, n(rng));
        const WeiszfeldResult r = weiszfeld_solve(sites);
        for (std::size_t k = 1; k < r.trajectory.size(); ++k)
            CHECK(objective(r.trajectory[k], sites) <= objective(r.trajectory[k - 1], sites) + 1e-12);

        std::vector<Point> pts;
        for (const auto& s : sites) pts.push_back(s.position);
        CHECK(oracle::in_dilated_hull(convex_hull(pts), r.q, kGeomTol));

        // Run to a tight tolerance so the stopping point is the fixed point, not an
        // early exit that depends on rounding.
        if (t % 10 == 0) {
            const Point d(shift(rng), shift(rng));
            std::vector<WeightedSite> moved = sites;
            for (auto& s : moved) s.position = s.position + d;
            const Point a = weiszfeld_solve(sites, 1e-14, 1000000).q;
            const Point m = weiszfeld_solve(moved, 1e-14, 1000000).q;
            CHECK(distance(m, a + d) <= 1e-9);
        }
    }
}

TEST_CASE("zero-weight sites are inert") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-5.0, 15.0);
    for (int t = 0; t < 100; ++t) {
        const auto sites = random_instance(rng, 5);
        auto padded = sites;
        padded.push_back({{u(rng), u(rng)}, 0.0});
        const WeiszfeldResult a = weiszfeld_solve(sites), b = weiszfeld_solve(padded);
        CHECK(a.trajectory == b.trajectory);
        CHECK(a.q == b.q);
    }
}

TEST_CASE("weighted centroid and unit weights") {
    const std::vector<WeightedSite> s{{{0, 0}, 1}, {{4, 0}, 3}};
    CHECK(weighted_centroid(s) == Point(3, 0));
    const auto u = unit_weights(std::vector<Point>{{1, 2}, {3, 4}});
    REQUIRE(u.size() == 2);
    CHECK(u[1].weight == 1.0);
}
