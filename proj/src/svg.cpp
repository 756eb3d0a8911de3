#include "star/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

namespace star {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// World-to-canvas mapping with y pointing up.
class Canvas {
public:
    Canvas(double min_x, double min_y, double max_x, double max_y) : min_x_(min_x), max_y_(max_y) {
        const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
        scale_ = (kCanvas - 2.0 * kMargin) / span;
        width_ = (max_x - min_x) * scale_ + 2.0 * kMargin;
        height_ = (max_y - min_y) * scale_ + 2.0 * kMargin;
    }

    double x(double wx) const { return (wx - min_x_) * scale_ + kMargin; }
    double y(double wy) const { return (max_y_ - wy) * scale_ + kMargin; }
    double len(double w) const { return w * scale_; }

    std::string open() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
               "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    std::string points(std::span<const Point> pts) const {
        std::string out;
        for (const Point& p : pts) out += num(x(p.x)) + "," + num(y(p.y)) + " ";
        if (!out.empty()) out.pop_back();
        return out;
    }

    std::string rect(Point min_corner, double side, const std::string& attrs) const {
        return "<rect x=\"" + num(x(min_corner.x)) + "\" y=\"" + num(y(min_corner.y + side)) + "\" width=\"" +
               num(len(side)) + "\" height=\"" + num(len(side)) + "\" " + attrs + "/>\n";
    }

private:
    double min_x_, max_y_;
    double scale_ = 1.0, width_ = 0.0, height_ = 0.0;
};

struct Extent {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;

    void add(Point p) {
        lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    }
    void add(const GridSpec& g) {
        add(g.origin);
        add(g.origin + Point(g.width(), g.height()));
    }
    Canvas canvas() const {
        const double pad = 0.02 * std::max(hi_x - lo_x, hi_y - lo_y);
        return {lo_x - pad, lo_y - pad, hi_x + pad, hi_y + pad};
    }
};

std::string rgb(double r, double g, double b) {
    char buf[16];
    auto c = [](double v) { return static_cast<int>(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5); };
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
    return buf;
}

// Five-stop perceptual ramp, dark (low) to yellow (high).
std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 5> kStops{{{0.267, 0.005, 0.329},
                                                                  {0.229, 0.322, 0.546},
                                                                  {0.128, 0.567, 0.551},
                                                                  {0.369, 0.789, 0.383},
                                                                  {0.993, 0.906, 0.144}}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    const auto& a = kStops[i];
    const auto& b = kStops[i + 1];
    return rgb(a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]), a[2] + f * (b[2] - a[2]));
}

std::string site_markers(const Canvas& cv, std::span<const Point> sites) {
    std::string out;
    for (const Point& p : sites)
        out += "<circle cx=\"" + num(cv.x(p.x)) + "\" cy=\"" + num(cv.y(p.y)) +
               "\" r=\"4\" fill=\"#d62728\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    return out;
}

std::string hull_outline(const Canvas& cv, const std::optional<Polygon>& hull) {
    if (!hull) return {};
    return "<polygon points=\"" + cv.points(hull->vertices()) +
           "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
}

}  // namespace

std::string render_solution_svg(const SceneFile& scene, const SolveResult& result, const SolveDrawing& d) {
    Extent b;
    for (const Point& p : scene.sites) b.add(p);
    for (const auto& r : scene.regions)
        for (const Point& v : r.polygon.vertices()) b.add(v);
    for (const auto& o : scene.obstacles)
        for (const Point& v : o.vertices()) b.add(v);
    if (d.grid) b.add(*d.grid);
    b.add(result.q);
    const Canvas cv = b.canvas();

    std::string out = cv.open();
    if (!scene.regions.empty()) {
        double hi = scene.default_weight.value_or(1.0);
        for (const auto& r : scene.regions) hi = std::max(hi, r.weight);
        for (const auto& r : scene.regions) {
            const double shade = 0.85 - 0.6 * (r.weight / hi);
            out += "<polygon points=\"" + cv.points(r.polygon.vertices()) + "\" fill=\"" + rgb(shade, shade, 1.0) +
                   "\" stroke=\"#6666aa\" stroke-width=\"0.5\"/>\n";
        }
    }
    if (d.grid) {
        const GridSpec& g = *d.grid;
        out += "<g stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
        for (int c = 0; c <= g.cols; ++c) {
            const double x = cv.x(g.origin.x + c * g.cell_side);
            out += "<line x1=\"" + num(x) + "\" y1=\"" + num(cv.y(g.origin.y)) + "\" x2=\"" + num(x) + "\" y2=\"" +
                   num(cv.y(g.origin.y + g.height())) + "\"/>\n";
        }
        for (int r = 0; r <= g.rows; ++r) {
            const double y = cv.y(g.origin.y + r * g.cell_side);
            out += "<line x1=\"" + num(cv.x(g.origin.x)) + "\" y1=\"" + num(y) + "\" x2=\"" +
                   num(cv.x(g.origin.x + g.width())) + "\" y2=\"" + num(y) + "\"/>\n";
        }
        out += "</g>\n";
    }
    for (const auto& o : scene.obstacles)
        out += "<polygon points=\"" + cv.points(o.vertices()) + "\" fill=\"#555555\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += hull_outline(cv, d.hull);
    for (const auto& route : d.routes)
        out += "<polyline points=\"" + cv.points(route) + "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\"/>\n";
    out += site_markers(cv, scene.sites);
    const double qx = cv.x(result.q.x), qy = cv.y(result.q.y);
    out += "<path d=\"M" + num(qx - 6) + "," + num(qy) + " L" + num(qx + 6) + "," + num(qy) + " M" + num(qx) + "," +
           num(qy - 6) + " L" + num(qx) + "," + num(qy + 6) + "\" stroke=\"black\" stroke-width=\"2.5\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string render_manifold_svg(const ManifoldRaster& raster, const SceneFile& scene, const std::optional<Polygon>& hull) {
    const GridSpec& g = raster.cells;
    Extent b;
    b.add(g);
    for (const Point& p : scene.sites) b.add(p);
    const Canvas cv = b.canvas();

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : raster.values)
        if (v) lo = std::min(lo, *v), hi = std::max(hi, *v);
    const double span = hi > lo ? hi - lo : 1.0;

    std::string out = cv.open();
    out += "<g shape-rendering=\"crispEdges\">\n";
    for (int i = 0; i < g.size(); ++i) {
        const auto& v = raster.values[static_cast<std::size_t>(i)];
        if (!v) continue;
        const Point c = g.node(i);
        out += cv.rect(c - Point(0.5 * g.cell_side, 0.5 * g.cell_side), g.cell_side,
                       "fill=\"" + ramp((*v - lo) / span) + "\"");
    }
    out += "</g>\n";
    for (const auto& o : scene.obstacles)
        out += "<polygon points=\"" + cv.points(o.vertices()) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += hull_outline(cv, hull);
    out += site_markers(cv, scene.sites);
    out += "</svg>\n";
    return out;
}

}  // namespace star
