#include "star/refine.hpp"

#include <cmath>
#include <numbers>

namespace star {

namespace {

// ceil() that ignores representation noise just above an integer.
int stable_ceil(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<int>(r);
    return static_cast<int>(std::ceil(v));
}

}  // namespace

GridSpec base_grid(const Rect& rect, double n1) {
    if (!(n1 > 0.0)) throw Error(Errc::InvalidInput, "cell side must be positive");
    if (n1 > std::min(rect.l, rect.m) * (1.0 + 1e-12))
        throw Error(Errc::CellLargerThanRect, "cell side exceeds the enclosing rectangle");
    GridSpec g;
    g.cell_side = n1;
    g.cols = stable_ceil(rect.l / n1);
    g.rows = stable_ceil(rect.m / n1);
    const double over_x = 0.5 * (g.cols * n1 - rect.l);
    const double over_y = 0.5 * (g.rows * n1 - rect.m);
    g.origin = {rect.min.x - over_x, rect.min.y - over_y};
    return g;
}

int subdivision_count(int cols, int rows) {
    if (cols < 1 || rows < 1) throw Error(Errc::InvalidInput, "grid must have at least one cell");
    return static_cast<int>(std::round(std::sqrt(static_cast<double>(cols) * static_cast<double>(rows))));
}

void check_subdivision(int s_c) {
    if (s_c <= 2)
        throw Error(Errc::SubdivisionTooSmall,
                    "subdivision count " + std::to_string(s_c) +
                        " <= 2: refinement squares would not shrink and the iteration cannot converge");
}

void check_epsilon(double epsilon, double n1) {
    const double hi = 2.0 * n1 * std::numbers::sqrt2;
    if (!(epsilon > 0.0) || epsilon > hi * (1.0 + 1e-12))
        throw Error(Errc::EpsilonOutOfRange,
                    "epsilon must lie in (0, 2*n1*sqrt(2)] = (0, " + std::to_string(hi) + "]");
}

double next_side(double n_i, int s_c) {
    check_subdivision(s_c);
    return 2.0 * n_i / s_c;
}

int iterations_needed(double epsilon, double n1, int s_c) {
    check_epsilon(epsilon, n1);
    check_subdivision(s_c);
    const double eps_c = epsilon / n1;
    const double num = 3.0 * std::log(2.0) - 2.0 * std::log(eps_c);
    const double den = 2.0 * std::log(static_cast<double>(s_c)) - 2.0 * std::log(2.0);
    return std::max(0, stable_ceil(num / den)) + 1;
}

double max_inaccuracy(int i, double n1, int s_c) {
    if (i < 1) throw Error(Errc::InvalidInput, "level index starts at 1");
    if (s_c < 2) throw Error(Errc::InvalidInput, "subdivision count must be at least 2");
    return std::pow(2.0, i) * n1 * std::numbers::sqrt2 / std::pow(static_cast<double>(s_c), i - 1);
}

std::vector<Subcell> subdivide(const RefinementSquare& square, int s_c) {
    check_subdivision(s_c);
    const double h = square.side / s_c;
    const Point corner = square.min_corner();
    std::vector<Subcell> out;
    out.reserve(static_cast<std::size_t>(s_c) * s_c);
    for (int row = 0; row < s_c; ++row) {
        for (int col = 0; col < s_c; ++col) {
            const Point c{corner.x + (col + 0.5) * h, corner.y + (row + 0.5) * h};
            out.push_back({{c, h, square.level + 1}, c});
        }
    }
    return out;
}

RefinementSquare successor_square(Point best_node, double n_i, int level) {
    return {best_node, 2.0 * n_i, level + 1};
}

Schedule Schedule::make(double epsilon, double n1, int s_c) {
    Schedule s;
    s.n1 = n1;
    s.s_c = s_c;
    s.epsilon = epsilon;
    s.iterations = iterations_needed(epsilon, n1, s_c);
    return s;
}

const char* mode_name(SolveMode mode) {
    switch (mode) {
    case SolveMode::Full: return "full";
    case SolveMode::Anchored: return "anchored";
    case SolveMode::Obstacles: return "obstacles";
    case SolveMode::Plain: return "plain";
    }
    return "full";
}

std::optional<SolveMode> parse_mode(const std::string& name) {
    for (SolveMode m : {SolveMode::Full, SolveMode::Anchored, SolveMode::Obstacles, SolveMode::Plain})
        if (name == mode_name(m)) return m;
    return std::nullopt;
}

std::optional<std::size_t> argmin_index(std::span<const std::optional<double>> values) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) continue;
        if (!best || *values[i] < *values[*best]) best = i;
    }
    return best;
}

}  // namespace star
