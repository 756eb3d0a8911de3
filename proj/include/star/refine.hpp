#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "star/geom.hpp"
#include "star/median.hpp"

namespace star {

// Node lattice; node (col, row) sits at the center of its cell. Indices are
// row-major with row 0 at the lowest y.
struct GridSpec {
    Point origin;  // lower-left corner of cell (0, 0)
    double cell_side = 0.0;
    int cols = 0;
    int rows = 0;

    int size() const { return cols * rows; }
    int index(int col, int row) const { return row * cols + col; }
    int col_of(int index) const { return index % cols; }
    int row_of(int index) const { return index / cols; }
    bool in_bounds(int col, int row) const { return col >= 0 && col < cols && row >= 0 && row < rows; }
    Point node(int col, int row) const {
        return {origin.x + (col + 0.5) * cell_side, origin.y + (row + 0.5) * cell_side};
    }
    Point node(int index) const { return node(col_of(index), row_of(index)); }
    double width() const { return cols * cell_side; }
    double height() const { return rows * cell_side; }
};

struct RefinementSquare {
    Point center;
    double side = 0.0;
    int level = 0;

    Point min_corner() const { return {center.x - 0.5 * side, center.y - 0.5 * side}; }
};

struct Subcell {
    RefinementSquare child;
    Point center_node;
};

// ceil(l/n1) x ceil(m/n1) lattice, overhang split evenly on both sides.
GridSpec base_grid(const Rect& rect, double n1);

// Nearest integer to sqrt(cols * rows), ties away from zero.
int subdivision_count(int cols, int rows);

double next_side(double n_i, int s_c);

// ceil((3 log 2 - 2 log eps_c) / (2 log s_c - 2 log 2)) + 1 with eps_c = epsilon / n1.
int iterations_needed(double epsilon, double n1, int s_c);

// 2^i n1 sqrt(2) / s_c^(i-1): the diagonal of the level-i refinement square.
double max_inaccuracy(int i, double n1, int s_c);

// s_c^2 children in row-major order (row 0 at the lowest y).
std::vector<Subcell> subdivide(const RefinementSquare& square, int s_c);

RefinementSquare successor_square(Point best_node, double n_i, int level);

// Throws EpsilonOutOfRange unless epsilon lies in (0, 2 n1 sqrt 2].
void check_epsilon(double epsilon, double n1);
// Throws SubdivisionTooSmall for s_c <= 2.
void check_subdivision(int s_c);

struct Schedule {
    double n1 = 0.0;
    int s_c = 0;
    double epsilon = 0.0;
    int iterations = 0;

    static Schedule make(double epsilon, double n1, int s_c);
    double accuracy_bound() const { return max_inaccuracy(iterations, n1, s_c); }
};

enum class SolveMode { Full, Anchored, Obstacles, Plain };
const char* mode_name(SolveMode mode);
std::optional<SolveMode> parse_mode(const std::string& name);

struct LevelRecord {
    int level = 0;
    Point best;
    double objective = 0.0;
    double square_side = 0.0;  // cell side at level 0, refinement square side afterwards
    int candidates = 0;        // nodes considered, skipped ones included
    int evaluated = 0;

    friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct SolveResult {
    Point q;
    double objective = 0.0;
    int iterations = 0;
    double accuracy_bound = 0.0;
    int s_c = 0;
    SolveMode mode = SolveMode::Full;
    std::vector<LevelRecord> trace;
    std::optional<WeiszfeldResult> handoff;
    int handoff_level = -1;
};

// Index of the smallest present value; ties go to the lowest index.
std::optional<std::size_t> argmin_index(std::span<const std::optional<double>> values);

}  // namespace star
