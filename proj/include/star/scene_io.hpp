#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "star/osp.hpp"
#include "star/refine.hpp"
#include "star/wrp.hpp"

namespace star {

enum class SceneKind { Weighted, Obstacles, Plain };
const char* kind_name(SceneKind kind);

struct SceneFile {
    int version = 1;
    SceneKind kind = SceneKind::Plain;
    std::vector<Point> sites;
    std::vector<WeightedRegion> regions;  // weighted only
    std::vector<Polygon> obstacles;       // obstacles only
    std::optional<double> default_weight;
    std::vector<double> weights;  // plain only; per-site multipliers

    WeightedScene weighted() const;
    ObstacleScene obstacle() const;  // plain scenes become obstacle-free ones
    // Every point the hull of the scene is built from.
    std::vector<Point> hull_points() const;

    friend bool operator==(const SceneFile&, const SceneFile&) = default;
};

inline constexpr int kSceneVersion = 1;

// Throws Error(Parse) with a JSON path such as "$.regions[1].polygon[2]".
SceneFile parse_scene(const std::string& text);
SceneFile load_scene(const std::string& path);
std::string emit_scene(const SceneFile& scene);

struct HandoffRecord {
    Point q;
    int iterations = 0;
    bool converged = false;
    int level = 0;

    friend bool operator==(const HandoffRecord&, const HandoffRecord&) = default;
};

struct ResultFile {
    Point q;
    double objective = 0.0;
    double accuracy_bound = 0.0;
    int iterations = 0;
    int s_c = 0;
    std::string mode;
    std::vector<LevelRecord> trace;
    std::optional<HandoffRecord> handoff;
    std::map<std::string, double> timing_ms;

    static ResultFile from(const SolveResult& r);
    friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

// Keys are emitted in sorted order; timing_ms is left out when include_timing is false.
std::string emit_result(const ResultFile& result, bool include_timing = true);
ResultFile parse_result(const std::string& text);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace star
