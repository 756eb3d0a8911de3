#include "star/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace star {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(Errc::Parse, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required key");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

Point point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [x, y]");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

std::vector<Point> points(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of [x, y] pairs");
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(point(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Polygon polygon(const json& v, const std::string& path) {
    std::vector<Point> loop = points(v, path);
    try {
        return Polygon::normalized(std::move(loop));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || item.key() == k;
        if (!ok) fail(path + "." + item.key(), "key not allowed here");
    }
}

json encode(Point p) { return json::array({p.x, p.y}); }

json encode(const Polygon& poly) {
    json out = json::array();
    for (const Point& v : poly.vertices()) out.push_back(encode(v));
    return out;
}

}  // namespace

const char* kind_name(SceneKind kind) {
    switch (kind) {
    case SceneKind::Weighted: return "weighted";
    case SceneKind::Obstacles: return "obstacles";
    case SceneKind::Plain: return "plain";
    }
    return "plain";
}

WeightedScene SceneFile::weighted() const {
    WeightedScene s;
    s.sites = sites;
    s.regions = regions;
    s.default_weight = default_weight.value_or(1.0);
    return s;
}

ObstacleScene SceneFile::obstacle() const {
    ObstacleScene s;
    s.sites = sites;
    s.obstacles = obstacles;
    s.site_weights = weights;
    return s;
}

std::vector<Point> SceneFile::hull_points() const {
    std::vector<Point> pts = sites;
    for (const auto& o : obstacles) pts.insert(pts.end(), o.vertices().begin(), o.vertices().end());
    return pts;
}

SceneFile parse_scene(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::Parse, std::string("$: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) fail("$", "expected an object");

    SceneFile out;
    out.version = integer(field(root, "version", "$"), "$.version");
    if (out.version != kSceneVersion) fail("$.version", "unsupported version " + std::to_string(out.version));

    const json& kind = field(root, "kind", "$");
    if (kind == "weighted") {
        out.kind = SceneKind::Weighted;
        only_keys(root, {"version", "kind", "sites", "regions", "default_weight"}, "$");
    } else if (kind == "obstacles") {
        out.kind = SceneKind::Obstacles;
        only_keys(root, {"version", "kind", "sites", "obstacles"}, "$");
    } else if (kind == "plain") {
        out.kind = SceneKind::Plain;
        only_keys(root, {"version", "kind", "sites", "weights"}, "$");
    } else {
        fail("$.kind", "expected \"weighted\", \"obstacles\" or \"plain\"");
    }

    out.sites = points(field(root, "sites", "$"), "$.sites");
    if (out.sites.empty()) fail("$.sites", "at least one site is required");

    if (const auto it = root.find("regions"); it != root.end()) {
        if (!it->is_array()) fail("$.regions", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "$.regions[" + std::to_string(i) + "]";
            const json& r = (*it)[i];
            if (!r.is_object()) fail(p, "expected an object");
            only_keys(r, {"polygon", "weight"}, p);
            const double w = number(field(r, "weight", p), p + ".weight");
            if (!(w > 0.0)) fail(p + ".weight", "weight must be positive");
            out.regions.push_back({polygon(field(r, "polygon", p), p + ".polygon"), w});
        }
    }
    if (const auto it = root.find("default_weight"); it != root.end()) {
        const double w = number(*it, "$.default_weight");
        if (!(w > 0.0)) fail("$.default_weight", "weight must be positive");
        out.default_weight = w;
    }
    if (const auto it = root.find("obstacles"); it != root.end()) {
        if (!it->is_array()) fail("$.obstacles", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "$.obstacles[" + std::to_string(i) + "]";
            const json& o = (*it)[i];
            if (!o.is_object()) fail(p, "expected an object");
            only_keys(o, {"polygon"}, p);
            out.obstacles.push_back(polygon(field(o, "polygon", p), p + ".polygon"));
        }
    }
    if (const auto it = root.find("weights"); it != root.end()) {
        if (!it->is_array()) fail("$.weights", "expected an array");
        if (it->size() != out.sites.size()) fail("$.weights", "expected one weight per site");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string p = "$.weights[" + std::to_string(i) + "]";
            const double w = number((*it)[i], p);
            if (!(w >= 0.0)) fail(p, "weight must be non-negative");
            out.weights.push_back(w);
        }
        if (std::none_of(out.weights.begin(), out.weights.end(), [](double w) { return w > 0.0; }))
            fail("$.weights", "at least one weight must be positive");
    }
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Parse, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidInput, "cannot write " + path);
    out << text;
}

SceneFile load_scene(const std::string& path) { return parse_scene(read_text(path)); }

std::string emit_scene(const SceneFile& scene) {
    json root;
    root["version"] = scene.version;
    root["kind"] = kind_name(scene.kind);
    json sites = json::array();
    for (const Point& p : scene.sites) sites.push_back(encode(p));
    root["sites"] = sites;
    if (scene.kind == SceneKind::Weighted) {
        json regions = json::array();
        for (const auto& r : scene.regions) regions.push_back({{"polygon", encode(r.polygon)}, {"weight", r.weight}});
        root["regions"] = regions;
        if (scene.default_weight) root["default_weight"] = *scene.default_weight;
    }
    if (scene.kind == SceneKind::Obstacles) {
        json obstacles = json::array();
        for (const auto& o : scene.obstacles) obstacles.push_back({{"polygon", encode(o)}});
        root["obstacles"] = obstacles;
    }
    if (scene.kind == SceneKind::Plain && !scene.weights.empty()) root["weights"] = scene.weights;
    return root.dump(2) + "\n";
}

ResultFile ResultFile::from(const SolveResult& r) {
    ResultFile out;
    out.q = r.q;
    out.objective = r.objective;
    out.accuracy_bound = r.accuracy_bound;
    out.iterations = r.iterations;
    out.s_c = r.s_c;
    out.mode = mode_name(r.mode);
    out.trace = r.trace;
    if (r.handoff) out.handoff = HandoffRecord{r.handoff->q, r.handoff->iterations, r.handoff->converged, r.handoff_level};
    return out;
}

std::string emit_result(const ResultFile& r, bool include_timing) {
    json root;
    root["q"] = encode(r.q);
    root["objective"] = r.objective;
    root["accuracy_bound"] = r.accuracy_bound;
    root["iterations"] = r.iterations;
    root["s_c"] = r.s_c;
    root["mode"] = r.mode;
    json trace = json::array();
    for (const auto& t : r.trace)
        trace.push_back({{"level", t.level},
                         {"best", encode(t.best)},
                         {"objective", t.objective},
                         {"square_side", t.square_side},
                         {"candidates", t.candidates},
                         {"evaluated", t.evaluated}});
    root["trace"] = trace;
    if (r.handoff)
        root["handoff"] = {{"q", encode(r.handoff->q)},
                           {"iterations", r.handoff->iterations},
                           {"converged", r.handoff->converged},
                           {"level", r.handoff->level}};
    if (include_timing) root["timing_ms"] = r.timing_ms;
    return root.dump(2) + "\n";
}

ResultFile parse_result(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::Parse, std::string("$: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) fail("$", "expected an object");
    ResultFile out;
    out.q = point(field(root, "q", "$"), "$.q");
    out.objective = number(field(root, "objective", "$"), "$.objective");
    out.accuracy_bound = number(field(root, "accuracy_bound", "$"), "$.accuracy_bound");
    out.iterations = integer(field(root, "iterations", "$"), "$.iterations");
    out.s_c = integer(field(root, "s_c", "$"), "$.s_c");
    const json& mode = field(root, "mode", "$");
    if (!mode.is_string()) fail("$.mode", "expected a string");
    out.mode = mode.get<std::string>();
    const json& trace = field(root, "trace", "$");
    if (!trace.is_array()) fail("$.trace", "expected an array");
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const std::string p = "$.trace[" + std::to_string(i) + "]";
        const json& t = trace[i];
        if (!t.is_object()) fail(p, "expected an object");
        LevelRecord rec;
        rec.level = integer(field(t, "level", p), p + ".level");
        rec.best = point(field(t, "best", p), p + ".best");
        rec.objective = number(field(t, "objective", p), p + ".objective");
        rec.square_side = number(field(t, "square_side", p), p + ".square_side");
        rec.candidates = integer(field(t, "candidates", p), p + ".candidates");
        rec.evaluated = integer(field(t, "evaluated", p), p + ".evaluated");
        out.trace.push_back(rec);
    }
    if (const auto it = root.find("handoff"); it != root.end()) {
        HandoffRecord h;
        h.q = point(field(*it, "q", "$.handoff"), "$.handoff.q");
        h.iterations = integer(field(*it, "iterations", "$.handoff"), "$.handoff.iterations");
        const json& conv = field(*it, "converged", "$.handoff");
        if (!conv.is_boolean()) fail("$.handoff.converged", "expected a boolean");
        h.converged = conv.get<bool>();
        h.level = integer(field(*it, "level", "$.handoff"), "$.handoff.level");
        out.handoff = h;
    }
    if (const auto it = root.find("timing_ms"); it != root.end()) {
        if (!it->is_object()) fail("$.timing_ms", "expected an object");
        for (const auto& item : it->items()) out.timing_ms[item.key()] = number(item.value(), "$.timing_ms." + item.key());
    }
    return out;
}

}  // namespace star
