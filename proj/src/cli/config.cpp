#include "pursuitlab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pursuitlab/errors.hpp"

namespace pursuitlab::cli {

using nlohmann::json;

namespace {

std::string child_pointer(const std::string& parent, const std::string& key) {
    // JSON pointer escaping: '~' -> "~0", '/' -> "~1".
    std::string escaped;
    for (char c : key) {
        if (c == '~') escaped += "~0";
        else if (c == '/') escaped += "~1";
        else escaped += c;
    }
    return parent + "/" + escaped;
}

std::string index_pointer(const std::string& parent, std::size_t i) {
    return parent + "/" + std::to_string(i);
}

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
    throw ConfigError((pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

double as_real(const json& v, const std::string& ptr) {
    if (!v.is_number()) fail(ptr, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ptr, "expected a finite number");
    return d;
}

std::int64_t as_int(const json& v, const std::string& ptr, std::int64_t lo,
                    std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(hi)) fail(ptr, "must be <= " + std::to_string(hi));
        return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    const auto i = v.get<std::int64_t>();
    if (i < lo) fail(ptr, "must be >= " + std::to_string(lo));
    if (i > hi) fail(ptr, "must be <= " + std::to_string(hi));
    return i;
}

std::uint64_t as_seed(const json& v, const std::string& ptr) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    fail(ptr, "expected a non-negative integer seed");
}

std::string as_string(const json& v, const std::string& ptr) {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& ptr) {
    if (!v.is_boolean()) fail(ptr, "expected true or false");
    return v.get<bool>();
}

/// Walks one JSON object, remembering which keys were consumed so that the
/// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string pointer) : obj_(obj), ptr_(std::move(pointer)) {
        if (!obj_.is_object()) fail(ptr_, "expected an object");
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = find(key);
        if (!v) fail(child_pointer(ptr_, key), "required key is missing");
        return *v;
    }

    std::string at(const std::string& key) const { return child_pointer(ptr_, key); }

    void real(const std::string& key, double& out) {
        if (const json* v = find(key)) out = as_real(*v, at(key));
    }
    template <typename Int>
    void integer(const std::string& key, Int& out, std::int64_t lo, std::int64_t hi) {
        if (const json* v = find(key)) out = static_cast<Int>(as_int(*v, at(key), lo, hi));
    }
    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) out = as_bool(*v, at(key));
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key)) fail(child_pointer(ptr_, key), "unknown key");
        }
    }

private:
    const json& obj_;
    std::string ptr_;
    std::set<std::string> seen_;
};

template <typename F>
void for_each_element(const json& arr, const std::string& ptr, F&& f) {
    if (!arr.is_array()) fail(ptr, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) f(arr[i], index_pointer(ptr, i));
}

std::vector<int> parse_bins(const json& arr, const std::string& ptr, bool allow_empty) {
    std::vector<int> bins;
    for_each_element(arr, ptr, [&](const json& v, const std::string& p) {
        const int b = static_cast<int>(as_int(v, p, 1, 1000));
        if (std::find(bins.begin(), bins.end(), b) != bins.end()) fail(p, "duplicate bin count");
        bins.push_back(b);
    });
    if (!allow_empty && bins.empty()) fail(ptr, "must list at least one bin count");
    return bins;
}

PolicyKind parse_policy_at(const json& v, const std::string& ptr) {
    try {
        return parse_policy(as_string(v, ptr));
    } catch (const ConfigError& e) {
        fail(ptr, e.what());
    }
}

AgentPhysics parse_physics(const json& v, const std::string& ptr, AgentPhysics out) {
    ObjectReader r(v, ptr);
    r.real("max_speed", out.max_speed);
    r.real("max_accel", out.max_accel);
    r.real("radius", out.radius);
    r.real("damping", out.damping);
    r.finish();
    return out;
}

WorldConfig parse_world(const json& v, const std::string& ptr) {
    WorldConfig w;
    ObjectReader r(v, ptr);
    r.real("half_extent", w.half_extent);
    r.real("dt", w.dt);
    r.integer("n_pursuers", w.n_pursuers, 1, 64);
    if (const json* p = r.find("pursuer_physics")) w.pursuer_physics = parse_physics(*p, r.at("pursuer_physics"), w.pursuer_physics);
    if (const json* p = r.find("evader_physics")) w.evader_physics = parse_physics(*p, r.at("evader_physics"), w.evader_physics);
    if (const json* m = r.find("collision_mode")) {
        const auto s = as_string(*m, r.at("collision_mode"));
        if (s == "per_step") w.collision_mode = CollisionMode::PerStepOverlap;
        else if (s == "onset") w.collision_mode = CollisionMode::OnsetOnly;
        else fail(r.at("collision_mode"), "expected \"per_step\" or \"onset\"");
    }
    r.boolean("allow_slower_evader", w.allow_slower_evader);
    r.finish();
    try {
        w.validate();
    } catch (const ConfigError& e) {
        fail(ptr, e.what());
    }
    return w;
}

TeamConfig parse_team(const json& v, const std::string& ptr) {
    TeamConfig t;
    ObjectReader r(v, ptr);
    t.label = as_string(r.require("label"), r.at("label"));
    for_each_element(r.require("pursuers"), r.at("pursuers"),
                     [&](const json& e, const std::string& p) { t.pursuer_policies.push_back(parse_policy_at(e, p)); });
    t.evader_policy = parse_policy_at(r.require("evader"), r.at("evader"));
    r.finish();
    return t;
}

ModelKind parse_model_at(const json& v, const std::string& ptr) {
    try {
        return parse_model_kind(as_string(v, ptr));
    } catch (const ConfigError& e) {
        fail(ptr, e.what());
    }
}

void parse_classify(const json& v, const std::string& ptr, ClassifyOptions& c) {
    ObjectReader r(v, ptr);
    if (const json* m = r.find("models")) {
        c.models.clear();
        for_each_element(*m, r.at("models"), [&](const json& e, const std::string& p) {
            const auto kind = parse_model_at(e, p);
            if (std::find(c.models.begin(), c.models.end(), kind) != c.models.end()) fail(p, "duplicate model");
            c.models.push_back(kind);
        });
    }
    r.integer("bins", c.bins, 1, 1000);
    r.integer("folds", c.folds, 2, 1000);
    if (const json* s = r.find("seed")) c.seed = as_seed(*s, r.at("seed"));
    r.integer("permutation_repetitions", c.permutation_repetitions, 0, 10000);
    if (const json* m = r.find("permutation_model")) c.permutation_model = parse_model_at(*m, r.at("permutation_model"));
    if (const json* l = r.find("logreg")) {
        ObjectReader lr(*l, r.at("logreg"));
        lr.real("learning_rate", c.train.logreg.learning_rate);
        lr.integer("epochs", c.train.logreg.epochs, 0, 10'000'000);
        lr.real("l2", c.train.logreg.l2);
        lr.finish();
        if (c.train.logreg.learning_rate <= 0) fail(lr.at("learning_rate"), "must be > 0");
        if (c.train.logreg.l2 < 0) fail(lr.at("l2"), "must be >= 0");
    }
    if (const json* m = r.find("mlp")) {
        ObjectReader mr(*m, r.at("mlp"));
        mr.integer("hidden_units", c.train.mlp.hidden_units, 1, 100000);
        mr.real("learning_rate", c.train.mlp.learning_rate);
        mr.integer("epochs", c.train.mlp.epochs, 0, 10'000'000);
        mr.real("l2", c.train.mlp.l2);
        if (const json* s = mr.find("init_seed")) c.train.mlp.init_seed = as_seed(*s, mr.at("init_seed"));
        mr.finish();
        if (c.train.mlp.learning_rate <= 0) fail(mr.at("learning_rate"), "must be > 0");
        if (c.train.mlp.l2 < 0) fail(mr.at("l2"), "must be >= 0");
    }
    r.finish();
}

}  // namespace

std::string_view to_string(CollisionMode mode) {
    return mode == CollisionMode::OnsetOnly ? "onset" : "per_step";
}

std::string_view to_string(RadiusOrigin origin) {
    return origin == RadiusOrigin::Arena ? "arena" : "centroid";
}

void RunConfig::validate() const {
    experiment.validate();
    const auto featurized = [&](int b) {
        return std::find(feature_bins.begin(), feature_bins.end(), b) != feature_bins.end();
    };
    for (std::size_t i = 0; i < pca.bins.size(); ++i)
        if (!featurized(pca.bins[i])) fail("/pca/bins/" + std::to_string(i), "bin count is not listed in /features/bins");
    if (!classify.models.empty() && !featurized(classify.bins))
        fail("/classify/bins", "bin count is not listed in /features/bins");
    if (experiment.teams.size() < 2 && !classify.models.empty())
        fail("/teams", "classification needs at least two teams");
}

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    ObjectReader r(doc, "");
    auto& ex = cfg.experiment;

    if (const json* w = r.find("world")) ex.world = parse_world(*w, "/world");
    for_each_element(r.require("teams"), "/teams",
                     [&](const json& t, const std::string& p) { ex.teams.push_back(parse_team(t, p)); });
    if (ex.teams.empty()) fail("/teams", "at least one team is required");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < ex.teams.size(); ++i) {
        const auto ptr = "/teams/" + std::to_string(i);
        try {
            ex.teams[i].validate(ex.world);
        } catch (const ConfigError& e) {
            fail(ptr, e.what());
        }
        if (!labels.insert(ex.teams[i].label).second) fail(ptr + "/label", "duplicate team label");
    }

    r.integer("episodes_per_team", ex.episodes_per_team, 1, 10'000'000);
    r.integer("steps_per_episode", ex.steps_per_episode, 0, 100'000'000);
    if (const json* s = r.find("master_seed")) ex.master_seed = as_seed(*s, "/master_seed");
    r.boolean("record_pursuers", ex.record_pursuers);

    if (const json* f = r.find("features")) {
        ObjectReader fr(*f, "/features");
        if (const json* b = fr.find("bins")) cfg.feature_bins = parse_bins(*b, fr.at("bins"), false);
        fr.finish();
    }
    if (const json* s = r.find("stats")) {
        ObjectReader sr(*s, "/stats");
        sr.real("radius_bin_width", cfg.stats.radius_bin_width);
        if (cfg.stats.radius_bin_width <= 0) fail(sr.at("radius_bin_width"), "must be > 0");
        if (const json* o = sr.find("radius_origin")) {
            const auto v = as_string(*o, sr.at("radius_origin"));
            if (v == "centroid") cfg.stats.origin = RadiusOrigin::Centroid;
            else if (v == "arena") cfg.stats.origin = RadiusOrigin::Arena;
            else fail(sr.at("radius_origin"), "expected \"centroid\" or \"arena\"");
        }
        sr.finish();
    }
    if (const json* p = r.find("pca")) {
        ObjectReader pr(*p, "/pca");
        if (const json* b = pr.find("bins")) cfg.pca.bins = parse_bins(*b, pr.at("bins"), true);
        pr.integer("components", cfg.pca.components, 1, 1'000'000);
        pr.finish();
    }
    if (const json* c = r.find("classify")) parse_classify(*c, "/classify", cfg.classify);
    if (const json* h = r.find("heatmap")) {
        ObjectReader hr(*h, "/heatmap");
        if (const json* b = hr.find("bins")) cfg.heatmap_bins = parse_bins(*b, hr.at("bins"), true);
        hr.finish();
    }
    if (const json* o = r.find("output_dir")) cfg.output_dir = as_string(*o, "/output_dir");
    r.finish();

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": malformed JSON: " + e.what());
    }
    try {
        return parse_config(doc);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

json physics_json(const AgentPhysics& p) {
    return {{"max_speed", p.max_speed}, {"max_accel", p.max_accel}, {"radius", p.radius}, {"damping", p.damping}};
}

}  // namespace

json to_json(const RunConfig& cfg) {
    const auto& ex = cfg.experiment;
    json teams = json::array();
    for (const auto& t : ex.teams) {
        json pursuers = json::array();
        for (const auto& p : t.pursuer_policies) pursuers.push_back(to_code(p));
        teams.push_back({{"label", t.label}, {"pursuers", pursuers}, {"evader", to_code(t.evader_policy)}});
    }
    json models = json::array();
    for (auto m : cfg.classify.models) models.push_back(std::string(to_string(m)));
    const auto& tr = cfg.classify.train;

    json doc = {
        {"world",
         {{"half_extent", ex.world.half_extent},
          {"dt", ex.world.dt},
          {"n_pursuers", ex.world.n_pursuers},
          {"pursuer_physics", physics_json(ex.world.pursuer_physics)},
          {"evader_physics", physics_json(ex.world.evader_physics)},
          {"collision_mode", std::string(to_string(ex.world.collision_mode))},
          {"allow_slower_evader", ex.world.allow_slower_evader}}},
        {"teams", teams},
        {"episodes_per_team", ex.episodes_per_team},
        {"steps_per_episode", ex.steps_per_episode},
        {"master_seed", ex.master_seed},
        {"record_pursuers", ex.record_pursuers},
        {"features", {{"bins", cfg.feature_bins}}},
        {"stats",
         {{"radius_bin_width", cfg.stats.radius_bin_width},
          {"radius_origin", std::string(to_string(cfg.stats.origin))}}},
        {"pca", {{"bins", cfg.pca.bins}, {"components", cfg.pca.components}}},
        {"classify",
         {{"models", models},
          {"bins", cfg.classify.bins},
          {"folds", cfg.classify.folds},
          {"seed", cfg.classify.seed},
          {"permutation_repetitions", cfg.classify.permutation_repetitions},
          {"permutation_model", std::string(to_string(cfg.classify.permutation_model))},
          {"logreg", {{"learning_rate", tr.logreg.learning_rate}, {"epochs", tr.logreg.epochs}, {"l2", tr.logreg.l2}}},
          {"mlp",
           {{"hidden_units", tr.mlp.hidden_units},
            {"learning_rate", tr.mlp.learning_rate},
            {"epochs", tr.mlp.epochs},
            {"l2", tr.mlp.l2},
            {"init_seed", tr.mlp.init_seed}}}}},
        {"heatmap", {{"bins", cfg.heatmap_bins}}},
    };
    if (cfg.output_dir) doc["output_dir"] = cfg.output_dir->string();
    return doc;
}

}  // namespace pursuitlab::cli
