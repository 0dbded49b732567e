#include "autolog/model_io.hpp"

#include <fstream>

#include <json.hpp>

namespace autolog {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& context) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw DataError("model file: missing field '" + context + key + "'");
    }
    return *it;
}

template <typename T>
T fetch(const json& j, const char* key, const std::string& context) {
    try {
        return require(j, key, context).get<T>();
    } catch (const json::exception&) {
        throw DataError("model file: field '" + context + key + "' has the wrong type");
    }
}

}  // namespace

std::string weighting_mode_name(WeightingMode mode) {
    switch (mode) {
        case WeightingMode::None: return "none";
        case WeightingMode::Simple: return "simple";
        case WeightingMode::Adaptive: return "adaptive";
    }
    return "none";
}

WeightingMode weighting_mode_from_name(const std::string& name) {
    if (name == "none") return WeightingMode::None;
    if (name == "simple") return WeightingMode::Simple;
    if (name == "adaptive") return WeightingMode::Adaptive;
    throw DataError("unknown weighting mode '" + name + "'");
}

void save_model(const std::string& path, const ModelBundle& bundle) {
    json j;
    j["format_version"] = kModelFormatVersion;

    json& m = j["model"];
    m["q_steps"] = bundle.params.q;
    m["d"] = bundle.params.d;
    m["delta_t_steps"] = bundle.params.delta_t_steps;
    m["a"] = bundle.params.a;
    m["b"] = bundle.params.b;
    m["c"] = bundle.params.c;
    m["feature_names"] = bundle.params.feature_names;
    m["feature_means"] = bundle.params.feature_means;
    m["feature_stds"] = bundle.params.feature_stds;

    j["weights"] = {{"w0", bundle.final_weights.w0}, {"w1", bundle.final_weights.w1}};
    j["smoothing"] = {{"window", bundle.smoothing.window}};
    j["decision"] = {{"threshold", bundle.decision.threshold}};

    json& t = j["training"];
    t["mode"] = bundle.weighting_mode;
    t["learning_rate"] = bundle.learning_rate;
    t["max_epochs"] = bundle.max_epochs;
    t["tolerance"] = bundle.tolerance;
    t["adaptive_update_every"] = bundle.adaptive_update_every;
    t["weight_cap"] = bundle.weight_cap;
    t["seed"] = bundle.seed;
    t["epochs_run"] = bundle.epochs_run;
    t["converged"] = bundle.converged;
    t["train_fraction"] = bundle.train_fraction;
    t["add_gc"] = bundle.add_gc;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file '" + path + "'");
    out << j.dump(2) << "\n";
}

ModelBundle load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("model file '" + path + "' is not valid JSON: " + e.what());
    }

    const int version = fetch<int>(j, "format_version", "");
    if (version != kModelFormatVersion) {
        throw DataError("model file '" + path + "': unsupported format_version " +
                        std::to_string(version) + " (this build reads version " +
                        std::to_string(kModelFormatVersion) + ")");
    }

    ModelBundle bundle;
    const json& m = require(j, "model", "");
    bundle.params.q = fetch<std::int64_t>(m, "q_steps", "model.");
    bundle.params.d = fetch<std::int64_t>(m, "d", "model.");
    bundle.params.delta_t_steps = fetch<std::int64_t>(m, "delta_t_steps", "model.");
    bundle.params.a = fetch<std::vector<double>>(m, "a", "model.");
    bundle.params.b = fetch<std::vector<double>>(m, "b", "model.");
    bundle.params.c = fetch<double>(m, "c", "model.");
    bundle.params.feature_names = fetch<std::vector<std::string>>(m, "feature_names", "model.");
    bundle.params.feature_means = fetch<std::vector<double>>(m, "feature_means", "model.");
    bundle.params.feature_stds = fetch<std::vector<double>>(m, "feature_stds", "model.");

    if (static_cast<std::int64_t>(bundle.params.a.size()) !=
            (bundle.params.q + 1) * bundle.params.d ||
        static_cast<std::int64_t>(bundle.params.b.size()) != bundle.params.q + 1) {
        throw DataError("model file: field 'model.a' or 'model.b' has inconsistent dimensions");
    }

    const json& w = require(j, "weights", "");
    bundle.final_weights.w0 = fetch<double>(w, "w0", "weights.");
    bundle.final_weights.w1 = fetch<double>(w, "w1", "weights.");

    bundle.smoothing.window = fetch<std::int64_t>(require(j, "smoothing", ""), "window", "smoothing.");
    bundle.decision.threshold = fetch<double>(require(j, "decision", ""), "threshold", "decision.");

    const json& t = require(j, "training", "");
    bundle.weighting_mode = fetch<std::string>(t, "mode", "training.");
    weighting_mode_from_name(bundle.weighting_mode);  // validates
    bundle.learning_rate = fetch<double>(t, "learning_rate", "training.");
    bundle.max_epochs = fetch<std::int64_t>(t, "max_epochs", "training.");
    bundle.tolerance = fetch<double>(t, "tolerance", "training.");
    bundle.adaptive_update_every = fetch<std::int64_t>(t, "adaptive_update_every", "training.");
    bundle.weight_cap = fetch<double>(t, "weight_cap", "training.");
    bundle.seed = fetch<std::int64_t>(t, "seed", "training.");
    bundle.epochs_run = fetch<std::int64_t>(t, "epochs_run", "training.");
    bundle.converged = fetch<bool>(t, "converged", "training.");
    bundle.train_fraction = fetch<double>(t, "train_fraction", "training.");
    bundle.add_gc = fetch<bool>(t, "add_gc", "training.");

    bundle.smoothing.validate();
    bundle.decision.validate();
    return bundle;
}

}  // namespace autolog
