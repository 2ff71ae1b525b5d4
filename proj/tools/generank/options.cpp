#include "options.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "generank/errors.hpp"

namespace generank::cli {

namespace {

using nlohmann::json;

const std::set<std::string> path_keys{"network",   "seeds",       "candidates", "similarity",
                                      "disease_genes", "positions", "supermatrix", "out"};

const std::set<std::string> known_keys{
    "network",      "seeds",     "candidates", "all_nonseeds",   "similarity",     "disease_genes",
    "disease",      "positions", "supermatrix", "out",           "mode",           "weights",
    "alpha",        "tolerance", "max_iterations", "distance",   "evidence_k",     "gamma",
    "normalization", "topsis_normalization", "saaty_step", "feedback_share", "neighbors", "split_weights",
    "split_seed",   "criteria_order"};

[[noreturn]] void bad(const std::string &key, const std::string &what) {
    throw InputError("config key '" + key + "': " + what);
}

double number(const json &v, const std::string &key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used == s.size()) return x;
        } catch (const std::exception &) {
        }
    }
    bad(key, "expected a number");
}

long long integer(const json &v, const std::string &key) {
    const double x = number(v, key);
    if (x != static_cast<double>(static_cast<long long>(x))) bad(key, "expected an integer");
    return static_cast<long long>(x);
}

std::string text(const json &v, const std::string &key) {
    if (!v.is_string()) bad(key, "expected a string");
    return v.get<std::string>();
}

bool boolean(const json &v, const std::string &key) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
    }
    bad(key, "expected true or false");
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

WeightVector step_weights(const json &v) {
    std::vector<double> w;
    if (v.is_array()) {
        for (const auto &x : v) w.push_back(number(x, "weights"));
    } else if (v.is_object()) {
        for (const auto &label : step_labels()) {
            if (!v.contains(label)) bad("weights", "missing entry for " + label);
            w.push_back(number(v.at(label), "weights"));
        }
        if (v.size() != step_count) bad("weights", "expected exactly NP, RWR, SP, EVIDENCE");
    } else if (v.is_string()) {
        for (const auto &x : split_list(v.get<std::string>())) w.push_back(number(json(x), "weights"));
    } else {
        bad("weights", "expected four numbers");
    }
    if (w.size() != step_count) bad("weights", "expected four numbers (NP, RWR, SP, EVIDENCE)");
    return WeightVector(step_labels(), w);
}

} // namespace

bool is_path_key(const std::string &key) { return path_keys.contains(key); }

json read_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw InputError("config file '" + path.string() + "' must hold a JSON object");
    const auto base = path.parent_path();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!is_path_key(it.key()) || !it.value().is_string()) continue;
        const std::filesystem::path p = it.value().get<std::string>();
        if (p.is_relative() && !base.empty()) it.value() = (base / p).lexically_normal().string();
    }
    return doc;
}

Settings resolve_settings(const json &values) {
    Settings s;
    auto &cfg = s.pipeline;
    json echo = json::object();

    for (auto it = values.begin(); it != values.end(); ++it) {
        const auto &key = it.key();
        const auto &v = it.value();
        if (!known_keys.contains(key)) throw InputError("unknown config key '" + key + "'");
        if (v.is_null()) continue;

        if (key == "network") s.network = text(v, key);
        else if (key == "seeds") s.seeds = text(v, key);
        else if (key == "candidates") s.candidates = text(v, key);
        else if (key == "similarity") s.similarity = text(v, key);
        else if (key == "disease_genes") s.disease_genes = text(v, key);
        else if (key == "positions") s.positions = text(v, key);
        else if (key == "supermatrix") s.supermatrix = text(v, key);
        else if (key == "out") s.out = text(v, key);
        else if (key == "all_nonseeds") s.all_nonseeds = boolean(v, key);
        else if (key == "disease") s.disease_name = text(v, key);
        else if (key == "mode") cfg.mode = parse_madm_mode(text(v, key));
        else if (key == "weights") cfg.step_weights = step_weights(v);
        else if (key == "alpha") cfg.rwr.alpha = cfg.np.alpha = number(v, key);
        else if (key == "tolerance") cfg.rwr.tolerance = cfg.np.tolerance = number(v, key);
        else if (key == "max_iterations") {
            const auto n = integer(v, key);
            if (n < 1 || n > 1000000) bad(key, "must lie in [1, 1000000]");
            cfg.rwr.max_iterations = cfg.np.max_iterations = static_cast<int>(n);
        } else if (key == "distance") cfg.distance = parse_distance_transform(text(v, key));
        else if (key == "evidence_k") {
            const auto n = integer(v, key);
            if (n < 1) bad(key, "must be positive");
            cfg.evidence_k = static_cast<std::size_t>(n);
        } else if (key == "gamma") cfg.wdrs_gamma = number(v, key);
        else if (key == "normalization") {
            const auto n = text(v, key);
            if (n == "minmax") cfg.fusion_normalization = FusionNormalization::MinMax;
            else if (n == "none") cfg.fusion_normalization = FusionNormalization::None;
            else bad(key, "expected minmax or none");
        } else if (key == "topsis_normalization") {
            const auto n = text(v, key);
            if (n == "vector") cfg.topsis_normalization = TopsisNormalization::Vector;
            else if (n == "minmax") cfg.topsis_normalization = TopsisNormalization::MinMax;
            else bad(key, "expected vector or minmax");
        } else if (key == "saaty_step") {
            const auto n = integer(v, key);
            if (n < 1 || n > 8) bad(key, "must lie in [1, 8]");
            cfg.saaty_step = static_cast<int>(n);
        } else if (key == "feedback_share") cfg.feedback_share = number(v, key);
        else if (key == "neighbors") {
            const auto n = integer(v, key);
            if (n < 1) bad(key, "must be positive");
            cfg.interval_neighbors = static_cast<std::size_t>(n);
        } else if (key == "split_weights") cfg.split_weights = boolean(v, key);
        else if (key == "split_seed") {
            const auto n = integer(v, key);
            if (n < 0) bad(key, "must be non-negative");
            cfg.split_seed = static_cast<std::uint64_t>(n);
        } else if (key == "criteria_order") {
            std::vector<std::string> order;
            if (v.is_array())
                for (const auto &x : v) order.push_back(text(x, key));
            else
                order = split_list(text(v, key));
            cfg.criteria_order = order;
        }
    }
    cfg.rwr.validate();
    cfg.validate();

    echo["mode"] = std::string(to_string(cfg.mode));
    echo["alpha"] = cfg.rwr.alpha;
    echo["tolerance"] = cfg.rwr.tolerance;
    echo["max_iterations"] = cfg.rwr.max_iterations;
    echo["distance"] = std::string(to_string(cfg.distance));
    echo["evidence_k"] = cfg.evidence_k;
    echo["disease"] = s.disease_name;
    echo["gamma"] = cfg.wdrs_gamma;
    echo["normalization"] = cfg.fusion_normalization == FusionNormalization::MinMax ? "minmax" : "none";
    echo["topsis_normalization"] = cfg.topsis_normalization == TopsisNormalization::Vector ? "vector" : "minmax";
    echo["saaty_step"] = cfg.saaty_step;
    echo["feedback_share"] = cfg.feedback_share;
    echo["neighbors"] = cfg.interval_neighbors;
    echo["split_weights"] = cfg.split_weights;
    echo["split_seed"] = cfg.split_seed;
    echo["criteria_order"] = cfg.criteria_order;
    echo["all_nonseeds"] = s.all_nonseeds;
    if (cfg.step_weights) echo["weights"] = cfg.step_weights->values();
    s.resolved = std::move(echo);
    return s;
}

} // namespace generank::cli
