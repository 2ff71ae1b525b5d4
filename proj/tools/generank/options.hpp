#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "generank/pipeline.hpp"

namespace generank::cli {

/// Everything a command needs after config file and flags are merged.
struct Settings {
    std::string network;
    std::string seeds;
    std::string candidates;
    bool all_nonseeds = false;
    std::string similarity;
    std::string disease_genes;
    std::string disease_name;
    std::string positions;
    std::string supermatrix;
    std::filesystem::path out = ".";
    PipelineConfig pipeline;
    /// Echo of the effective settings for reports (paths excluded).
    nlohmann::json resolved;
};

/// Reads a flat JSON object. Relative paths inside it are taken relative to
/// the file's directory. Throws InputError on syntax errors.
nlohmann::json read_config_file(const std::filesystem::path &path);

/// Applies `values` (config keys, already overlaid with flags) on top of the
/// defaults. Unknown keys and ill-typed values throw InputError.
Settings resolve_settings(const nlohmann::json &values);

/// Keys that name input or output paths.
bool is_path_key(const std::string &key);

} // namespace generank::cli
