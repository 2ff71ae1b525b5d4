#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "generank/evaluation.hpp"

namespace generank::cli {

/// Writes through a temporary sibling file and renames it into place.
void write_atomically(const std::filesystem::path &path, const std::function<void(std::ostream &)> &fill);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);

/// Round-trip decimal form of a double.
std::string format_number(double x);

/// Sensitivity against 1 - specificity as a standalone SVG line plot.
void write_roc_svg(std::ostream &out, const CvReport &report);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

} // namespace generank::cli
