#pragma once

#include <string_view>
#include <vector>

namespace generank {

enum class Provenance { Rwr, Np, Sp, Evidence, Fused };

constexpr std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Rwr: return "rwr";
    case Provenance::Np: return "np";
    case Provenance::Sp: return "sp";
    case Provenance::Evidence: return "evidence";
    case Provenance::Fused: return "fused";
    }
    return "?";
}

/// Per-node score aligned with network indexing; values are finite and >= 0.
struct ScoreVector {
    std::vector<double> values;
    Provenance provenance = Provenance::Fused;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

} // namespace generank
