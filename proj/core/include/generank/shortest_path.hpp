#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "generank/graph.hpp"
#include "generank/score.hpp"

namespace generank {

/// Maps an edge confidence in (0, 1] to a non-negative Dijkstra cost.
enum class DistanceTransform {
    Inverse,  // 1 / c (default; never zero)
    OneMinus, // 1 - c
    NegLog,   // -ln c
};

double edge_cost(double confidence, DistanceTransform transform);
DistanceTransform parse_distance_transform(std::string_view name);
std::string_view to_string(DistanceTransform transform);

struct PathRecord {
    double cost = 0.0;
    std::uint32_t hops = 0;
    double path_weight = 0.0; // sum of confidences along the path
    NodeIndex predecessor = 0;
    bool reachable = false;
};

/**
 * Single-source shortest paths. For each reachable node the record describes
 * one minimum-cost path; ties on cost prefer fewer hops, then the lower
 * predecessor index. The source itself has cost 0, hops 0 and is its own
 * predecessor.
 */
std::vector<PathRecord> dijkstra_distances(const InteractionNetwork &network, NodeIndex source,
                                           DistanceTransform transform = DistanceTransform::Inverse);

/// Median with the mean-of-two-middle convention for even counts. Empty input is an error.
double median(std::vector<double> values);

/**
 * Per-seed shortest-path tables for a fixed seed universe, so that the score
 * for any subset of those seeds (e.g. leave-one-out folds) reuses the same
 * Dijkstra runs.
 */
class SeedPathTable {
public:
    SeedPathTable(const InteractionNetwork &network, const SeedSet &seeds,
                  DistanceTransform transform = DistanceTransform::Inverse);

    /// `subset` must be drawn from the seeds given at construction.
    ScoreVector score(const SeedSet &subset) const;

    /// Score a selection of nodes only; entries for other nodes are 0.
    ScoreVector score(const SeedSet &subset, std::span<const NodeIndex> nodes) const;

private:
    std::size_t node_count_;
    std::vector<NodeIndex> sources_;
    // Row-major [source][node]; hops == 0 marks unreachable (or the source itself).
    std::vector<std::uint32_t> hops_;
    std::vector<double> weights_;
};

/// score(g) = median path weight / mean hop count over seeds reachable from g.
/// Seeds and nodes reaching no seed score 0.
ScoreVector sp_score(const InteractionNetwork &network, const SeedSet &seeds,
                     DistanceTransform transform = DistanceTransform::Inverse);

} // namespace generank
