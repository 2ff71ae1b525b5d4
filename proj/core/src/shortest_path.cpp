#include "generank/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "generank/errors.hpp"
#include "parallel.hpp"

namespace generank {

double edge_cost(double confidence, DistanceTransform transform) {
    switch (transform) {
    case DistanceTransform::Inverse: return 1.0 / confidence;
    case DistanceTransform::OneMinus: return 1.0 - confidence;
    case DistanceTransform::NegLog: return -std::log(confidence);
    }
    return 1.0 / confidence;
}

DistanceTransform parse_distance_transform(std::string_view name) {
    if (name == "inverse") return DistanceTransform::Inverse;
    if (name == "one-minus") return DistanceTransform::OneMinus;
    if (name == "neg-log") return DistanceTransform::NegLog;
    throw InputError("unknown distance transform '" + std::string(name) + "' (inverse, one-minus, neg-log)");
}

std::string_view to_string(DistanceTransform transform) {
    switch (transform) {
    case DistanceTransform::Inverse: return "inverse";
    case DistanceTransform::OneMinus: return "one-minus";
    case DistanceTransform::NegLog: return "neg-log";
    }
    return "inverse";
}

std::vector<PathRecord> dijkstra_distances(const InteractionNetwork &network, NodeIndex source,
                                           DistanceTransform transform) {
    const auto n = network.node_count();
    if (source >= n) throw InputError("source index outside the network");

    std::vector<PathRecord> paths(n);
    std::vector<char> settled(n, 0);
    using Key = std::tuple<double, std::uint32_t, NodeIndex>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;

    paths[source] = {0.0, 0, 0.0, source, true};
    queue.emplace(0.0, 0u, source);
    while (!queue.empty()) {
        const auto u = std::get<2>(queue.top());
        queue.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        const auto &from = paths[u];
        for (const auto &nb : network.neighbors(u)) {
            if (settled[nb.node]) continue;
            const double c = from.cost + edge_cost(nb.weight, transform);
            const std::uint32_t h = from.hops + 1;
            auto &to = paths[nb.node];
            const bool better = !to.reachable || c < to.cost || (c == to.cost && h < to.hops) ||
                                (c == to.cost && h == to.hops && u < to.predecessor);
            if (!better) continue;
            const bool key_changed = !to.reachable || c != to.cost || h != to.hops;
            to = {c, h, from.path_weight + nb.weight, u, true};
            if (key_changed) queue.emplace(c, h, nb.node);
        }
    }
    return paths;
}

double median(std::vector<double> values) {
    if (values.empty()) throw InputError("median of an empty set");
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

SeedPathTable::SeedPathTable(const InteractionNetwork &network, const SeedSet &seeds, DistanceTransform transform)
    : node_count_(network.node_count()), sources_(seeds.indices) {
    if (sources_.empty()) throw InputError("shortest-path scoring needs at least one seed");
    hops_.assign(sources_.size() * node_count_, 0);
    weights_.assign(sources_.size() * node_count_, 0.0);
    detail::parallel_for(sources_.size(), [&](std::size_t row) {
        const auto paths = dijkstra_distances(network, sources_[row], transform);
        const auto base = row * node_count_;
        for (std::size_t v = 0; v < node_count_; ++v) {
            if (!paths[v].reachable) continue;
            hops_[base + v] = paths[v].hops;
            weights_[base + v] = paths[v].path_weight;
        }
    });
}

ScoreVector SeedPathTable::score(const SeedSet &subset) const {
    std::vector<NodeIndex> all(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) all[v] = static_cast<NodeIndex>(v);
    return score(subset, all);
}

ScoreVector SeedPathTable::score(const SeedSet &subset, std::span<const NodeIndex> nodes) const {
    std::vector<std::size_t> rows;
    rows.reserve(subset.size());
    for (const auto s : subset.indices) {
        const auto it = std::lower_bound(sources_.begin(), sources_.end(), s);
        if (it == sources_.end() || *it != s) throw InputError("seed subset is not drawn from the path table's seeds");
        rows.push_back(static_cast<std::size_t>(it - sources_.begin()));
    }

    ScoreVector out;
    out.provenance = Provenance::Sp;
    out.values.assign(node_count_, 0.0);
    std::vector<double> weights;
    for (const auto g : nodes) {
        if (g >= node_count_) throw InputError("node index outside the network");
        if (subset.contains(g)) continue;
        weights.clear();
        std::uint64_t hop_total = 0;
        for (const auto row : rows) {
            const auto hops = hops_[row * node_count_ + g];
            if (hops == 0) continue;
            hop_total += hops;
            weights.push_back(weights_[row * node_count_ + g]);
        }
        if (weights.empty()) continue;
        const double mean_hops = static_cast<double>(hop_total) / static_cast<double>(weights.size());
        out.values[g] = median(weights) / mean_hops;
    }
    return out;
}

ScoreVector sp_score(const InteractionNetwork &network, const SeedSet &seeds, DistanceTransform transform) {
    return SeedPathTable(network, seeds, transform).score(seeds);
}

} // namespace generank
