#include "generank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>

#include "generank/errors.hpp"
#include "tsv.hpp"

namespace generank {

namespace {

std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

} // namespace

std::optional<NodeIndex> InteractionNetwork::find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double InteractionNetwork::weighted_degree(NodeIndex u) const {
    double total = 0.0;
    for (const auto &n : neighbors(u)) total += n.weight;
    return total;
}

std::optional<double> InteractionNetwork::weight(NodeIndex u, NodeIndex v) const {
    const auto list = neighbors(u);
    const auto it = std::lower_bound(list.begin(), list.end(), v,
                                     [](const Neighbor &n, NodeIndex x) { return n.node < x; });
    if (it == list.end() || it->node != v) return std::nullopt;
    return it->weight;
}

std::vector<EdgeRecord> InteractionNetwork::to_records() const {
    std::vector<EdgeRecord> records;
    records.reserve(edge_count());
    for (NodeIndex u = 0; u < node_count(); ++u)
        for (const auto &n : neighbors(u))
            if (u < n.node) records.push_back({ids_[u], ids_[n.node], n.weight, 0});
    return records;
}

NodeIndex NetworkBuilder::add_node(std::string_view id) {
    if (id.empty()) throw InputError("empty entity id");
    const auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<NodeIndex>(ids_.size()));
    if (inserted) ids_.emplace_back(id);
    return it->second;
}

bool NetworkBuilder::add_edge(std::string_view a, std::string_view b, double weight, std::size_t line) {
    if (a.empty() || b.empty()) throw InputError("edge record with empty id" + detail::at_line(line));
    if (!std::isfinite(weight) || weight <= 0.0)
        throw InputError("edge weight must be finite and positive" + detail::at_line(line));
    if (weight > 1.0) throw InputError("edge weight exceeds 1" + detail::at_line(line));
    if (a == b) {
        ++self_loops_;
        return false;
    }
    const auto u = add_node(a);
    const auto v = add_node(b);
    const auto [it, inserted] = edges_.try_emplace(edge_key(u, v), weight);
    if (!inserted) {
        ++duplicates_;
        it->second = std::max(it->second, weight);
    }
    return true;
}

InteractionNetwork NetworkBuilder::build() && {
    InteractionNetwork net;
    const auto n = ids_.size();
    std::vector<std::size_t> degree(n, 0);
    for (const auto &[key, w] : edges_) {
        ++degree[key >> 32];
        ++degree[key & 0xffffffffu];
    }
    net.offsets_.assign(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) net.offsets_[u + 1] = net.offsets_[u] + degree[u];
    net.adjacency_.resize(net.offsets_[n]);
    std::vector<std::size_t> fill(net.offsets_.begin(), net.offsets_.end() - 1);
    for (const auto &[key, w] : edges_) {
        const auto u = static_cast<NodeIndex>(key >> 32);
        const auto v = static_cast<NodeIndex>(key & 0xffffffffu);
        net.adjacency_[fill[u]++] = {v, w};
        net.adjacency_[fill[v]++] = {u, w};
    }
    for (std::size_t u = 0; u < n; ++u)
        std::sort(net.adjacency_.begin() + net.offsets_[u], net.adjacency_.begin() + net.offsets_[u + 1],
                  [](const Neighbor &x, const Neighbor &y) { return x.node < y.node; });
    net.ids_ = std::move(ids_);
    net.index_ = std::move(index_);
    return net;
}

LoadResult load_network(std::span<const EdgeRecord> records) {
    NetworkBuilder builder;
    for (const auto &r : records) builder.add_edge(r.a, r.b, r.weight, r.line);
    LoadResult result;
    result.self_loops_skipped = builder.self_loops_skipped();
    result.duplicates_merged = builder.duplicates_merged();
    result.network = std::move(builder).build();
    return result;
}

std::vector<EdgeRecord> read_edge_records(std::istream &in) {
    std::vector<EdgeRecord> records;
    detail::for_each_tsv_line(in, [&](std::size_t line, const std::vector<std::string_view> &fields) {
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
            throw InputError("malformed edge record, expected id_a<TAB>id_b<TAB>weight" + detail::at_line(line));
        records.push_back({std::string(fields[0]), std::string(fields[1]),
                           detail::parse_double(fields[2], line, "edge weight"), line});
    });
    return records;
}

void write_edge_records(std::ostream &out, std::span<const EdgeRecord> records) {
    const auto old_precision = out.precision(17);
    for (const auto &r : records) out << r.a << '\t' << r.b << '\t' << r.weight << '\n';
    out.precision(old_precision);
}

PruneResult prune_isolated(const InteractionNetwork &network) {
    NetworkBuilder builder;
    for (NodeIndex u = 0; u < network.node_count(); ++u)
        if (network.degree(u) > 0) builder.add_node(network.id(u));
    for (const auto &r : network.to_records()) builder.add_edge(r.a, r.b, r.weight);
    PruneResult result;
    result.network = std::move(builder).build();
    result.removed = network.node_count() - result.network.node_count();
    return result;
}

Components connected_components(const InteractionNetwork &network) {
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    Components c;
    c.labels.assign(network.node_count(), unset);
    std::deque<NodeIndex> queue;
    for (NodeIndex start = 0; start < network.node_count(); ++start) {
        if (c.labels[start] != unset) continue;
        const auto label = static_cast<std::uint32_t>(c.count++);
        c.labels[start] = label;
        queue.push_back(start);
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto &n : network.neighbors(u)) {
                if (c.labels[n.node] == unset) {
                    c.labels[n.node] = label;
                    queue.push_back(n.node);
                }
            }
        }
    }
    return c;
}

bool SeedSet::contains(NodeIndex u) const {
    return std::binary_search(indices.begin(), indices.end(), u);
}

SeedSet SeedSet::from_indices(std::vector<NodeIndex> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    SeedSet s;
    s.indices = std::move(indices);
    return s;
}

SeedSet SeedSet::without(NodeIndex u) const {
    SeedSet s;
    s.indices.reserve(indices.size());
    std::copy_if(indices.begin(), indices.end(), std::back_inserter(s.indices),
                 [u](NodeIndex x) { return x != u; });
    s.unmapped_ids = unmapped_ids;
    return s;
}

SeedSet map_seeds(const InteractionNetwork &network, std::span<const std::string> seed_ids) {
    if (seed_ids.empty()) throw InputError("seed list is empty");
    std::vector<NodeIndex> found;
    SeedSet seeds;
    for (const auto &id : seed_ids) {
        if (const auto u = network.find(id))
            found.push_back(*u);
        else
            seeds.unmapped_ids.push_back(id);
    }
    if (found.empty()) throw InputError("no seeds mapped onto the network");
    auto unmapped = std::move(seeds.unmapped_ids);
    seeds = SeedSet::from_indices(std::move(found));
    seeds.unmapped_ids = std::move(unmapped);
    return seeds;
}

std::vector<std::string> read_id_list(std::istream &in) {
    std::vector<std::string> ids;
    detail::for_each_tsv_line(in, [&](std::size_t line, const std::vector<std::string_view> &fields) {
        if (fields.size() != 1 || fields[0].empty())
            throw InputError("expected one id per line" + detail::at_line(line));
        ids.emplace_back(fields[0]);
    });
    return ids;
}

} // namespace generank
