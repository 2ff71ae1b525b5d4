#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace generank {

using NodeIndex = std::uint32_t;

struct Neighbor {
    NodeIndex node;
    double weight; // confidence in (0, 1]
};

/// One line of an edge-record file. `line` is the 1-based source line, 0 when
/// the record did not come from a file.
struct EdgeRecord {
    std::string a;
    std::string b;
    double weight = 0.0;
    std::size_t line = 0;
};

/**
 * Immutable weighted undirected graph over string-identified entities.
 *
 * Adjacency is stored in CSR form; every undirected edge appears once in each
 * endpoint's neighbor list, and neighbor lists are sorted by node index.
 * Node indices are dense and follow first appearance in the construction input.
 */
class InteractionNetwork {
public:
    InteractionNetwork() = default;

    std::size_t node_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

    const std::string &id(NodeIndex u) const { return ids_.at(u); }
    const std::vector<std::string> &ids() const noexcept { return ids_; }
    std::optional<NodeIndex> find(std::string_view id) const;

    std::span<const Neighbor> neighbors(NodeIndex u) const {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeIndex u) const { return offsets_[u + 1] - offsets_[u]; }
    double weighted_degree(NodeIndex u) const;
    std::optional<double> weight(NodeIndex u, NodeIndex v) const;

    /// Each undirected edge once, lower index first, in index order.
    std::vector<EdgeRecord> to_records() const;

    friend class NetworkBuilder;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
};

/// Incremental construction. Nodes may be declared without edges so that
/// isolated entities can be represented (and later pruned).
class NetworkBuilder {
public:
    NodeIndex add_node(std::string_view id);

    /// Validates the weight and merges duplicates by maximum weight.
    /// Returns false (and counts it) when the record is a self-loop.
    bool add_edge(std::string_view a, std::string_view b, double weight, std::size_t line = 0);

    std::size_t self_loops_skipped() const noexcept { return self_loops_; }
    std::size_t duplicates_merged() const noexcept { return duplicates_; }

    InteractionNetwork build() &&;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::unordered_map<std::uint64_t, double> edges_;
    std::size_t self_loops_ = 0;
    std::size_t duplicates_ = 0;
};

struct LoadResult {
    InteractionNetwork network;
    std::size_t self_loops_skipped = 0;
    std::size_t duplicates_merged = 0;
};

LoadResult load_network(std::span<const EdgeRecord> records);

/// Parses `id_a<TAB>id_b<TAB>weight` lines; `#` starts a comment line.
/// Throws InputError naming the line on malformed input.
std::vector<EdgeRecord> read_edge_records(std::istream &in);
void write_edge_records(std::ostream &out, std::span<const EdgeRecord> records);

struct PruneResult {
    InteractionNetwork network;
    std::size_t removed = 0;
};

/// Drops degree-0 nodes and re-indexes densely, preserving relative order.
PruneResult prune_isolated(const InteractionNetwork &network);

struct Components {
    std::vector<std::uint32_t> labels; // per node; labels numbered by lowest member index
    std::size_t count = 0;
};

Components connected_components(const InteractionNetwork &network);

/// Seed entities mapped onto a network. Indices are sorted and unique.
struct SeedSet {
    std::vector<NodeIndex> indices;
    std::vector<std::string> unmapped_ids;

    bool contains(NodeIndex u) const;
    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }

    /// Builds from raw indices (sorted, deduplicated).
    static SeedSet from_indices(std::vector<NodeIndex> indices);
    SeedSet without(NodeIndex u) const;
};

/// Throws InputError when no id matches.
SeedSet map_seeds(const InteractionNetwork &network, std::span<const std::string> seed_ids);

/// One id per line; blank lines and `#` comments ignored.
std::vector<std::string> read_id_list(std::istream &in);

} // namespace generank
