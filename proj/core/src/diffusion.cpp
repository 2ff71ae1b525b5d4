#include "generank/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "generank/errors.hpp"
#include "parallel.hpp"

namespace generank {

namespace {

constexpr std::size_t parallel_row_threshold = 1u << 15;
constexpr std::size_t rows_per_chunk = 4096;

std::vector<double> weighted_degrees(const InteractionNetwork &network) {
    std::vector<double> degree(network.node_count());
    for (NodeIndex u = 0; u < network.node_count(); ++u) {
        degree[u] = network.weighted_degree(u);
        if (network.degree(u) == 0)
            throw InputError("node '" + network.id(u) + "' has no edges; prune isolated nodes before diffusion");
    }
    return degree;
}

} // namespace

void DiffusionConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InputError("tolerance must be positive");
    if (max_iterations <= 0) throw InputError("max_iterations must be positive");
}

double TransitionMatrix::entry(NodeIndex u, NodeIndex v) const {
    const auto r = row(u);
    const auto it = std::lower_bound(r.begin(), r.end(), v, [](const Entry &e, NodeIndex x) { return e.column < x; });
    return (it != r.end() && it->column == v) ? it->value : 0.0;
}

void TransitionMatrix::multiply(std::span<const double> in, std::span<double> out) const {
    const auto n = size();
    auto rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            double acc = 0.0;
            for (const auto &e : row(static_cast<NodeIndex>(u))) acc += e.value * in[e.column];
            out[u] = acc;
        }
    };
    if (n < parallel_row_threshold) {
        rows(0, n);
        return;
    }
    const auto chunks = (n + rows_per_chunk - 1) / rows_per_chunk;
    detail::parallel_for(chunks, [&](std::size_t c) { rows(c * rows_per_chunk, std::min(n, (c + 1) * rows_per_chunk)); });
}

TransitionMatrix column_normalize(const InteractionNetwork &network) {
    const auto degree = weighted_degrees(network);
    TransitionMatrix m;
    m.normalization_ = Normalization::Column;
    m.offsets_.assign(network.node_count() + 1, 0);
    m.entries_.reserve(2 * network.edge_count());
    for (NodeIndex u = 0; u < network.node_count(); ++u) {
        for (const auto &n : network.neighbors(u)) m.entries_.push_back({n.node, n.weight / degree[n.node]});
        m.offsets_[u + 1] = m.entries_.size();
    }
    return m;
}

TransitionMatrix symmetric_normalize(const InteractionNetwork &network) {
    const auto degree = weighted_degrees(network);
    TransitionMatrix m;
    m.normalization_ = Normalization::Symmetric;
    m.offsets_.assign(network.node_count() + 1, 0);
    m.entries_.reserve(2 * network.edge_count());
    for (NodeIndex u = 0; u < network.node_count(); ++u) {
        for (const auto &n : network.neighbors(u))
            m.entries_.push_back({n.node, n.weight / std::sqrt(degree[u] * degree[n.node])});
        m.offsets_[u + 1] = m.entries_.size();
    }
    return m;
}

ScoreVector diffuse(const TransitionMatrix &matrix, const SeedSet &seeds, const DiffusionConfig &config,
                    const IterationObserver &observer) {
    config.validate();
    if (seeds.empty()) throw InputError("diffusion needs at least one seed");
    const auto n = matrix.size();
    std::vector<double> restart(n, 0.0);
    const double share = 1.0 / static_cast<double>(seeds.size());
    for (const auto s : seeds.indices) {
        if (s >= n) throw InputError("seed index outside the matrix");
        restart[s] = share;
    }

    std::vector<double> current = restart;
    std::vector<double> next(n);
    if (observer) observer(0, current);

    const double walk = 1.0 - config.alpha;
    double delta = 0.0;
    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        matrix.multiply(current, next);
        delta = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            next[u] = walk * next[u] + config.alpha * restart[u];
            delta += std::abs(next[u] - current[u]);
        }
        current.swap(next);
        if (observer) observer(iteration, current);
        if (delta < config.tolerance) {
            ScoreVector out;
            out.values = std::move(current);
            out.provenance = matrix.normalization() == Normalization::Column ? Provenance::Rwr : Provenance::Np;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "diffusion did not converge in " << config.max_iterations << " iterations (last L1 change " << delta << ")";
    throw ConvergenceError(msg.str(), delta);
}

} // namespace generank
