#pragma once

#include <functional>
#include <span>
#include <vector>

#include "generank/graph.hpp"
#include "generank/score.hpp"

namespace generank {

struct DiffusionConfig {
    double alpha = 0.15;     // restart probability
    double tolerance = 1e-6; // on the L1 norm of successive iterates
    int max_iterations = 1000;

    /// Throws InputError when a field is out of range.
    void validate() const;
};

enum class Normalization { Column, Symmetric };

/// Sparse square matrix stored by rows, so that (W y)[u] = sum over row(u).
class TransitionMatrix {
public:
    struct Entry {
        NodeIndex column;
        double value;
    };

    Normalization normalization() const noexcept { return normalization_; }
    std::size_t size() const noexcept { return offsets_.size() - 1; }

    std::span<const Entry> row(NodeIndex u) const {
        return {entries_.data() + offsets_[u], entries_.data() + offsets_[u + 1]};
    }
    double entry(NodeIndex u, NodeIndex v) const;

    /// out = W * in. Both spans must have size() elements.
    void multiply(std::span<const double> in, std::span<double> out) const;

    friend TransitionMatrix column_normalize(const InteractionNetwork &);
    friend TransitionMatrix symmetric_normalize(const InteractionNetwork &);

private:
    Normalization normalization_ = Normalization::Column;
    std::vector<std::size_t> offsets_{0};
    std::vector<Entry> entries_;
};

/// W[u][v] = w(u,v) / deg_w(v): every column sums to one. The network must
/// have no degree-0 nodes (run prune_isolated first); otherwise InputError.
TransitionMatrix column_normalize(const InteractionNetwork &network);

/// W[u][v] = w(u,v) / sqrt(deg_w(u) deg_w(v)). Same precondition.
TransitionMatrix symmetric_normalize(const InteractionNetwork &network);

/// Called with iteration 0 for the restart vector, then once per iterate.
using IterationObserver = std::function<void(int iteration, std::span<const double> iterate)>;

/**
 * Random walk with restart on `matrix`:
 *
 *     y(t+1) = (1 - alpha) W y(t) + alpha y0,   y0 = uniform over seeds
 *
 * iterated until ||y(t+1) - y(t)||_1 < tolerance. Seed entries stay in the
 * output. Provenance is Rwr for column-normalized matrices and Np for the
 * symmetric form. Throws ConvergenceError at max_iterations.
 */
ScoreVector diffuse(const TransitionMatrix &matrix, const SeedSet &seeds, const DiffusionConfig &config,
                    const IterationObserver &observer = {});

} // namespace generank
