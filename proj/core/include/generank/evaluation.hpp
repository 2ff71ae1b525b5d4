#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "generank/graph.hpp"

namespace generank {

struct GenePosition {
    std::string chromosome;
    std::uint64_t start = 0;
};

/// gene id -> chromosomal position
class GenePositionTable {
public:
    /// Throws InputError if the gene already has a position.
    void add(std::string_view gene, GenePosition position, std::size_t line = 0);
    const GenePosition *find(std::string_view gene) const;
    std::size_t size() const noexcept { return positions_.size(); }

private:
    std::map<std::string, GenePosition, std::less<>> positions_;
};

/// `gene_id<TAB>chromosome<TAB>start`
GenePositionTable read_positions(std::istream &in);

/// One artificial linkage interval: the target first, then its neighbors nearest-first.
struct LinkageInterval {
    NodeIndex target = 0;
    std::vector<NodeIndex> candidates;
    std::vector<std::string> warnings;
};

inline constexpr std::size_t default_interval_neighbors = 99;

/**
 * Target plus the `neighbors` network genes on the same chromosome that are
 * not in `seeds`, nearest by |start - start(target)| with ties broken by gene
 * id. A shortfall takes every available gene and records a warning. Throws
 * InputError when the target has no position.
 */
LinkageInterval linkage_interval(NodeIndex target, const GenePositionTable &positions,
                                 const InteractionNetwork &network, const SeedSet &seeds,
                                 std::size_t neighbors = default_interval_neighbors);

struct FoldRank {
    std::string target;
    double rank = 0.0; // 1 = best; tied scores share the mean of their positions
    std::size_t interval_size = 0;
};

struct RocPoint {
    std::size_t threshold = 0;
    double false_positive_rate = 0.0; // 1 - specificity
    double true_positive_rate = 0.0;  // sensitivity
};

struct CvReport {
    std::vector<FoldRank> folds; // ordered by target id
    double auc = 0.0;
    double mrr = 0.0;
    double ar = 0.0;
    double top1 = 0.0;
    double top5 = 0.0;
    std::vector<RocPoint> roc;
    std::vector<std::string> warnings;
};

double mrr(std::span<const double> ranks);
double average_rank(std::span<const double> ranks);
/// Fraction of folds whose rank is within ceil(pct * size / 100).
double top_fraction(std::span<const double> ranks, std::span<const std::size_t> sizes, double pct);

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Pooled-threshold ROC over k = 0..max size; AUC by the trapezoid rule.
/// Throws InputError for empty input or a fold of size 1.
RocCurve roc_and_auc(std::span<const double> ranks, std::span<const std::size_t> sizes);

/// Mean-tie rank of the entry at `target_position` under descending scores.
double rank_of(std::span<const double> scores, std::size_t target_position);

/// Recomputes every summary statistic from `folds`.
CvReport summarize(std::vector<FoldRank> folds);

/// Scores each candidate (in the order given) against a fold's seed set.
using CandidateScorer = std::function<std::vector<double>(const SeedSet &, std::span<const NodeIndex>)>;

/// Scores candidates under several rankings at once; one inner vector per ranking.
using MultiCandidateScorer =
    std::function<std::vector<std::vector<double>>(const SeedSet &, std::span<const NodeIndex>)>;

struct LoocvOptions {
    std::size_t neighbors = default_interval_neighbors;
    /// Targets to hold out; empty means every seed.
    std::vector<NodeIndex> targets;
};

/// Raised when the scorer fails on a fold; the message names the target.
class FoldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Leave-one-out cross-validation. For each target seed the seed set loses
 * that target, a linkage interval is built around it, the scorer ranks the
 * interval and the target's rank is recorded. Targets without a position or
 * whose interval holds no other gene are skipped with a warning. Returns one
 * report per ranking produced by the scorer.
 */
std::vector<CvReport> loocv(const MultiCandidateScorer &scorer, const SeedSet &seeds,
                            const GenePositionTable &positions, const InteractionNetwork &network,
                            const LoocvOptions &options = {});

CvReport loocv(const CandidateScorer &scorer, const SeedSet &seeds, const GenePositionTable &positions,
               const InteractionNetwork &network, const LoocvOptions &options = {});

void write_folds_csv(std::ostream &out, const CvReport &report);
void write_roc_csv(std::ostream &out, const CvReport &report);

} // namespace generank
