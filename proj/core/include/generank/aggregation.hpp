#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "generank/graph.hpp"
#include "generank/madm.hpp"
#include "generank/score.hpp"

namespace generank {

/// The four scoring steps, in fusion order.
enum class Step { Np = 0, Rwr = 1, Sp = 2, Evidence = 3 };
inline constexpr std::size_t step_count = 4;
inline constexpr std::array<Step, step_count> all_steps{Step::Np, Step::Rwr, Step::Sp, Step::Evidence};

std::string_view step_name(Step step);
std::vector<std::string> step_labels();

enum class FusionNormalization { MinMax, None };

struct FusionConfig {
    WeightVector step_weights; // labeled by step_labels()
    FusionNormalization normalization = FusionNormalization::MinMax;
};

/// Uniform weights over the four steps.
WeightVector uniform_step_weights();

/// Min-max rescaling of the candidate entries to [0, 1]; constant input maps
/// to 0. Entries outside `candidates` are 0 in the result.
ScoreVector normalize_scores(const ScoreVector &scores, std::span<const NodeIndex> candidates);

/// fused(g) = sum over steps of weight * (normalized) step score, for candidates only.
ScoreVector weighted_sum(std::span<const ScoreVector, step_count> scores, const FusionConfig &config,
                         std::span<const NodeIndex> candidates);

/**
 * Joint cumulative distribution of N uniform order statistics evaluated at
 * the sorted rank ratios r1 <= ... <= rN:
 *
 *     Q = N! V_N,  V_k = sum_{i=1..k} (-1)^(i-1) V_{k-i} r_{N-k+1}^i / i!,  V_0 = 1
 *
 * Lower Q means the sources agree on a high placement. Throws InputError for
 * unsorted or out-of-range input.
 */
double order_statistics_q(std::span<const double> rank_ratios);

/// ranks[source][candidate], 1 = best, each within 1..M.
struct RankList {
    std::vector<std::vector<std::uint32_t>> ranks;

    std::size_t source_count() const noexcept { return ranks.size(); }
    std::size_t candidate_count() const noexcept { return ranks.empty() ? 0 : ranks.front().size(); }
};

/// Ranks scores in descending order; ties go to the lower position index.
std::vector<std::uint32_t> ranks_from_scores(std::span<const double> scores);

/// Per candidate: Q over the sorted rank ratios rank / M.
std::vector<double> order_statistics_fusion(const RankList &ranks);

/// score(g) = sum_i w_i * gamma^(rank_i(g) - 1); weights index the sources.
std::vector<double> discounted_rating(const RankList &ranks, std::span<const double> weights, double gamma = 0.95);

} // namespace generank
