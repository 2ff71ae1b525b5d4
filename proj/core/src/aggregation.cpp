#include "generank/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generank/errors.hpp"

namespace generank {

std::string_view step_name(Step step) {
    switch (step) {
    case Step::Np: return "NP";
    case Step::Rwr: return "RWR";
    case Step::Sp: return "SP";
    case Step::Evidence: return "EVIDENCE";
    }
    return "?";
}

std::vector<std::string> step_labels() {
    std::vector<std::string> labels;
    for (const auto s : all_steps) labels.emplace_back(step_name(s));
    return labels;
}

WeightVector uniform_step_weights() {
    return WeightVector::normalized(step_labels(), std::vector<double>(step_count, 1.0));
}

ScoreVector normalize_scores(const ScoreVector &scores, std::span<const NodeIndex> candidates) {
    if (candidates.empty()) throw InputError("no candidates to normalize over");
    ScoreVector out;
    out.provenance = scores.provenance;
    out.values.assign(scores.size(), 0.0);
    double lo = scores.values.at(candidates.front());
    double hi = lo;
    for (const auto g : candidates) {
        lo = std::min(lo, scores.values.at(g));
        hi = std::max(hi, scores.values.at(g));
    }
    if (hi == lo) return out;
    for (const auto g : candidates) out.values[g] = (scores.values[g] - lo) / (hi - lo);
    return out;
}

ScoreVector weighted_sum(std::span<const ScoreVector, step_count> scores, const FusionConfig &config,
                         std::span<const NodeIndex> candidates) {
    const auto n = scores[0].size();
    for (const auto &s : scores)
        if (s.size() != n) throw InputError("step score vectors differ in length");
    if (config.step_weights.size() != step_count) throw InputError("fusion needs one weight per step");

    ScoreVector fused;
    fused.provenance = Provenance::Fused;
    fused.values.assign(n, 0.0);
    for (std::size_t k = 0; k < step_count; ++k) {
        const double w = config.step_weights[k];
        if (w == 0.0) continue;
        if (config.normalization == FusionNormalization::MinMax) {
            const auto normalized = normalize_scores(scores[k], candidates);
            for (const auto g : candidates) fused.values[g] += w * normalized.values[g];
        } else {
            for (const auto g : candidates) fused.values.at(g) += w * scores[k].values[g];
        }
    }
    return fused;
}

double order_statistics_q(std::span<const double> rank_ratios) {
    const auto n = rank_ratios.size();
    if (n == 0) throw InputError("order statistics need at least one rank ratio");
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rank_ratios[i];
        if (!(r >= 0.0 && r <= 1.0)) throw InputError("rank ratios must lie in [0, 1]");
        if (i > 0 && r < rank_ratios[i - 1]) throw InputError("rank ratios must be sorted ascending");
    }

    // v[k] holds V_k; factorials up to N.
    std::vector<double> v(n + 1, 0.0);
    std::vector<double> factorial(n + 1, 1.0);
    for (std::size_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * static_cast<double>(i);
    v[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double r = rank_ratios[n - k];
        double acc = 0.0;
        double power = 1.0;
        for (std::size_t i = 1; i <= k; ++i) {
            power *= r;
            const double term = v[k - i] * power / factorial[i];
            acc += (i % 2 == 1) ? term : -term;
        }
        v[k] = acc;
    }
    return std::clamp(factorial[n] * v[n], 0.0, 1.0);
}

std::vector<std::uint32_t> ranks_from_scores(std::span<const double> scores) {
    std::vector<std::uint32_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return scores[a] > scores[b]; });
    std::vector<std::uint32_t> ranks(scores.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<std::uint32_t>(pos + 1);
    return ranks;
}

namespace {

void validate(const RankList &list) {
    if (list.ranks.empty()) throw InputError("rank list has no sources");
    const auto m = list.candidate_count();
    for (const auto &source : list.ranks) {
        if (source.size() != m) throw InputError("rank lists cover different candidate sets");
        for (const auto r : source)
            if (r < 1 || r > m) throw InputError("rank outside 1..M");
    }
}

} // namespace

std::vector<double> order_statistics_fusion(const RankList &ranks) {
    validate(ranks);
    const auto m = ranks.candidate_count();
    std::vector<double> q(m);
    std::vector<double> ratios(ranks.source_count());
    for (std::size_t g = 0; g < m; ++g) {
        for (std::size_t s = 0; s < ranks.source_count(); ++s)
            ratios[s] = static_cast<double>(ranks.ranks[s][g]) / static_cast<double>(m);
        std::sort(ratios.begin(), ratios.end());
        q[g] = order_statistics_q(ratios);
    }
    return q;
}

std::vector<double> discounted_rating(const RankList &ranks, std::span<const double> weights, double gamma) {
    validate(ranks);
    if (weights.size() != ranks.source_count()) throw InputError("one weight per rank source is required");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("discount must lie in (0, 1]");
    std::vector<double> score(ranks.candidate_count(), 0.0);
    for (std::size_t s = 0; s < ranks.source_count(); ++s)
        for (std::size_t g = 0; g < score.size(); ++g)
            score[g] += weights[s] * std::pow(gamma, static_cast<double>(ranks.ranks[s][g]) - 1.0);
    return score;
}

} // namespace generank
