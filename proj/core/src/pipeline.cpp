#include "generank/pipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "generank/errors.hpp"

namespace generank {

namespace {

const std::vector<std::string> known_criteria{"AUC", "MRR", "AR", "top1", "top5"};

double criterion_value(const CvReport &report, std::string_view name) {
    if (name == "AUC") return report.auc;
    if (name == "MRR") return report.mrr;
    if (name == "AR") return report.ar;
    if (name == "top1") return report.top1;
    if (name == "top5") return report.top5;
    throw InputError("unknown criterion '" + std::string(name) + "'");
}

std::vector<std::vector<double>> to_columns(StepArray steps) {
    return {std::make_move_iterator(steps.begin()), std::make_move_iterator(steps.end())};
}

/// Ranks positions by descending score; equal scores are ordered by gene id.
std::vector<std::uint32_t> rank_with_id_ties(std::span<const double> scores, std::span<const NodeIndex> candidates,
                                             const InteractionNetwork &network) {
    std::vector<std::uint32_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return network.id(candidates[a]) < network.id(candidates[b]);
    });
    std::vector<std::uint32_t> ranks(scores.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<std::uint32_t>(pos + 1);
    return ranks;
}

/// Per-fold step scores, keyed by the held-out target, so that the weight
/// derivation pass and the fused evaluation pass score each fold only once.
class StepCache {
public:
    explicit StepCache(const Prioritizer &prioritizer) : prioritizer_(prioritizer) {}

    StepArray get(const SeedSet &seeds, std::span<const NodeIndex> candidates) {
        const auto target = candidates.front();
        {
            std::lock_guard lock(mutex_);
            const auto it = entries_.find(target);
            if (it != entries_.end() && it->second.seeds == seeds.indices &&
                std::equal(candidates.begin(), candidates.end(), it->second.candidates.begin(),
                           it->second.candidates.end()))
                return it->second.steps;
        }
        auto steps = prioritizer_.score_candidates(seeds, candidates);
        std::lock_guard lock(mutex_);
        entries_[target] = {seeds.indices, {candidates.begin(), candidates.end()}, steps};
        return steps;
    }

private:
    struct Entry {
        std::vector<NodeIndex> seeds;
        std::vector<NodeIndex> candidates;
        StepArray steps;
    };
    const Prioritizer &prioritizer_;
    std::mutex mutex_;
    std::map<NodeIndex, Entry> entries_;
};

StepWeights derive_from_scorer(const Prioritizer &prioritizer, const SeedSet &seeds,
                               const GenePositionTable &positions, std::span<const NodeIndex> targets,
                               const MultiCandidateScorer &scorer) {
    const auto &config = prioritizer.config();
    LoocvOptions options;
    options.neighbors = config.interval_neighbors;
    options.targets.assign(targets.begin(), targets.end());
    auto reports = loocv(scorer, seeds, positions, prioritizer.network(), options);

    std::array<CvReport, step_count> per_step;
    std::move(reports.begin(), reports.end(), per_step.begin());
    auto matrix = step_decision_matrix(per_step, config.criteria_order);
    auto cweights = criterion_weights(config);
    const auto closeness = topsis(matrix, cweights, config.topsis_normalization).closeness;
    const double total = std::accumulate(closeness.begin(), closeness.end(), 0.0);
    auto weights = total > 0.0 ? WeightVector::normalized(step_labels(), closeness) : uniform_step_weights();
    return {std::move(matrix), std::move(weights), std::move(cweights), std::move(per_step)};
}

WeightVector weights_for_mode(const PipelineConfig &config) {
    if (config.step_weights) return *config.step_weights;
    return uniform_step_weights();
}

} // namespace

MadmMode parse_madm_mode(std::string_view name) {
    if (name == "topsis-anp") return MadmMode::TopsisAnp;
    if (name == "topsis-ahp") return MadmMode::TopsisAhp;
    if (name == "wdrs") return MadmMode::Wdrs;
    if (name == "ndos") return MadmMode::Ndos;
    if (name == "fixed") return MadmMode::Fixed;
    throw InputError("unknown mode '" + std::string(name) + "' (topsis-anp, topsis-ahp, wdrs, ndos, fixed)");
}

std::string_view to_string(MadmMode mode) {
    switch (mode) {
    case MadmMode::TopsisAnp: return "topsis-anp";
    case MadmMode::TopsisAhp: return "topsis-ahp";
    case MadmMode::Wdrs: return "wdrs";
    case MadmMode::Ndos: return "ndos";
    case MadmMode::Fixed: return "fixed";
    }
    return "?";
}

bool derives_weights(MadmMode mode) { return mode == MadmMode::TopsisAnp || mode == MadmMode::TopsisAhp; }

std::vector<std::string> default_criteria_order() { return known_criteria; }

Direction criterion_direction(std::string_view name) { return name == "AR" ? Direction::Cost : Direction::Benefit; }

void PipelineConfig::validate() const {
    rwr.validate();
    np.validate();
    if (evidence_k == 0) throw InputError("evidence_k must be positive");
    if (saaty_step < 1 || saaty_step > 8) throw InputError("saaty_step must lie in [1, 8]");
    if (criteria_order.empty()) throw InputError("criteria order is empty");
    std::set<std::string> seen;
    for (const auto &c : criteria_order) {
        if (std::find(known_criteria.begin(), known_criteria.end(), c) == known_criteria.end())
            throw InputError("unknown criterion '" + c + "' (AUC, MRR, AR, top1, top5)");
        if (!seen.insert(c).second) throw InputError("criterion '" + c + "' listed twice");
    }
    if (step_weights && step_weights->labels() != step_labels())
        throw InputError("step weights must be given for NP, RWR, SP, EVIDENCE in that order");
    if (mode == MadmMode::Fixed && !step_weights) throw InputError("fixed mode needs step weights");
    if (!(feedback_share >= 0.0 && feedback_share < 1.0)) throw InputError("feedback share must lie in [0, 1)");
    if (!(wdrs_gamma > 0.0 && wdrs_gamma <= 1.0)) throw InputError("wdrs_gamma must lie in (0, 1]");
    if (interval_neighbors == 0) throw InputError("interval_neighbors must be positive");
}

Prioritizer::Prioritizer(const InteractionNetwork &network, const SeedSet &seed_universe,
                         const EvidenceInputs &evidence, const PipelineConfig &config)
    : network_(network), config_((config.validate(), config)), column_(column_normalize(network)),
      symmetric_(symmetric_normalize(network)), paths_(network, seed_universe, config.distance),
      evidence_counts_(network.node_count(), 0.0) {
    if (evidence.available()) {
        auto top = top_similar_diseases(*evidence.similarity, evidence.disease, config.evidence_k);
        warnings_ = std::move(top.warnings);
        std::vector<std::string> names;
        for (auto &d : top.diseases) names.push_back(std::move(d.disease));
        auto counted = evidence_score(names, *evidence.disease_genes, network, SeedSet{});
        evidence_counts_ = std::move(counted.scores.values);
        warnings_.insert(warnings_.end(), counted.warnings.begin(), counted.warnings.end());
    }
}

std::array<ScoreVector, step_count> Prioritizer::score_all(const SeedSet &seeds) const {
    std::array<ScoreVector, step_count> out;
    out[static_cast<std::size_t>(Step::Np)] = diffuse(symmetric_, seeds, config_.np);
    out[static_cast<std::size_t>(Step::Rwr)] = diffuse(column_, seeds, config_.rwr);
    out[static_cast<std::size_t>(Step::Sp)] = paths_.score(seeds);
    auto &evidence = out[static_cast<std::size_t>(Step::Evidence)];
    evidence.provenance = Provenance::Evidence;
    evidence.values = evidence_counts_;
    for (const auto s : seeds.indices) evidence.values[s] = 0.0;
    return out;
}

StepArray Prioritizer::score_candidates(const SeedSet &seeds, std::span<const NodeIndex> candidates) const {
    const auto np = diffuse(symmetric_, seeds, config_.np);
    const auto rwr = diffuse(column_, seeds, config_.rwr);
    const auto sp = paths_.score(seeds, candidates);
    StepArray out;
    for (auto &column : out) column.reserve(candidates.size());
    for (const auto g : candidates) {
        out[0].push_back(np.values[g]);
        out[1].push_back(rwr.values[g]);
        out[2].push_back(sp.values[g]);
        out[3].push_back(seeds.contains(g) ? 0.0 : evidence_counts_[g]);
    }
    return out;
}

std::vector<double> Prioritizer::fuse(const StepArray &steps, std::span<const NodeIndex> candidates,
                                      const WeightVector &weights) const {
    const auto m = candidates.size();
    for (const auto &column : steps)
        if (column.size() != m) throw InputError("step scores do not match the candidate list");

    if (config_.mode == MadmMode::Wdrs || config_.mode == MadmMode::Ndos) {
        RankList list;
        for (const auto &column : steps) list.ranks.push_back(rank_with_id_ties(column, candidates, network_));
        if (config_.mode == MadmMode::Wdrs) return discounted_rating(list, weights.values(), config_.wdrs_gamma);
        auto q = order_statistics_fusion(list);
        for (auto &x : q) x = 1.0 - x;
        return q;
    }

    // Positions within the candidate list stand in for node indices here.
    std::array<ScoreVector, step_count> local;
    for (std::size_t k = 0; k < step_count; ++k) local[k].values = steps[k];
    std::vector<NodeIndex> positions(m);
    std::iota(positions.begin(), positions.end(), NodeIndex{0});
    FusionConfig fusion{weights, config_.fusion_normalization};
    return weighted_sum(local, fusion, positions).values;
}

StepScores score_all(const InteractionNetwork &network, const SeedSet &seeds, const EvidenceInputs &evidence,
                     const PipelineConfig &config) {
    if (seeds.empty()) throw InputError("no seeds");
    if (seeds.size() >= network.node_count()) throw InputError("every node is a seed; nothing to rank");
    Prioritizer prioritizer(network, seeds, evidence, config);
    return {prioritizer.score_all(seeds), prioritizer.warnings()};
}

WeightVector criterion_weights(const PipelineConfig &config) {
    if (config.mode == MadmMode::TopsisAnp) {
        if (config.supermatrix) return anp_weights(*config.supermatrix);
        const auto pairwise = pairwise_from_ordering(config.criteria_order, config.saaty_step);
        return anp_weights(default_supermatrix(pairwise, config.feedback_share));
    }
    return ahp_weights(pairwise_from_ordering(config.criteria_order, config.saaty_step));
}

DecisionMatrix step_decision_matrix(const std::array<CvReport, step_count> &reports,
                                    std::span<const std::string> criteria_order) {
    std::vector<Criterion> criteria;
    for (const auto &name : criteria_order) criteria.push_back({name, criterion_direction(name)});
    std::vector<double> values;
    for (const auto &report : reports)
        for (const auto &name : criteria_order) values.push_back(criterion_value(report, name));
    return DecisionMatrix(step_labels(), std::move(criteria), std::move(values));
}

StepWeights derive_step_weights(const Prioritizer &prioritizer, const SeedSet &seeds,
                                const GenePositionTable &positions, std::span<const NodeIndex> targets) {
    const MultiCandidateScorer scorer = [&](const SeedSet &s, std::span<const NodeIndex> c) {
        return to_columns(prioritizer.score_candidates(s, c));
    };
    return derive_from_scorer(prioritizer, seeds, positions, targets, scorer);
}

StepWeights derive_step_weights(const InteractionNetwork &network, const SeedSet &seeds,
                                const GenePositionTable &positions, const EvidenceInputs &evidence,
                                const PipelineConfig &config) {
    if (!derives_weights(config.mode)) throw InputError("mode '" + std::string(to_string(config.mode)) + "' derives no step weights");
    Prioritizer prioritizer(network, seeds, evidence, config);
    return derive_step_weights(prioritizer, seeds, positions);
}

EvaluationResult evaluate(const InteractionNetwork &network, const SeedSet &seeds, const GenePositionTable &positions,
                          const EvidenceInputs &evidence, const PipelineConfig &config) {
    Prioritizer prioritizer(network, seeds, evidence, config);
    StepCache cache(prioritizer);
    EvaluationResult result;
    LoocvOptions options;
    options.neighbors = config.interval_neighbors;

    WeightVector weights = weights_for_mode(config);
    if (derives_weights(config.mode)) {
        if (config.split_weights) {
            std::vector<NodeIndex> shuffled = seeds.indices;
            std::mt19937_64 rng(config.split_seed);
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const auto half = (shuffled.size() + 1) / 2;
            auto weight_seeds = SeedSet::from_indices({shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(half)});
            std::vector<NodeIndex> eval_targets(shuffled.begin() + static_cast<std::ptrdiff_t>(half), shuffled.end());
            std::sort(eval_targets.begin(), eval_targets.end());
            if (weight_seeds.size() < 2 || eval_targets.empty())
                throw InputError("--split-weights needs at least three seeds");
            result.weights = derive_step_weights(prioritizer, weight_seeds, positions);
            result.weight_targets = weight_seeds.indices;
            options.targets = std::move(eval_targets);
        } else {
            const MultiCandidateScorer scorer = [&](const SeedSet &s, std::span<const NodeIndex> c) {
                return to_columns(cache.get(s, c));
            };
            result.weights = derive_from_scorer(prioritizer, seeds, positions, {}, scorer);
            result.weight_targets = seeds.indices;
        }
        weights = result.weights->weights;
    }

    const CandidateScorer fused = [&](const SeedSet &s, std::span<const NodeIndex> c) {
        return prioritizer.fuse(cache.get(s, c), c, weights);
    };
    result.report = loocv(fused, seeds, positions, network, options);
    const auto &extra = prioritizer.warnings();
    result.report.warnings.insert(result.report.warnings.begin(), extra.begin(), extra.end());
    return result;
}

std::vector<RankedGene> prioritize(const InteractionNetwork &network, const SeedSet &seeds,
                                   const EvidenceInputs &evidence, std::span<const NodeIndex> candidates,
                                   const PipelineConfig &config, const std::optional<WeightVector> &weights) {
    if (candidates.empty()) throw InputError("no candidates to rank");
    for (const auto g : candidates) {
        if (g >= network.node_count()) throw InputError("candidate index outside the network");
        if (seeds.contains(g)) throw InputError("candidate '" + network.id(g) + "' is also a seed");
    }
    WeightVector w;
    if (weights)
        w = *weights;
    else if (derives_weights(config.mode) && !config.step_weights)
        throw InputError("mode '" + std::string(to_string(config.mode)) + "' needs derived step weights");
    else
        w = weights_for_mode(config);

    Prioritizer prioritizer(network, seeds, evidence, config);
    const auto steps = prioritizer.score_candidates(seeds, candidates);
    const auto fused = prioritizer.fuse(steps, candidates, w);

    std::vector<RankedGene> ranked(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ranked[i].id = network.id(candidates[i]);
        for (std::size_t k = 0; k < step_count; ++k) ranked[i].steps[k] = steps[k][i];
        ranked[i].fused = fused[i];
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedGene &a, const RankedGene &b) {
        return a.fused != b.fused ? a.fused > b.fused : a.id < b.id;
    });
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
    return ranked;
}

std::vector<NodeIndex> all_nonseeds(const InteractionNetwork &network, const SeedSet &seeds) {
    std::vector<NodeIndex> out;
    for (NodeIndex u = 0; u < network.node_count(); ++u)
        if (!seeds.contains(u)) out.push_back(u);
    return out;
}

} // namespace generank
