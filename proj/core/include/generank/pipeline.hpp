#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "generank/aggregation.hpp"
#include "generank/diffusion.hpp"
#include "generank/evaluation.hpp"
#include "generank/evidence.hpp"
#include "generank/graph.hpp"
#include "generank/madm.hpp"
#include "generank/shortest_path.hpp"

namespace generank {

/// How the four step scores become one ranking.
enum class MadmMode {
    TopsisAnp, // weighted sum, weights from TOPSIS with ANP criterion weights
    TopsisAhp, // weighted sum, weights from TOPSIS with AHP criterion weights
    Wdrs,      // weighted discounted rating over the four step rankings
    Ndos,      // order-statistics Q over the four step rankings
    Fixed,     // weighted sum with user-given weights
};

MadmMode parse_madm_mode(std::string_view name);
std::string_view to_string(MadmMode mode);
/// True for the modes that derive step weights by cross-validation.
bool derives_weights(MadmMode mode);

/// Optional symptom-similarity evidence. When any part is missing the
/// evidence step scores every gene 0.
struct EvidenceInputs {
    std::optional<DiseaseSimilarityNetwork> similarity;
    std::optional<DiseaseGeneMap> disease_genes;
    std::string disease;

    bool available() const { return similarity && disease_genes && !disease.empty(); }
};

/// Criteria measured per step, in decreasing importance.
std::vector<std::string> default_criteria_order();
/// AR is a cost criterion; AUC, MRR, top1 and top5 are benefits.
Direction criterion_direction(std::string_view name);

struct PipelineConfig {
    DiffusionConfig rwr;
    DiffusionConfig np;
    DistanceTransform distance = DistanceTransform::Inverse;
    std::size_t evidence_k = 10;

    MadmMode mode = MadmMode::TopsisAnp;
    /// Required for Fixed; optional source weights for Wdrs (uniform otherwise).
    std::optional<WeightVector> step_weights;
    FusionNormalization fusion_normalization = FusionNormalization::MinMax;
    TopsisNormalization topsis_normalization = TopsisNormalization::Vector;

    std::vector<std::string> criteria_order = default_criteria_order();
    int saaty_step = 2;
    /// ANP supermatrix over the criteria; generated from the ordering when absent.
    std::optional<Supermatrix> supermatrix;
    double feedback_share = 0.5;

    double wdrs_gamma = 0.95;
    std::size_t interval_neighbors = default_interval_neighbors;

    /// Derive weights on a random half of the seeds and evaluate on the other half.
    bool split_weights = false;
    std::uint64_t split_seed = 20240521;

    /// Throws InputError on an inconsistent configuration.
    void validate() const;
};

using StepArray = std::array<std::vector<double>, step_count>;

/**
 * Holds everything the four scorers can precompute for a fixed seed universe
 * (transition matrices, per-seed shortest-path tables, evidence counts), so
 * that scoring any subset of the seeds is cheap. Scoring is thread-safe.
 */
class Prioritizer {
public:
    Prioritizer(const InteractionNetwork &network, const SeedSet &seed_universe, const EvidenceInputs &evidence,
                const PipelineConfig &config);

    /// Full-length step vectors for `seeds` (a subset of the universe).
    std::array<ScoreVector, step_count> score_all(const SeedSet &seeds) const;

    /// Step scores of `candidates`, in the order given.
    StepArray score_candidates(const SeedSet &seeds, std::span<const NodeIndex> candidates) const;

    /// Combines per-candidate step scores according to the configured mode.
    /// `weights` is used by the weighted-sum modes and by Wdrs.
    std::vector<double> fuse(const StepArray &steps, std::span<const NodeIndex> candidates,
                             const WeightVector &weights) const;

    const InteractionNetwork &network() const noexcept { return network_; }
    const PipelineConfig &config() const noexcept { return config_; }
    const std::vector<std::string> &warnings() const noexcept { return warnings_; }

private:
    const InteractionNetwork &network_;
    PipelineConfig config_;
    TransitionMatrix column_;
    TransitionMatrix symmetric_;
    SeedPathTable paths_;
    std::vector<double> evidence_counts_;
    std::vector<std::string> warnings_;
};

struct StepScores {
    std::array<ScoreVector, step_count> steps; // NP, RWR, SP, EVIDENCE
    std::vector<std::string> warnings;
};

/// Runs the four scorers once. Throws InputError when every node is a seed.
StepScores score_all(const InteractionNetwork &network, const SeedSet &seeds, const EvidenceInputs &evidence,
                     const PipelineConfig &config);

struct StepWeights {
    DecisionMatrix matrix;                     // steps x (AUC, MRR, AR, top1, top5)
    WeightVector weights;                      // over steps
    WeightVector criterion_weights;            // over criteria
    std::array<CvReport, step_count> reports;  // per-step cross-validation
};

/// Criterion weights for the configured MADM mode (ANP or AHP).
WeightVector criterion_weights(const PipelineConfig &config);

/// Assembles the step x criterion table from per-step reports.
DecisionMatrix step_decision_matrix(const std::array<CvReport, step_count> &reports,
                                    std::span<const std::string> criteria_order);

/**
 * Cross-validates each step on its own, builds the decision matrix and
 * derives step weights with TOPSIS (ANP or AHP criterion weights per mode).
 * When `targets` is non-empty only those seeds are held out.
 */
StepWeights derive_step_weights(const Prioritizer &prioritizer, const SeedSet &seeds,
                                const GenePositionTable &positions, std::span<const NodeIndex> targets = {});

StepWeights derive_step_weights(const InteractionNetwork &network, const SeedSet &seeds,
                                const GenePositionTable &positions, const EvidenceInputs &evidence,
                                const PipelineConfig &config);

struct EvaluationResult {
    CvReport report;
    std::optional<StepWeights> weights;  // present for the deriving modes
    std::vector<NodeIndex> weight_targets; // seeds used to derive weights when split
};

/// Leave-one-out evaluation of the configured pipeline.
EvaluationResult evaluate(const InteractionNetwork &network, const SeedSet &seeds, const GenePositionTable &positions,
                          const EvidenceInputs &evidence, const PipelineConfig &config);

struct RankedGene {
    std::string id;
    std::array<double, step_count> steps{}; // raw NP, RWR, SP, EVIDENCE
    double fused = 0.0;
    std::size_t rank = 0;
};

/**
 * Ranks `candidates` (disjoint from `seeds`) by fused score, descending,
 * ties by gene id. Weighted-sum modes use `weights`; Fixed mode falls back
 * to config.step_weights when `weights` is empty.
 */
std::vector<RankedGene> prioritize(const InteractionNetwork &network, const SeedSet &seeds,
                                   const EvidenceInputs &evidence, std::span<const NodeIndex> candidates,
                                   const PipelineConfig &config, const std::optional<WeightVector> &weights = {});

/// Every non-seed node, in index order.
std::vector<NodeIndex> all_nonseeds(const InteractionNetwork &network, const SeedSet &seeds);

} // namespace generank
