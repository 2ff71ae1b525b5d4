#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace generank {

enum class Direction { Benefit, Cost };

struct Criterion {
    std::string name;
    Direction direction = Direction::Benefit;
};

/// Alternatives x criteria performance table.
class DecisionMatrix {
public:
    /// `values` is row-major (one row per alternative). Throws InputError on
    /// shape mismatch, non-finite entries, duplicate criterion names, fewer
    /// than two alternatives or no criteria.
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<Criterion> criteria, std::vector<double> values);

    std::size_t alternative_count() const noexcept { return alternatives_.size(); }
    std::size_t criterion_count() const noexcept { return criteria_.size(); }
    const std::vector<std::string> &alternatives() const noexcept { return alternatives_; }
    const std::vector<Criterion> &criteria() const noexcept { return criteria_; }
    double operator()(std::size_t alternative, std::size_t criterion) const {
        return values_[alternative * criteria_.size() + criterion];
    }

private:
    std::vector<std::string> alternatives_;
    std::vector<Criterion> criteria_;
    std::vector<double> values_;
};

/// CSV: `alternative,+AUC,-AR,...` header (`+` benefit, `-` cost), one row per alternative.
DecisionMatrix read_decision_matrix(std::istream &in);
void write_decision_matrix(std::ostream &out, const DecisionMatrix &matrix);

/// Non-negative weights over labeled items that sum to one (within 1e-9).
class WeightVector {
public:
    WeightVector() = default;
    /// Validates non-negativity and unit sum.
    WeightVector(std::vector<std::string> labels, std::vector<double> values);
    /// Rescales non-negative `raw` values so that they sum to one.
    static WeightVector normalized(std::vector<std::string> labels, std::vector<double> raw);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::vector<double> &values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    /// Throws InputError for an unknown label.
    double at(std::string_view label) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
};

/**
 * Saaty-style reciprocal comparison matrix: positive entries in [1/9, 9],
 * unit diagonal and m[i][j] = 1 / m[j][i].
 */
class PairwiseMatrix {
public:
    PairwiseMatrix(std::vector<std::string> labels, std::vector<double> values);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * labels_.size() + j]; }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
};

/// m[i][j] = min(9, 1 + step * (rank_j - rank_i)) when i is preferred over j.
PairwiseMatrix pairwise_from_ordering(std::span<const std::string> ordered_names, int step = 2);

struct PrincipalEigenpair {
    std::vector<double> vector; // normalized to sum 1
    double value = 0.0;
};

/// Power iteration until the L1 change of the normalized iterate is below 1e-10.
PrincipalEigenpair principal_eigenpair(const PairwiseMatrix &m);

WeightVector ahp_weights(const PairwiseMatrix &m);

/// ((lambda_max - n) / (n - 1)) / RI(n); 0 for n <= 2.
double consistency_ratio(const PairwiseMatrix &m);

/// Column-stochastic square matrix whose rows/columns carry a label and a cluster name.
class Supermatrix {
public:
    /// Throws InputError unless every column sums to 1 within 1e-9 and entries are non-negative.
    Supermatrix(std::vector<std::string> labels, std::vector<std::string> clusters, std::vector<double> values);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::vector<std::string> &clusters() const noexcept { return clusters_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * labels_.size() + j]; }
    const std::vector<double> &values() const noexcept { return values_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::string> clusters_;
    std::vector<double> values_;
};

inline constexpr std::string_view criteria_cluster = "criteria";
inline constexpr std::string_view goal_cluster = "goal";

/**
 * Goal node plus criteria. The goal column holds the AHP weights of
 * `criteria`; each criterion column sends `1 - feedback_share` back to the
 * goal and spreads `feedback_share` uniformly over the other criteria. A
 * share of 0 is the no-feedback hierarchy.
 */
Supermatrix default_supermatrix(const PairwiseMatrix &criteria, double feedback_share = 0.5);

/// Labeled square CSV. Header cells may be written `cluster:label`; a bare
/// label belongs to the "criteria" cluster. Row labels must repeat the header.
PairwiseMatrix read_pairwise_matrix(std::istream &in);
Supermatrix read_supermatrix(std::istream &in);
void write_supermatrix(std::ostream &out, const Supermatrix &m);

/**
 * Limit priorities of the supermatrix restricted to the criteria cluster.
 * The limit is computed by repeated squaring of (1 - eps) W + eps / n J with
 * eps = 1e-6 and then refined with the lazy undamped chain (I + W) / 2 so the
 * damping does not bias the result. Throws ConvergenceError after 200
 * squarings.
 */
WeightVector anp_weights(const Supermatrix &supermatrix, std::string_view cluster = criteria_cluster);

enum class TopsisNormalization { Vector, MinMax };

struct TopsisResult {
    std::vector<double> closeness; // per alternative, in [0, 1]
    std::vector<std::string> warnings;
};

/// `weights` are matched to `d.criteria()` by label.
TopsisResult topsis(const DecisionMatrix &d, const WeightVector &weights,
                    TopsisNormalization normalization = TopsisNormalization::Vector);

/// Closeness of each alternative renormalized to sum one (uniform if all zero).
WeightVector topsis_ahp_weights(const DecisionMatrix &d, const PairwiseMatrix &criterion_pairwise,
                                TopsisNormalization normalization = TopsisNormalization::Vector);
WeightVector topsis_anp_weights(const DecisionMatrix &d, const Supermatrix &supermatrix,
                                TopsisNormalization normalization = TopsisNormalization::Vector);

} // namespace generank
