#include "generank/madm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "generank/errors.hpp"
#include "tsv.hpp"

namespace generank {

namespace {

constexpr double weight_sum_tolerance = 1e-9;
constexpr double eigen_tolerance = 1e-10;
constexpr int eigen_max_iterations = 100000;
constexpr double anp_damping = 1e-6;
constexpr int anp_max_squarings = 200;

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Accepts plain decimals and `a/b` fractions (common in hand-written comparison matrices).
double parse_cell(std::string_view text, std::size_t line) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return detail::parse_double(text, line, "matrix entry");
    const double num = detail::parse_double(detail::trim(text.substr(0, slash)), line, "matrix entry");
    const double den = detail::parse_double(detail::trim(text.substr(slash + 1)), line, "matrix entry");
    if (den == 0.0) throw InputError("division by zero in matrix entry" + detail::at_line(line));
    return num / den;
}

std::vector<double> multiply(const std::vector<double> &a, const std::vector<double> &b, std::size_t n) {
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    return c;
}

void check_unique(const std::vector<std::string> &labels, const char *what) {
    std::set<std::string> seen;
    for (const auto &l : labels) {
        if (l.empty()) throw InputError(std::string("empty ") + what + " label");
        if (!seen.insert(l).second) throw InputError(std::string("duplicate ") + what + " label '" + l + "'");
    }
}

struct LabeledSquare {
    std::vector<std::string> labels;
    std::vector<std::string> clusters;
    std::vector<double> values;
};

LabeledSquare read_labeled_square(std::istream &in) {
    LabeledSquare sq;
    std::size_t row = 0;
    bool header_seen = false;
    detail::for_each_tsv_line(
        in,
        [&](std::size_t line, const std::vector<std::string_view> &f) {
            if (!header_seen) {
                if (f.size() < 2) throw InputError("matrix header needs at least one label" + detail::at_line(line));
                for (std::size_t i = 1; i < f.size(); ++i) {
                    const auto colon = f[i].find(':');
                    if (colon == std::string_view::npos) {
                        sq.clusters.emplace_back(criteria_cluster);
                        sq.labels.emplace_back(f[i]);
                    } else {
                        sq.clusters.emplace_back(detail::trim(f[i].substr(0, colon)));
                        sq.labels.emplace_back(detail::trim(f[i].substr(colon + 1)));
                    }
                }
                header_seen = true;
                return;
            }
            const auto n = sq.labels.size();
            if (row >= n) throw InputError("matrix has more rows than labels" + detail::at_line(line));
            if (f.size() != n + 1) throw InputError("matrix row has the wrong number of cells" + detail::at_line(line));
            auto label = f[0];
            if (const auto colon = label.find(':'); colon != std::string_view::npos)
                label = detail::trim(label.substr(colon + 1));
            if (label != sq.labels[row])
                throw InputError("row label '" + std::string(label) + "' does not match header '" + sq.labels[row] +
                                 "'" + detail::at_line(line));
            for (std::size_t j = 0; j < n; ++j) sq.values.push_back(parse_cell(f[j + 1], line));
            ++row;
        },
        ',');
    if (!header_seen) throw InputError("matrix file is empty");
    if (row != sq.labels.size()) throw InputError("matrix is not square");
    return sq;
}

std::vector<double> criterion_weights_for(const DecisionMatrix &d, const WeightVector &w) {
    std::vector<double> out;
    out.reserve(d.criterion_count());
    for (const auto &c : d.criteria()) out.push_back(w.at(c.name));
    return out;
}

WeightVector closeness_weights(const DecisionMatrix &d, const std::vector<double> &closeness) {
    const double total = std::accumulate(closeness.begin(), closeness.end(), 0.0);
    if (total <= 0.0)
        return WeightVector::normalized(d.alternatives(), std::vector<double>(d.alternative_count(), 1.0));
    return WeightVector::normalized(d.alternatives(), closeness);
}

} // namespace

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives, std::vector<Criterion> criteria,
                               std::vector<double> values)
    : alternatives_(std::move(alternatives)), criteria_(std::move(criteria)), values_(std::move(values)) {
    if (alternatives_.size() < 2) throw InputError("decision matrix needs at least two alternatives");
    if (criteria_.empty()) throw InputError("decision matrix needs at least one criterion");
    if (values_.size() != alternatives_.size() * criteria_.size())
        throw InputError("decision matrix shape does not match its labels");
    check_unique(alternatives_, "alternative");
    std::vector<std::string> names;
    for (const auto &c : criteria_) names.push_back(c.name);
    check_unique(names, "criterion");
    for (const auto v : values_)
        if (!std::isfinite(v)) throw InputError("decision matrix entries must be finite");
}

DecisionMatrix read_decision_matrix(std::istream &in) {
    std::vector<std::string> alternatives;
    std::vector<Criterion> criteria;
    std::vector<double> values;
    bool header_seen = false;
    detail::for_each_tsv_line(
        in,
        [&](std::size_t line, const std::vector<std::string_view> &f) {
            if (!header_seen) {
                if (f.size() < 2) throw InputError("decision matrix header needs criteria" + detail::at_line(line));
                for (std::size_t i = 1; i < f.size(); ++i) {
                    const auto cell = f[i];
                    if (cell.size() < 2 || (cell.front() != '+' && cell.front() != '-'))
                        throw InputError("criterion '" + std::string(cell) + "' must be prefixed with + or -" +
                                         detail::at_line(line));
                    criteria.push_back({std::string(cell.substr(1)),
                                        cell.front() == '+' ? Direction::Benefit : Direction::Cost});
                }
                header_seen = true;
                return;
            }
            if (f.size() != criteria.size() + 1)
                throw InputError("decision matrix row has the wrong number of cells" + detail::at_line(line));
            alternatives.emplace_back(f[0]);
            for (std::size_t j = 1; j < f.size(); ++j)
                values.push_back(detail::parse_double(f[j], line, "decision matrix entry"));
        },
        ',');
    return DecisionMatrix(std::move(alternatives), std::move(criteria), std::move(values));
}

void write_decision_matrix(std::ostream &out, const DecisionMatrix &matrix) {
    out << "alternative";
    for (const auto &c : matrix.criteria()) out << ',' << (c.direction == Direction::Benefit ? '+' : '-') << c.name;
    out << '\n';
    for (std::size_t a = 0; a < matrix.alternative_count(); ++a) {
        out << matrix.alternatives()[a];
        for (std::size_t c = 0; c < matrix.criterion_count(); ++c) out << ',' << format_number(matrix(a, c));
        out << '\n';
    }
}

WeightVector::WeightVector(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() != values_.size()) throw InputError("weight labels and values differ in length");
    if (values_.empty()) throw InputError("empty weight vector");
    double total = 0.0;
    for (const auto v : values_) {
        if (!std::isfinite(v) || v < 0.0) throw InputError("weights must be finite and non-negative");
        total += v;
    }
    if (std::abs(total - 1.0) > weight_sum_tolerance) throw InputError("weights must sum to 1");
}

WeightVector WeightVector::normalized(std::vector<std::string> labels, std::vector<double> raw) {
    double total = 0.0;
    for (const auto v : raw) {
        if (!std::isfinite(v) || v < 0.0) throw InputError("weights must be finite and non-negative");
        total += v;
    }
    if (total <= 0.0) throw InputError("weights sum to zero");
    for (auto &v : raw) v /= total;
    return WeightVector(std::move(labels), std::move(raw));
}

double WeightVector::at(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return values_[i];
    throw InputError("no weight for '" + std::string(label) + "'");
}

PairwiseMatrix::PairwiseMatrix(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    const auto n = labels_.size();
    if (n == 0) throw InputError("empty comparison matrix");
    if (values_.size() != n * n) throw InputError("comparison matrix is not square");
    check_unique(labels_, "comparison");
    constexpr double slack = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs((*this)(i, i) - 1.0) > slack) throw InputError("comparison matrix diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v < 1.0 / 9.0 - slack || v > 9.0 + slack)
                throw InputError("comparison entries must lie in [1/9, 9]");
            if (std::abs(v * (*this)(j, i) - 1.0) > slack) throw InputError("comparison matrix is not reciprocal");
        }
    }
}

PairwiseMatrix pairwise_from_ordering(std::span<const std::string> ordered_names, int step) {
    if (ordered_names.empty()) throw InputError("criteria ordering is empty");
    if (step < 1 || step > 8) throw InputError("comparison step must lie in [1, 8]");
    const auto n = ordered_names.size();
    std::vector<double> values(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double preference = std::min(9.0, 1.0 + step * static_cast<double>(j - i));
            values[i * n + j] = preference;
            values[j * n + i] = 1.0 / preference;
        }
    return PairwiseMatrix({ordered_names.begin(), ordered_names.end()}, std::move(values));
}

PrincipalEigenpair principal_eigenpair(const PairwiseMatrix &m) {
    const auto n = m.size();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);
    double change = 0.0;
    for (int it = 0; it < eigen_max_iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * x[j];
            y[i] = acc;
        }
        const double lambda = std::accumulate(y.begin(), y.end(), 0.0); // x sums to one
        change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= lambda;
            change += std::abs(y[i] - x[i]);
        }
        x.swap(y);
        if (change < eigen_tolerance) {
            // Rayleigh-style estimate on the converged vector.
            double value = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) value += m(i, j) * x[j];
            return {std::move(x), value};
        }
    }
    throw ConvergenceError("principal eigenvector did not converge", change);
}

WeightVector ahp_weights(const PairwiseMatrix &m) {
    return WeightVector::normalized(m.labels(), principal_eigenpair(m).vector);
}

double consistency_ratio(const PairwiseMatrix &m) {
    // Random index for n = 3..10; larger orders reuse the n = 10 value.
    static constexpr double random_index[] = {0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
    const auto n = m.size();
    if (n <= 2) return 0.0;
    const double lambda = principal_eigenpair(m).value;
    const double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
    const double ri = random_index[std::min<std::size_t>(n, 10) - 3];
    return std::max(0.0, ci / ri);
}

Supermatrix::Supermatrix(std::vector<std::string> labels, std::vector<std::string> clusters, std::vector<double> values)
    : labels_(std::move(labels)), clusters_(std::move(clusters)), values_(std::move(values)) {
    const auto n = labels_.size();
    if (n == 0) throw InputError("empty supermatrix");
    if (clusters_.size() != n) throw InputError("supermatrix needs one cluster per label");
    if (values_.size() != n * n) throw InputError("supermatrix is not square");
    check_unique(labels_, "supermatrix");
    for (std::size_t j = 0; j < n; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v < 0.0) throw InputError("supermatrix entries must be finite and non-negative");
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw InputError("supermatrix column '" + labels_[j] + "' does not sum to 1");
    }
}

Supermatrix default_supermatrix(const PairwiseMatrix &criteria, double feedback_share) {
    if (!(feedback_share >= 0.0 && feedback_share < 1.0)) throw InputError("feedback share must lie in [0, 1)");
    const auto k = criteria.size();
    if (k < 2 && feedback_share > 0.0) feedback_share = 0.0;
    const auto n = k + 1;
    const auto goal_weights = ahp_weights(criteria);

    std::vector<std::string> labels{"goal"};
    std::vector<std::string> clusters{std::string(goal_cluster)};
    for (const auto &l : criteria.labels()) {
        labels.push_back(l);
        clusters.emplace_back(criteria_cluster);
    }
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < k; ++i) values[(i + 1) * n] = goal_weights[i];
    for (std::size_t j = 1; j < n; ++j) {
        values[j] = 1.0 - feedback_share;
        for (std::size_t i = 1; i < n; ++i)
            if (i != j) values[i * n + j] = feedback_share / static_cast<double>(k - 1);
    }
    return Supermatrix(std::move(labels), std::move(clusters), std::move(values));
}

PairwiseMatrix read_pairwise_matrix(std::istream &in) {
    auto sq = read_labeled_square(in);
    return PairwiseMatrix(std::move(sq.labels), std::move(sq.values));
}

Supermatrix read_supermatrix(std::istream &in) {
    auto sq = read_labeled_square(in);
    return Supermatrix(std::move(sq.labels), std::move(sq.clusters), std::move(sq.values));
}

void write_supermatrix(std::ostream &out, const Supermatrix &m) {
    out << "node";
    for (std::size_t i = 0; i < m.size(); ++i) out << ',' << m.clusters()[i] << ':' << m.labels()[i];
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.clusters()[i] << ':' << m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) out << ',' << format_number(m(i, j));
        out << '\n';
    }
}

WeightVector anp_weights(const Supermatrix &supermatrix, std::string_view cluster) {
    const auto n = supermatrix.size();
    const auto &w = supermatrix.values();

    std::vector<double> power(n * n);
    const double uniform = anp_damping / static_cast<double>(n);
    for (std::size_t i = 0; i < n * n; ++i) power[i] = (1.0 - anp_damping) * w[i] + uniform;

    bool converged = false;
    double change = 0.0;
    for (int s = 0; s < anp_max_squarings; ++s) {
        auto next = multiply(power, power, n);
        // Rounding drift in the column sums compounds with every squaring.
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += next[i * n + j];
            for (std::size_t i = 0; i < n; ++i) next[i * n + j] /= sum;
        }
        change = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) change = std::max(change, std::abs(next[i] - power[i]));
        power = std::move(next);
        if (change < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("limit supermatrix did not converge", change);

    std::vector<double> limit(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) limit[i] += power[i * n + j];
        limit[i] /= static_cast<double>(n);
    }

    // Refine with the lazy undamped chain, which shares W's stationary vectors
    // and is aperiodic.
    std::vector<double> next(n);
    for (int it = 0; it < 100000; ++it) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += w[i * n + j] * limit[j];
            next[i] = 0.5 * (limit[i] + acc);
            delta += std::abs(next[i] - limit[i]);
        }
        limit.swap(next);
        if (delta < 1e-14) break;
    }

    std::vector<std::string> labels;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) {
        if (supermatrix.clusters()[i] != cluster) continue;
        labels.push_back(supermatrix.labels()[i]);
        raw.push_back(std::max(0.0, limit[i]));
    }
    if (labels.empty()) throw InputError("supermatrix has no entries in cluster '" + std::string(cluster) + "'");
    return WeightVector::normalized(std::move(labels), std::move(raw));
}

TopsisResult topsis(const DecisionMatrix &d, const WeightVector &weights, TopsisNormalization normalization) {
    const auto m = d.alternative_count();
    const auto k = d.criterion_count();
    const auto w = criterion_weights_for(d, weights);

    TopsisResult result;
    std::vector<double> v(m * k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        if (normalization == TopsisNormalization::Vector) {
            double norm = 0.0;
            for (std::size_t a = 0; a < m; ++a) norm += d(a, c) * d(a, c);
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                result.warnings.push_back("criterion '" + d.criteria()[c].name + "' is all zero and carries no information");
                continue;
            }
            for (std::size_t a = 0; a < m; ++a) v[a * k + c] = w[c] * d(a, c) / norm;
        } else {
            double lo = d(0, c), hi = d(0, c);
            for (std::size_t a = 1; a < m; ++a) {
                lo = std::min(lo, d(a, c));
                hi = std::max(hi, d(a, c));
            }
            if (hi == lo) {
                result.warnings.push_back("criterion '" + d.criteria()[c].name + "' is constant and carries no information");
                continue;
            }
            for (std::size_t a = 0; a < m; ++a) v[a * k + c] = w[c] * (d(a, c) - lo) / (hi - lo);
        }
    }

    std::vector<double> best(k), worst(k);
    for (std::size_t c = 0; c < k; ++c) {
        double lo = v[c], hi = v[c];
        for (std::size_t a = 1; a < m; ++a) {
            lo = std::min(lo, v[a * k + c]);
            hi = std::max(hi, v[a * k + c]);
        }
        const bool benefit = d.criteria()[c].direction == Direction::Benefit;
        best[c] = benefit ? hi : lo;
        worst[c] = benefit ? lo : hi;
    }

    result.closeness.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        double to_best = 0.0, to_worst = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double x = v[a * k + c];
            to_best += (x - best[c]) * (x - best[c]);
            to_worst += (x - worst[c]) * (x - worst[c]);
        }
        to_best = std::sqrt(to_best);
        to_worst = std::sqrt(to_worst);
        const double total = to_best + to_worst;
        result.closeness[a] = total == 0.0 ? 0.5 : to_worst / total;
    }
    return result;
}

WeightVector topsis_ahp_weights(const DecisionMatrix &d, const PairwiseMatrix &criterion_pairwise,
                                TopsisNormalization normalization) {
    return closeness_weights(d, topsis(d, ahp_weights(criterion_pairwise), normalization).closeness);
}

WeightVector topsis_anp_weights(const DecisionMatrix &d, const Supermatrix &supermatrix,
                                TopsisNormalization normalization) {
    return closeness_weights(d, topsis(d, anp_weights(supermatrix), normalization).closeness);
}

} // namespace generank
