#include "generank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

#include "generank/errors.hpp"
#include "parallel.hpp"
#include "tsv.hpp"

namespace generank {

namespace {

using NodePositions = std::vector<const GenePosition *>;

NodePositions resolve_positions(const GenePositionTable &positions, const InteractionNetwork &network) {
    NodePositions resolved(network.node_count(), nullptr);
    for (NodeIndex u = 0; u < network.node_count(); ++u) resolved[u] = positions.find(network.id(u));
    return resolved;
}

LinkageInterval build_interval(NodeIndex target, const NodePositions &positions, const InteractionNetwork &network,
                               const SeedSet &seeds, std::size_t neighbors) {
    const auto *at = positions.at(target);
    if (at == nullptr) throw InputError("target '" + network.id(target) + "' has no chromosomal position");
    if (seeds.contains(target)) throw InputError("target '" + network.id(target) + "' is still in the seed set");

    struct Near {
        std::uint64_t distance;
        const std::string *id;
        NodeIndex node;
    };
    std::vector<Near> pool;
    for (NodeIndex u = 0; u < network.node_count(); ++u) {
        const auto *p = positions[u];
        if (u == target || p == nullptr || p->chromosome != at->chromosome || seeds.contains(u)) continue;
        const auto distance = p->start > at->start ? p->start - at->start : at->start - p->start;
        pool.push_back({distance, &network.id(u), u});
    }
    const auto take = std::min(neighbors, pool.size());
    const auto by_distance = [](const Near &a, const Near &b) {
        return a.distance != b.distance ? a.distance < b.distance : *a.id < *b.id;
    };
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(), by_distance);

    LinkageInterval interval;
    interval.target = target;
    interval.candidates.reserve(take + 1);
    interval.candidates.push_back(target);
    for (std::size_t i = 0; i < take; ++i) interval.candidates.push_back(pool[i].node);
    if (take < neighbors)
        interval.warnings.push_back("interval around '" + network.id(target) + "' has " + std::to_string(take) +
                                    " neighbors, fewer than " + std::to_string(neighbors));
    return interval;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void GenePositionTable::add(std::string_view gene, GenePosition position, std::size_t line) {
    if (gene.empty() || position.chromosome.empty()) throw InputError("position record with empty field" + detail::at_line(line));
    const auto [it, inserted] = positions_.emplace(std::string(gene), std::move(position));
    if (!inserted) throw InputError("gene '" + std::string(gene) + "' has more than one position" + detail::at_line(line));
}

const GenePosition *GenePositionTable::find(std::string_view gene) const {
    const auto it = positions_.find(gene);
    return it == positions_.end() ? nullptr : &it->second;
}

GenePositionTable read_positions(std::istream &in) {
    GenePositionTable table;
    detail::for_each_tsv_line(in, [&](std::size_t line, const std::vector<std::string_view> &f) {
        if (f.size() != 3) throw InputError("malformed position record" + detail::at_line(line));
        table.add(f[0], {std::string(f[1]), detail::parse_uint(f[2], line, "start coordinate")}, line);
    });
    return table;
}

LinkageInterval linkage_interval(NodeIndex target, const GenePositionTable &positions,
                                 const InteractionNetwork &network, const SeedSet &seeds, std::size_t neighbors) {
    if (target >= network.node_count()) throw InputError("target index outside the network");
    return build_interval(target, resolve_positions(positions, network), network, seeds, neighbors);
}

double mrr(std::span<const double> ranks) {
    if (ranks.empty()) throw InputError("MRR of no folds");
    double total = 0.0;
    for (const auto r : ranks) total += 1.0 / r;
    return total / static_cast<double>(ranks.size());
}

double average_rank(std::span<const double> ranks) {
    if (ranks.empty()) throw InputError("average rank of no folds");
    return std::accumulate(ranks.begin(), ranks.end(), 0.0) / static_cast<double>(ranks.size());
}

double top_fraction(std::span<const double> ranks, std::span<const std::size_t> sizes, double pct) {
    if (ranks.size() != sizes.size()) throw InputError("ranks and interval sizes differ in length");
    if (ranks.empty()) throw InputError("top fraction of no folds");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        // The epsilon keeps exact products such as 5 * 100 / 100 from rounding up.
        const double threshold = std::ceil(pct * static_cast<double>(sizes[i]) / 100.0 - 1e-9);
        if (ranks[i] <= threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

RocCurve roc_and_auc(std::span<const double> ranks, std::span<const std::size_t> sizes) {
    if (ranks.empty()) throw InputError("ROC of no folds");
    if (ranks.size() != sizes.size()) throw InputError("ranks and interval sizes differ in length");
    for (const auto s : sizes)
        if (s < 2) throw InputError("a fold of size 1 has undefined specificity");

    const auto max_size = *std::max_element(sizes.begin(), sizes.end());
    const auto folds = static_cast<double>(ranks.size());
    RocCurve curve;
    curve.points.reserve(max_size + 1);
    for (std::size_t k = 0; k <= max_size; ++k) {
        std::size_t hits = 0;
        double fpr = 0.0;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            const bool hit = ranks[i] <= static_cast<double>(k);
            hits += hit ? 1 : 0;
            fpr += (static_cast<double>(std::min(k, sizes[i])) - (hit ? 1.0 : 0.0)) /
                   static_cast<double>(sizes[i] - 1);
        }
        curve.points.push_back({k, fpr / folds, static_cast<double>(hits) / folds});
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto &a = curve.points[i - 1];
        const auto &b = curve.points[i];
        curve.auc += (b.false_positive_rate - a.false_positive_rate) * 0.5 *
                     (a.true_positive_rate + b.true_positive_rate);
    }
    return curve;
}

double rank_of(std::span<const double> scores, std::size_t target_position) {
    const double t = scores[target_position];
    std::size_t greater = 0, tied = 0;
    for (const auto s : scores) {
        if (s > t)
            ++greater;
        else if (s == t)
            ++tied;
    }
    return static_cast<double>(greater) + 0.5 * static_cast<double>(tied + 1);
}

CvReport summarize(std::vector<FoldRank> folds) {
    CvReport report;
    report.folds = std::move(folds);
    std::vector<double> ranks;
    std::vector<std::size_t> sizes;
    for (const auto &f : report.folds) {
        ranks.push_back(f.rank);
        sizes.push_back(f.interval_size);
    }
    const auto curve = roc_and_auc(ranks, sizes);
    report.roc = curve.points;
    report.auc = curve.auc;
    report.mrr = mrr(ranks);
    report.ar = average_rank(ranks);
    report.top1 = top_fraction(ranks, sizes, 1.0);
    report.top5 = top_fraction(ranks, sizes, 5.0);
    return report;
}

std::vector<CvReport> loocv(const MultiCandidateScorer &scorer, const SeedSet &seeds,
                            const GenePositionTable &positions, const InteractionNetwork &network,
                            const LoocvOptions &options) {
    if (seeds.size() < 2) throw InputError("cross-validation needs at least two seeds");
    const auto targets = options.targets.empty() ? seeds.indices : options.targets;
    for (const auto t : targets)
        if (!seeds.contains(t)) throw InputError("held-out target '" + network.id(t) + "' is not a seed");
    const auto resolved = resolve_positions(positions, network);

    struct Outcome {
        std::vector<double> ranks; // one per ranking; empty when skipped
        std::size_t size = 0;
        std::vector<std::string> warnings;
    };
    std::vector<Outcome> outcomes(targets.size());

    detail::parallel_for(targets.size(), [&](std::size_t i) {
        const auto target = targets[i];
        auto &out = outcomes[i];
        if (resolved[target] == nullptr) {
            out.warnings.push_back("skipped target '" + network.id(target) + "': no chromosomal position");
            return;
        }
        const auto fold_seeds = seeds.without(target);
        auto interval = build_interval(target, resolved, network, fold_seeds, options.neighbors);
        out.warnings = std::move(interval.warnings);
        if (interval.candidates.size() < 2) {
            out.warnings.push_back("skipped target '" + network.id(target) + "': no genes share its interval");
            return;
        }
        std::vector<std::vector<double>> scores;
        try {
            scores = scorer(fold_seeds, interval.candidates);
        } catch (const std::exception &e) {
            throw FoldError("fold with target '" + network.id(target) + "' failed: " + e.what());
        }
        if (scores.empty()) throw FoldError("fold with target '" + network.id(target) + "' produced no rankings");
        for (const auto &column : scores) {
            if (column.size() != interval.candidates.size())
                throw FoldError("fold with target '" + network.id(target) + "' returned the wrong number of scores");
            for (const auto s : column)
                if (!std::isfinite(s))
                    throw FoldError("fold with target '" + network.id(target) + "' returned a non-finite score");
            out.ranks.push_back(rank_of(column, 0));
        }
        out.size = interval.candidates.size();
    });

    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return network.id(targets[a]) < network.id(targets[b]); });

    std::size_t rankings = 0;
    for (const auto &o : outcomes) {
        if (o.ranks.empty()) continue;
        if (rankings != 0 && o.ranks.size() != rankings)
            throw FoldError("scorer returned a varying number of rankings across folds");
        rankings = o.ranks.size();
    }
    if (rankings == 0) throw InputError("no fold could be evaluated (check positions and interval sizes)");

    std::vector<std::vector<FoldRank>> folds(rankings);
    std::vector<std::string> warnings;
    for (const auto i : order) {
        const auto &o = outcomes[i];
        warnings.insert(warnings.end(), o.warnings.begin(), o.warnings.end());
        if (o.ranks.empty()) continue;
        for (std::size_t r = 0; r < rankings; ++r) folds[r].push_back({network.id(targets[i]), o.ranks[r], o.size});
    }
    std::vector<CvReport> reports;
    for (auto &f : folds) {
        reports.push_back(summarize(std::move(f)));
        reports.back().warnings = warnings;
    }
    return reports;
}

CvReport loocv(const CandidateScorer &scorer, const SeedSet &seeds, const GenePositionTable &positions,
               const InteractionNetwork &network, const LoocvOptions &options) {
    const MultiCandidateScorer multi = [&](const SeedSet &s, std::span<const NodeIndex> c) {
        return std::vector<std::vector<double>>{scorer(s, c)};
    };
    return std::move(loocv(multi, seeds, positions, network, options).front());
}

void write_folds_csv(std::ostream &out, const CvReport &report) {
    out << "target_id,rank,interval_size\n";
    for (const auto &f : report.folds) out << f.target << ',' << format_number(f.rank) << ',' << f.interval_size << '\n';
}

void write_roc_csv(std::ostream &out, const CvReport &report) {
    out << "threshold_k,one_minus_specificity,sensitivity\n";
    for (const auto &p : report.roc)
        out << p.threshold << ',' << format_number(p.false_positive_rate) << ',' << format_number(p.true_positive_rate)
            << '\n';
}

} // namespace generank
