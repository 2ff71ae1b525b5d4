#include <doctest.h>

#include <map>
#include <numeric>

#include "generank/errors.hpp"
#include "generank/pipeline.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace generank;
using generank::testing::node_name;

namespace {

// Evidence inputs whose single similar disease lists exactly `genes`.
EvidenceInputs evidence_listing(const std::vector<std::string> &genes) {
    EvidenceInputs e;
    e.similarity.emplace();
    e.similarity->add("Q", "D1", 0.9);
    e.disease_genes.emplace();
    for (const auto &g : genes) e.disease_genes->add("D1", g);
    e.disease = "Q";
    return e;
}

PipelineConfig fixed(std::vector<double> w) {
    PipelineConfig cfg;
    cfg.mode = MadmMode::Fixed;
    cfg.step_weights = WeightVector(step_labels(), std::move(w));
    return cfg;
}

SeedSet seeds_of(const InteractionNetwork &net, const std::vector<std::string> &ids) { return map_seeds(net, ids); }

std::vector<double> minmax(const std::vector<double> &v) {
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    std::vector<double> out;
    for (const auto x : v) out.push_back(hi > lo ? (x - lo) / (hi - lo) : 0.0);
    return out;
}

} // namespace

TEST_CASE("mode names") {
    for (const auto m : {MadmMode::TopsisAnp, MadmMode::TopsisAhp, MadmMode::Wdrs, MadmMode::Ndos, MadmMode::Fixed})
        CHECK(parse_madm_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_madm_mode("vote"), InputError);
    CHECK(derives_weights(MadmMode::TopsisAnp));
    CHECK_FALSE(derives_weights(MadmMode::Wdrs));
    CHECK(criterion_direction("AR") == Direction::Cost);
    CHECK(criterion_direction("AUC") == Direction::Benefit);
}

TEST_CASE("config validation") {
    PipelineConfig cfg;
    cfg.mode = MadmMode::Fixed;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.criteria_order = {"AUC", "AUC"};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.criteria_order = {"AUC", "F1"};
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.evidence_k = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.step_weights = WeightVector({"a", "b", "c", "d"}, {0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("score_all: module outputs and degenerate cases") {
    std::mt19937_64 rng(81);
    const auto net = testing::random_connected_network(30, 0.1, rng);
    const auto seeds = SeedSet::from_indices({0, 4, 9});
    const PipelineConfig cfg;

    const auto none = score_all(net, seeds, EvidenceInputs{}, cfg);
    for (const auto x : none.steps[3].values) CHECK(x == 0.0);
    CHECK(none.steps[0].provenance == Provenance::Np);
    CHECK(none.steps[1].provenance == Provenance::Rwr);
    CHECK(none.steps[2].provenance == Provenance::Sp);
    CHECK(none.steps[3].provenance == Provenance::Evidence);
    CHECK(none.steps[0].values == diffuse(symmetric_normalize(net), seeds, cfg.np).values);
    CHECK(none.steps[1].values == diffuse(column_normalize(net), seeds, cfg.rwr).values);
    CHECK(none.steps[2].values == sp_score(net, seeds).values);

    const auto with = score_all(net, seeds, evidence_listing({"g1", "g2", "g4"}), cfg);
    CHECK(with.steps[3][1] == 1.0);
    CHECK(with.steps[3][2] == 1.0);
    CHECK(with.steps[3][4] == 0.0); // seed
    CHECK(with.steps[0].values == none.steps[0].values);

    const auto triangle = testing::complete_network(3);
    const auto t = score_all(triangle, SeedSet::from_indices({0}), EvidenceInputs{}, cfg);
    for (NodeIndex u = 0; u < 3; ++u) CHECK(std::abs(t.steps[0][u] - t.steps[1][u]) < 1e-9);

    CHECK_THROWS_AS(score_all(triangle, SeedSet::from_indices({0, 1, 2}), EvidenceInputs{}, cfg), InputError);
}

TEST_CASE("prioritize: degenerate inputs") {
    const auto net = testing::cycle_network(6);
    const auto seeds = SeedSet::from_indices({0});
    const std::vector<NodeIndex> one{3};
    const auto r = prioritize(net, seeds, EvidenceInputs{}, one, fixed({0.25, 0.25, 0.25, 0.25}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].id == "g3");
    CHECK(r[0].rank == 1);

    const std::vector<NodeIndex> with_seed{0, 2};
    CHECK_THROWS_AS(prioritize(net, seeds, EvidenceInputs{}, with_seed, fixed({1, 0, 0, 0})), InputError);
    PipelineConfig derive;
    CHECK_THROWS_AS(prioritize(net, seeds, EvidenceInputs{}, one, derive), InputError);
    CHECK(all_nonseeds(net, seeds) == std::vector<NodeIndex>{1, 2, 3, 4, 5});
}

TEST_CASE("prioritize: one-hot weights reproduce each single-step ranking") {
    std::mt19937_64 rng(82);
    const auto net = testing::random_connected_network(40, 0.08, rng);
    const auto seeds = SeedSet::from_indices({1, 2, 3, 11});
    const auto evidence = evidence_listing({"g5", "g6", "g7", "g20", "g21"});
    const auto candidates = all_nonseeds(net, seeds);
    const auto steps = score_all(net, seeds, evidence, PipelineConfig{}).steps;
    for (std::size_t k = 0; k < step_count; ++k) {
        std::vector<double> w(4, 0.0);
        w[k] = 1.0;
        const auto ranked = prioritize(net, seeds, evidence, candidates, fixed(w));
        std::vector<NodeIndex> expect = candidates;
        std::stable_sort(expect.begin(), expect.end(), [&](NodeIndex a, NodeIndex b) {
            const double sa = steps[k][a], sb = steps[k][b];
            return sa != sb ? sa > sb : net.id(a) < net.id(b);
        });
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            CHECK(ranked[i].id == net.id(expect[i]));
            CHECK(ranked[i].steps[k] == steps[k][expect[i]]);
        }
    }
}

TEST_CASE("prioritize: end-to-end recomputation on a 20-node graph") {
    std::mt19937_64 rng(83);
    const auto net = testing::random_connected_network(20, 0.1, rng, false);
    const std::vector<NodeIndex> seed_idx{0, 6, 13};
    const auto seeds = SeedSet::from_indices(seed_idx);
    const auto evidence = evidence_listing({"g2", "g3", "g9", "g6"});
    const auto candidates = all_nonseeds(net, seeds);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    const auto ranked = prioritize(net, seeds, evidence, candidates, fixed(w));

    const auto np = testing::rwr_direct(testing::dense_symmetric_normalized(net), seed_idx, 0.15);
    const auto rwr = testing::rwr_direct(testing::dense_column_normalized(net), seed_idx, 0.15);
    std::vector<std::vector<int>> hops;
    for (const auto s : seed_idx) hops.push_back(testing::bfs_hops(net, s));
    std::array<std::vector<double>, 4> raw;
    for (const auto g : candidates) {
        raw[0].push_back(np(g));
        raw[1].push_back(rwr(g));
        std::vector<double> lengths;
        for (const auto &h : hops) lengths.push_back(h[g]);
        const double mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / lengths.size();
        raw[2].push_back(testing::median_oracle(lengths) / mean);
        const auto id = net.id(g);
        raw[3].push_back(id == "g2" || id == "g3" || id == "g9" ? 1.0 : 0.0);
    }
    std::map<std::string, double> oracle;
    std::array<std::vector<double>, 4> norm;
    for (std::size_t k = 0; k < 4; ++k) norm[k] = minmax(raw[k]);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double f = 0.0;
        for (std::size_t k = 0; k < 4; ++k) f += w[k] * norm[k][i];
        oracle[net.id(candidates[i])] = f;
    }
    std::vector<double> sorted;
    for (const auto &[id, f] : oracle) sorted.push_back(f);
    std::sort(sorted.rbegin(), sorted.rend());
    REQUIRE(ranked.size() == candidates.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(std::abs(ranked[i].fused - oracle[ranked[i].id]) < 1e-4);
        CHECK(std::abs(ranked[i].fused - sorted[i]) < 1e-4);
        CHECK(ranked[i].rank == i + 1);
    }
}

TEST_CASE("prioritize: evidence-only weights order by evidence counts") {
    const auto net = testing::complete_network(6);
    const auto seeds = SeedSet::from_indices({0});
    EvidenceInputs e;
    e.similarity.emplace();
    e.similarity->add("Q", "D1", 0.9);
    e.similarity->add("Q", "D2", 0.8);
    e.disease_genes.emplace();
    e.disease_genes->add("D1", "g4");
    e.disease_genes->add("D2", "g4");
    e.disease_genes->add("D2", "g2");
    e.disease = "Q";
    const auto r = prioritize(net, seeds, e, all_nonseeds(net, seeds), fixed({0, 0, 0, 1}));
    CHECK(r[0].id == "g4");
    CHECK(r[1].id == "g2");
    CHECK(r[0].steps[3] == 2.0);
    CHECK(r[2].id == "g1"); // remaining ties fall back to id order
}

TEST_CASE("derive_step_weights: the perfect step wins") {
    const auto corpus = testing::planted_corpus({.module_size = 20, .background_size = 300, .seed = 7});
    const auto seed_ids = testing::random_seed_ids(corpus.network, 20, 99);
    const auto seeds = seeds_of(corpus.network, seed_ids);
    const auto evidence = evidence_listing(seed_ids);
    const auto sw = derive_step_weights(corpus.network, seeds, corpus.positions, evidence, PipelineConfig{});
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(sw.weights[k] >= 0.0);
        total += sw.weights[k];
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(sw.reports[3].auc == 1.0);
    CHECK(sw.weights.at("EVIDENCE") > sw.weights.at("NP"));
    CHECK(sw.weights.at("EVIDENCE") > sw.weights.at("RWR"));
    CHECK(sw.weights.at("EVIDENCE") > sw.weights.at("SP"));
    CHECK(sw.matrix.alternative_count() == 4);
    CHECK(sw.matrix.criterion_count() == 5);
    CHECK(sw.matrix(3, 0) == 1.0);

    PipelineConfig wdrs;
    wdrs.mode = MadmMode::Wdrs;
    CHECK_THROWS_AS(derive_step_weights(corpus.network, seeds, corpus.positions, evidence, wdrs), InputError);
}

TEST_CASE("identical step reports give uniform weights") {
    CvReport r;
    r.auc = 0.8;
    r.mrr = 0.3;
    r.ar = 9;
    r.top1 = 0.1;
    r.top5 = 0.4;
    const std::array<CvReport, step_count> same{r, r, r, r};
    const auto order = default_criteria_order();
    const auto d = step_decision_matrix(same, order);
    const auto w = topsis_anp_weights(d, default_supermatrix(pairwise_from_ordering(order)));
    for (std::size_t k = 0; k < 4; ++k) CHECK(w[k] == doctest::Approx(0.25));
}

TEST_CASE("evaluate: planted module is recovered and runs are deterministic") {
    const auto corpus = testing::planted_corpus({.module_size = 20, .background_size = 200, .seed = 11});
    const auto seeds = seeds_of(corpus.network, corpus.module);
    const PipelineConfig cfg;
    const auto a = evaluate(corpus.network, seeds, corpus.positions, EvidenceInputs{}, cfg);
    CHECK(a.report.folds.size() == 20);
    CHECK(a.report.auc >= 0.9);
    REQUIRE(a.weights.has_value());
    const auto b = evaluate(corpus.network, seeds, corpus.positions, EvidenceInputs{}, cfg);
    REQUIRE(a.report.folds.size() == b.report.folds.size());
    for (std::size_t i = 0; i < a.report.folds.size(); ++i) CHECK(a.report.folds[i].rank == b.report.folds[i].rank);
    CHECK(a.weights->weights.values() == b.weights->weights.values());

    for (const auto mode : {MadmMode::TopsisAhp, MadmMode::Wdrs, MadmMode::Ndos}) {
        PipelineConfig other;
        other.mode = mode;
        const auto r = evaluate(corpus.network, seeds, corpus.positions, EvidenceInputs{}, other);
        CHECK(r.report.folds.size() == 20);
        CHECK(r.report.auc > 0.8);
        CHECK(r.weights.has_value() == derives_weights(mode));
    }

    PipelineConfig split = cfg;
    split.split_weights = true;
    const auto s = evaluate(corpus.network, seeds, corpus.positions, EvidenceInputs{}, split);
    CHECK(s.weight_targets.size() == 10);
    CHECK(s.report.folds.size() == 10);
    for (const auto &f : s.report.folds)
        CHECK(std::find(s.weight_targets.begin(), s.weight_targets.end(), *corpus.network.find(f.target)) ==
              s.weight_targets.end());
}
