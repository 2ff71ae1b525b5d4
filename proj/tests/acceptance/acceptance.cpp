// Runs every gating acceptance criterion once and prints one PASS/FAIL line
// per criterion. Exit status is 0 only when all gating criteria pass.
//
// The data-dependent check runs only when GENERANK_REFERENCE_DATA names a
// directory holding network.tsv and seeds.txt (plus an optional nodes.txt of
// declared ids); otherwise it prints SKIP. It never affects the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generank/aggregation.hpp"
#include "generank/cli.hpp"
#include "generank/diffusion.hpp"
#include "generank/evaluation.hpp"
#include "generank/madm.hpp"
#include "generank/pipeline.hpp"
#include "generank/shortest_path.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace generank;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
    bool skipped = false;
};

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

struct Check {
    std::string name;
    double time_limit; // seconds; 0 for none
    bool gating;
    std::function<Verdict()> check;
};

// --- diffusion --------------------------------------------------------------

std::vector<InteractionNetwork> small_graphs() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> size(2, 20);
    std::vector<InteractionNetwork> out;
    for (int i = 0; i < 50; ++i) out.push_back(testing::random_connected_network(size(rng), 0.2, rng));
    return out;
}

Verdict rwr_oracle() {
    double worst = 0.0;
    const auto graphs = small_graphs();
    for (const auto &net : graphs) {
        const std::vector<NodeIndex> seeds{0};
        const auto y = diffuse(column_normalize(net), SeedSet::from_indices(seeds), {});
        const auto oracle = testing::rwr_direct(testing::dense_column_normalized(net), seeds, 0.15);
        for (NodeIndex u = 0; u < net.node_count(); ++u) worst = std::max(worst, std::abs(y[u] - oracle(u)));
    }
    return {worst <= 1e-5, "max |diff| " + fmt("%.2e", worst) + " over 50 graphs"};
}

Verdict mass_conservation() {
    double worst = 0.0;
    std::size_t iterates = 0;
    auto graphs = small_graphs();
    std::mt19937_64 rng(1002);
    for (int i = 0; i < 10; ++i) graphs.push_back(testing::random_connected_network(40, 0.08, rng));
    for (const auto &net : graphs) {
        std::vector<NodeIndex> seeds{0};
        if (net.node_count() > 3) seeds.push_back(3);
        diffuse(column_normalize(net), SeedSet::from_indices(seeds), {}, [&](int, std::span<const double> y) {
            worst = std::max(worst, std::abs(std::accumulate(y.begin(), y.end(), 0.0) - 1.0));
            ++iterates;
        });
    }
    return {worst <= 1e-9, "max |sum - 1| " + fmt("%.2e", worst) + " over " + std::to_string(iterates) + " iterates"};
}

Verdict np_rwr_regular() {
    double worst = 0.0;
    auto compare = [&](const InteractionNetwork &net) {
        const auto seeds = SeedSet::from_indices({0});
        const auto a = diffuse(column_normalize(net), seeds, {});
        const auto b = diffuse(symmetric_normalize(net), seeds, {});
        for (NodeIndex u = 0; u < net.node_count(); ++u) worst = std::max(worst, std::abs(a[u] - b[u]));
    };
    for (std::size_t n = 5; n <= 20; ++n) compare(testing::cycle_network(n));
    for (std::size_t n = 3; n <= 10; ++n) compare(testing::complete_network(n));
    return {worst <= 1e-9, "max |NP - RWR| " + fmt("%.2e", worst) + " on C5..C20, K3..K10"};
}

// --- shortest paths ---------------------------------------------------------

Verdict shortest_path_oracle() {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<std::size_t> size(2, 40);
    double worst = 0.0;
    bool reach_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const auto net = testing::random_network(size(rng), 0.12, rng);
        const auto all = testing::floyd_warshall(net, [](double c) { return edge_cost(c, DistanceTransform::Inverse); });
        for (NodeIndex s = 0; s < net.node_count(); ++s) {
            const auto d = dijkstra_distances(net, s, DistanceTransform::Inverse);
            for (NodeIndex v = 0; v < net.node_count(); ++v) {
                if (d[v].reachable != std::isfinite(all[s][v])) reach_ok = false;
                if (d[v].reachable) worst = std::max(worst, std::abs(d[v].cost - all[s][v]));
            }
        }
    }
    const auto hand = load_network(std::vector<EdgeRecord>{{"G", "S1", 0.5}, {"G", "X", 1.0}, {"X", "S2", 1.0}}).network;
    const auto seeds = SeedSet::from_indices({*hand.find("S1"), *hand.find("S2")});
    const double got = sp_score(hand, seeds)[*hand.find("G")];
    const double hand_err = std::abs(got - 1.25 / 1.5);
    return {reach_ok && worst <= 1e-9 && hand_err <= 1e-12,
            "max |Dijkstra - FW| " + fmt("%.2e", worst) + " over 100 graphs; hand example error " +
                fmt("%.1e", hand_err)};
}

// --- MADM -------------------------------------------------------------------

std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("c" + std::to_string(i));
    return out;
}

std::vector<double> random_weights(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto &x : w) total += (x = u(rng));
    for (auto &x : w) x /= total;
    return w;
}

PairwiseMatrix consistent(const std::vector<double> &w) {
    const auto n = w.size();
    std::vector<double> v(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i * n + j] = w[i] / w[j];
    return PairwiseMatrix(labels(n), v);
}

std::size_t argmax(const std::vector<double> &v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

Verdict madm_suite() {
    std::mt19937_64 rng(1004);
    double ahp_err = 0.0, cr_max = 0.0;
    for (std::size_t n = 3; n <= 8; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto w = random_weights(n, rng);
            const auto m = consistent(w);
            const auto got = ahp_weights(m);
            for (std::size_t i = 0; i < n; ++i) ahp_err = std::max(ahp_err, std::abs(got[i] - w[i]));
            cr_max = std::max(cr_max, consistency_ratio(m));
        }

    std::uniform_int_distribution<std::size_t> alts(2, 6), crits(1, 5);
    std::uniform_real_distribution<double> value(0.1, 10.0), scale(0.1, 50.0);
    std::bernoulli_distribution coin(0.5);
    std::size_t out_of_range = 0, dominant_misses = 0, argmax_moves = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto na = alts(rng), nc = crits(rng);
        std::vector<Criterion> criteria;
        std::vector<bool> benefit;
        for (std::size_t j = 0; j < nc; ++j) {
            benefit.push_back(coin(rng));
            criteria.push_back({"c" + std::to_string(j), benefit.back() ? Direction::Benefit : Direction::Cost});
        }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < na; ++i) names.push_back("a" + std::to_string(i));
        std::vector<double> values(na * nc);
        for (auto &x : values) x = value(rng);
        const WeightVector wv(labels(nc), random_weights(nc, rng));

        const auto c = topsis(DecisionMatrix(names, criteria, values), wv).closeness;
        for (const auto x : c) out_of_range += (x < 0.0 || x > 1.0);

        auto dominant = values;
        for (std::size_t j = 0; j < nc; ++j) dominant[j] = benefit[j] ? 20.0 : 0.01;
        dominant_misses += topsis(DecisionMatrix(names, criteria, dominant), wv).closeness[0] != 1.0;

        const auto k = std::uniform_int_distribution<std::size_t>(0, nc - 1)(rng);
        const double factor = scale(rng);
        auto scaled = values;
        for (std::size_t i = 0; i < na; ++i) scaled[i * nc + k] *= factor;
        argmax_moves += argmax(c) != argmax(topsis(DecisionMatrix(names, criteria, scaled), wv).closeness);
    }

    const auto w = ahp_weights(pairwise_from_ordering(default_criteria_order()));
    const bool ordered = w.at("AUC") > w.at("MRR") && w.at("MRR") > w.at("AR") && w.at("AR") > w.at("top1") &&
                         w.at("top1") > w.at("top5");

    const bool pass = ahp_err <= 1e-8 && cr_max < 1e-8 && out_of_range == 0 && dominant_misses == 0 &&
                      argmax_moves == 0 && ordered;
    std::ostringstream d;
    d << "AHP error " << fmt("%.1e", ahp_err) << ", CR max " << fmt("%.1e", cr_max) << ", closeness out of [0,1] "
      << out_of_range << ", dominant != 1 " << dominant_misses << ", argmax moved " << argmax_moves
      << ", default ordering " << (ordered ? "kept" : "broken");
    return {pass, d.str()};
}

Verdict anp_reduction() {
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    auto compare = [&](const PairwiseMatrix &m) {
        const auto ahp = ahp_weights(m);
        const auto anp = anp_weights(default_supermatrix(m, 0.0));
        for (std::size_t i = 0; i < m.size(); ++i) worst = std::max(worst, std::abs(anp[i] - ahp[i]));
    };
    for (std::size_t n = 3; n <= 8; ++n)
        for (int trial = 0; trial < 5; ++trial) compare(consistent(random_weights(n, rng)));
    compare(pairwise_from_ordering(default_criteria_order()));
    return {worst <= 1e-6, "max |ANP - AHP| " + fmt("%.2e", worst)};
}

// --- aggregation ------------------------------------------------------------

Verdict ndos_monte_carlo() {
    // Seed fixed before the first run; not tuned.
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t samples = 1000000;
    double worst_z = 0.0;
    std::size_t misses = 0;
    std::vector<double> x;
    for (int v = 0; v < 100; ++v) {
        const std::size_t n = 1 + static_cast<std::size_t>(v) % 5;
        std::vector<double> r(n);
        for (auto &e : r) e = u(rng);
        std::sort(r.begin(), r.end());
        const double q = order_statistics_q(r);
        x.resize(n);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            for (auto &e : x) e = u(rng);
            std::sort(x.begin(), x.end());
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = x[i] <= r[i];
            hits += ok;
        }
        const double mc = static_cast<double>(hits) / samples;
        const double se = std::sqrt(std::max(q * (1 - q), 1e-12) / samples);
        const double z = std::abs(q - mc) / se;
        worst_z = std::max(worst_z, z);
        misses += z > 3.0;
    }
    const double half = order_statistics_q(std::vector<double>{0.5, 0.5});
    return {misses == 0 && half == 0.25, "worst |Q - MC| " + fmt("%.2f", worst_z) + " SE over 100 vectors, " +
                                             std::to_string(misses) + " beyond 3 SE; Q(0.5,0.5) = " +
                                             fmt("%.17g", half)};
}

// --- evaluation -------------------------------------------------------------

EvidenceInputs evidence_listing(const std::vector<std::string> &genes) {
    EvidenceInputs e;
    e.similarity.emplace();
    e.similarity->add("Q", "D1", 0.9);
    e.disease_genes.emplace();
    for (const auto &g : genes) e.disease_genes->add("D1", g);
    e.disease = "Q";
    return e;
}

Verdict evaluation_metrics() {
    const double m = mrr(std::vector<double>{2, 4});

    double sweep_err = 0.0;
    for (int r = 1; r <= 100; ++r) {
        const auto curve = roc_and_auc(std::vector<double>{static_cast<double>(r)}, std::vector<std::size_t>{100});
        sweep_err = std::max(sweep_err, std::abs(curve.auc - (1.0 - (r - 1) / 99.0)));
    }

    // Full pipeline whose only active step lists every seed.
    const auto corpus = testing::planted_corpus({.module_size = 30, .background_size = 300, .seed = 1006});
    const auto seeds = map_seeds(corpus.network, corpus.module);
    PipelineConfig perfect;
    perfect.mode = MadmMode::Fixed;
    perfect.step_weights = WeightVector(step_labels(), {0, 0, 0, 1});
    const auto p = evaluate(corpus.network, seeds, corpus.positions, evidence_listing(corpus.module), perfect).report;

    // Random scores over 200 folds on a line of genes.
    NetworkBuilder b;
    GenePositionTable positions;
    for (std::size_t i = 0; i < 2000; ++i) {
        b.add_node(testing::node_name(i));
        positions.add(testing::node_name(i), {"1", 1000 * i});
    }
    for (std::size_t i = 0; i + 1 < 2000; ++i) b.add_edge(testing::node_name(i), testing::node_name(i + 1), 1.0);
    const auto line = std::move(b).build();
    std::vector<NodeIndex> seed_idx;
    for (NodeIndex u = 5; u < 2000; u += 10) seed_idx.push_back(u);
    const CandidateScorer random = [](const SeedSet &fold, std::span<const NodeIndex> candidates) {
        std::mt19937_64 rng(candidates.front() * 7919ULL + fold.size());
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> s(candidates.size());
        for (auto &x : s) x = u(rng);
        return s;
    };
    const auto r = loocv(random, SeedSet::from_indices(seed_idx), positions, line);

    const bool pass = m == 0.375 && sweep_err <= 1e-12 && p.auc == 1.0 && p.mrr == 1.0 && r.folds.size() == 200 &&
                      std::abs(r.auc - 0.5) <= 0.05;
    std::ostringstream d;
    d << "MRR[2,4] " << fmt("%.17g", m) << ", AUC sweep error " << fmt("%.1e", sweep_err) << ", perfect AUC "
      << fmt("%.17g", p.auc) << " MRR " << fmt("%.17g", p.mrr) << ", random AUC " << fmt("%.4f", r.auc) << " over "
      << r.folds.size() << " folds";
    return {pass, d.str()};
}

// --- end to end -------------------------------------------------------------

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism() {
    const fs::path fixture = fs::path(GENERANK_FIXTURE_DIR) / "synthetic";
    const auto base = fs::temp_directory_path() / "generank_acceptance_determinism";
    fs::remove_all(base);
    std::vector<fs::path> dirs{base / "a", base / "b"};
    for (const auto &dir : dirs) {
        std::ostringstream out, err;
        const int code = cli::run({"evaluate", "--network", (fixture / "network.tsv").string(), "--seeds",
                                   (fixture / "seeds.txt").string(), "--positions",
                                   (fixture / "positions.tsv").string(), "--similarity",
                                   (fixture / "similarity.tsv").string(), "--disease-genes",
                                   (fixture / "disease_genes.tsv").string(), "--disease", "Q", "--neighbors", "50",
                                   "--out", dir.string()},
                                  out, err);
        if (code != 0) return {false, "evaluate exited " + std::to_string(code) + ": " + err.str()};
    }
    bool same = true;
    for (const auto *name : {"folds.csv", "summary.txt"}) {
        const auto a = slurp(dirs[0] / name), b = slurp(dirs[1] / name);
        same = same && !a.empty() && a == b;
    }
    fs::remove_all(base);
    return {same, same ? "folds.csv and summary.txt byte-identical" : "outputs differ"};
}

Verdict planted_signal() {
    const auto corpus = testing::planted_corpus();
    const PipelineConfig cfg; // TOPSIS-ANP
    const auto planted =
        evaluate(corpus.network, map_seeds(corpus.network, corpus.module), corpus.positions, EvidenceInputs{}, cfg);
    double control_max = 0.0;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        const auto ids = testing::random_seed_ids(corpus.network, corpus.module.size(), 5000 + s);
        const auto control =
            evaluate(corpus.network, map_seeds(corpus.network, ids), corpus.positions, EvidenceInputs{}, cfg);
        control_max = std::max(control_max, control.report.auc);
    }
    return {planted.report.auc >= 0.9 && control_max <= 0.6,
            "planted AUC " + fmt("%.4f", planted.report.auc) + ", shuffled-seed controls max AUC " +
                fmt("%.4f", control_max)};
}

Verdict reference_data() {
    const char *root = std::getenv("GENERANK_REFERENCE_DATA");
    if (!root) return {true, "set GENERANK_REFERENCE_DATA to a directory with network.tsv and seeds.txt", true};
    const fs::path dir(root);
    std::ifstream net_in(dir / "network.tsv"), seed_in(dir / "seeds.txt");
    if (!net_in || !seed_in) return {false, "cannot open network.tsv or seeds.txt under " + dir.string()};
    NetworkBuilder b;
    if (std::ifstream nodes_in(dir / "nodes.txt"); nodes_in)
        for (const auto &id : read_id_list(nodes_in)) b.add_node(id);
    for (const auto &e : read_edge_records(net_in)) b.add_edge(e.a, e.b, e.weight);
    const auto full = std::move(b).build();
    const auto pruned = prune_isolated(full);
    const auto seeds = map_seeds(pruned.network, read_id_list(seed_in));
    const bool pass = full.node_count() == 22997 && pruned.network.node_count() == 12894 && pruned.removed == 10103 &&
                      seeds.size() == 1121;
    std::ostringstream d;
    d << full.node_count() << " -> " << pruned.network.node_count() << " nodes, " << pruned.removed << " removed, "
      << seeds.size() << " seeds mapped (expected 22997 -> 12894, 10103, 1121)";
    return {pass, d.str()};
}

} // namespace

int main() {
    const std::vector<Check> checks{
        {"rwr-direct-solve", 5.0, true, rwr_oracle},
        {"mass-conservation", 0.0, true, mass_conservation},
        {"np-rwr-regular-graphs", 0.0, true, np_rwr_regular},
        {"shortest-path-oracle", 0.0, true, shortest_path_oracle},
        {"madm-suite", 0.0, true, madm_suite},
        {"anp-reduces-to-ahp", 0.0, true, anp_reduction},
        {"ndos-monte-carlo", 0.0, true, ndos_monte_carlo},
        {"evaluation-metrics", 30.0, true, evaluation_metrics},
        {"evaluate-determinism", 0.0, true, determinism},
        {"planted-signal-recovery", 60.0, true, planted_signal},
        {"reference-data-counts", 0.0, false, reference_data},
    };

    int failures = 0;
    for (const auto &c : checks) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && seconds >= c.time_limit) {
            v.pass = false;
            v.detail += "; over the " + fmt("%.0f", c.time_limit) + " s limit";
        }
        const char *tag = v.skipped ? "SKIP" : v.pass ? "PASS" : "FAIL";
        std::printf("%s %-26s %s (%.2f s)%s\n", tag, c.name.c_str(), v.detail.c_str(), seconds,
                    c.gating ? "" : " [non-gating]");
        std::fflush(stdout);
        if (c.gating && !v.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
