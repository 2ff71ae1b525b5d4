#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include "generank/errors.hpp"
#include "generank/pipeline.hpp"
#include "options.hpp"
#include "output.hpp"

#ifndef GENERANK_VERSION
#define GENERANK_VERSION "unknown"
#endif

namespace generank::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ifstream open_input(const std::string &path, const char *what) {
    if (path.empty()) throw InputError(std::string("missing ") + what + " file");
    std::ifstream in(path);
    if (!in) throw InputError(std::string("cannot open ") + what + " file '" + path + "'");
    return in;
}

void print_warnings(std::ostream &err, const std::vector<std::string> &warnings) {
    constexpr std::size_t shown = 20;
    for (std::size_t i = 0; i < warnings.size() && i < shown; ++i) err << "warning: " << warnings[i] << '\n';
    if (warnings.size() > shown) err << "warning: ... and " << warnings.size() - shown << " more\n";
}

/// The per-step cross-validations share their linkage intervals, so their warnings repeat.
std::vector<std::string> step_warnings(const StepWeights &sw) {
    std::vector<std::string> out;
    for (const auto &rep : sw.reports)
        for (const auto &w : rep.warnings)
            if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    return out;
}

/// Loaded inputs plus the provenance record written next to every report.
struct Run {
    std::string command;
    Settings settings;
    InteractionNetwork network;
    SeedSet seeds;
    EvidenceInputs evidence;
    GenePositionTable positions;
    std::vector<std::pair<std::string, std::string>> inputs; // role, path
    json stats = json::object();
    std::vector<std::string> outputs;
    std::ostream *err = nullptr;

    fs::path out(const std::string &name) {
        outputs.push_back(name);
        return settings.out / name;
    }

    /// Manifest lines embedded at the top of summary.txt; no timestamp, so
    /// identical runs give identical bytes.
    std::string header() const {
        std::string h = "# generank " GENERANK_VERSION " " + command + "\n";
        for (const auto &[role, path] : inputs) h += "# input " + role + " " + path + " sha256=" + sha256_file(path) + "\n";
        h += "# config " + settings.resolved.dump() + "\n";
        h += "# data " + stats.dump() + "\n";
        return h;
    }

    void write_manifest() {
        json m;
        m["tool"] = "generank";
        m["version"] = GENERANK_VERSION;
        m["command"] = command;
        m["timestamp"] = utc_timestamp();
        m["inputs"] = json::array();
        for (const auto &[role, path] : inputs)
            m["inputs"].push_back({{"role", role}, {"path", path}, {"sha256", sha256_file(path)}});
        m["config"] = settings.resolved;
        m["data"] = stats;
        m["outputs"] = outputs;
        write_atomically(settings.out / "manifest.json", [&](std::ostream &o) { o << m.dump(2) << '\n'; });
    }
};

void load_common(Run &run, bool need_positions) {
    auto &s = run.settings;
    auto &err = *run.err;

    auto net_in = open_input(s.network, "network");
    run.inputs.emplace_back("network", s.network);
    const auto loaded = load_network(read_edge_records(net_in));
    auto pruned = prune_isolated(loaded.network);
    run.network = std::move(pruned.network);
    if (run.network.node_count() == 0) throw InputError("network has no edges");
    run.stats["nodes"] = run.network.node_count();
    run.stats["edges"] = run.network.edge_count();
    run.stats["isolated_removed"] = pruned.removed;
    run.stats["self_loops_skipped"] = loaded.self_loops_skipped;
    run.stats["duplicates_merged"] = loaded.duplicates_merged;

    auto seeds_in = open_input(s.seeds, "seeds");
    run.inputs.emplace_back("seeds", s.seeds);
    run.seeds = map_seeds(run.network, read_id_list(seeds_in));
    run.stats["seeds"] = run.seeds.size();
    run.stats["unmapped_seeds"] = run.seeds.unmapped_ids.size();
    err << "network: " << run.network.node_count() << " nodes, " << run.network.edge_count() << " edges, "
        << pruned.removed << " isolated removed; seeds: " << run.seeds.size() << " mapped, "
        << run.seeds.unmapped_ids.size() << " unmapped\n";

    const bool any_evidence = !s.similarity.empty() || !s.disease_genes.empty() || !s.disease_name.empty();
    if (any_evidence) {
        if (s.similarity.empty() || s.disease_genes.empty() || s.disease_name.empty())
            throw InputError("evidence needs --similarity, --disease-genes and --disease together");
        auto sim_in = open_input(s.similarity, "similarity");
        run.inputs.emplace_back("similarity", s.similarity);
        run.evidence.similarity = read_similarity_network(sim_in);
        auto genes_in = open_input(s.disease_genes, "disease-genes");
        run.inputs.emplace_back("disease_genes", s.disease_genes);
        run.evidence.disease_genes = read_disease_genes(genes_in);
        run.evidence.disease = s.disease_name;
    }

    if (!s.supermatrix.empty()) {
        auto sm_in = open_input(s.supermatrix, "supermatrix");
        run.inputs.emplace_back("supermatrix", s.supermatrix);
        run.settings.pipeline.supermatrix = read_supermatrix(sm_in);
    }

    if (need_positions || !s.positions.empty()) {
        auto pos_in = open_input(s.positions, "positions");
        run.inputs.emplace_back("positions", s.positions);
        run.positions = read_positions(pos_in);
    }
}

void write_step_weights(Run &run, const StepWeights &sw) {
    write_atomically(run.out("decision_matrix.csv"), [&](std::ostream &o) { write_decision_matrix(o, sw.matrix); });
    write_atomically(run.out("step_weights.csv"), [&](std::ostream &o) {
        o << "step,weight\n";
        for (std::size_t i = 0; i < sw.weights.size(); ++i)
            o << sw.weights.labels()[i] << ',' << format_number(sw.weights[i]) << '\n';
    });
    write_atomically(run.out("criterion_weights.csv"), [&](std::ostream &o) {
        o << "criterion,weight\n";
        for (std::size_t i = 0; i < sw.criterion_weights.size(); ++i)
            o << sw.criterion_weights.labels()[i] << ',' << format_number(sw.criterion_weights[i]) << '\n';
    });
}

std::vector<NodeIndex> read_candidates(Run &run) {
    const auto &s = run.settings;
    if (s.all_nonseeds && !s.candidates.empty()) throw InputError("give either --candidates or --all-nonseeds, not both");
    if (s.all_nonseeds) return all_nonseeds(run.network, run.seeds);
    if (s.candidates.empty()) throw InputError("missing candidate source (--candidates or --all-nonseeds)");

    auto in = open_input(s.candidates, "candidates");
    run.inputs.emplace_back("candidates", s.candidates);
    std::vector<NodeIndex> out;
    std::vector<std::string> warnings;
    std::vector<bool> seen(run.network.node_count(), false);
    for (const auto &id : read_id_list(in)) {
        const auto u = run.network.find(id);
        if (!u) {
            warnings.push_back("candidate '" + id + "' is not in the network; skipped");
        } else if (run.seeds.contains(*u)) {
            warnings.push_back("candidate '" + id + "' is a seed; skipped");
        } else if (!seen[*u]) {
            seen[*u] = true;
            out.push_back(*u);
        }
    }
    print_warnings(*run.err, warnings);
    if (out.empty()) throw InputError("no candidate could be ranked");
    return out;
}

int cmd_prioritize(Run &run) {
    load_common(run, false);
    const auto candidates = read_candidates(run);
    const auto &cfg = run.settings.pipeline;

    std::optional<WeightVector> weights = cfg.step_weights;
    if (!weights && derives_weights(cfg.mode)) {
        if (!run.settings.positions.empty()) {
            const auto sw = derive_step_weights(run.network, run.seeds, run.positions, run.evidence, cfg);
            print_warnings(*run.err, step_warnings(sw));
            write_step_weights(run, sw);
            weights = sw.weights;
        } else {
            *run.err << "warning: no --weights and no --positions to derive them; using uniform step weights\n";
            weights = uniform_step_weights();
        }
    }
    if (weights) run.settings.resolved["applied_weights"] = weights->values();

    if (run.evidence.available()) {
        auto top = top_similar_diseases(*run.evidence.similarity, run.evidence.disease, cfg.evidence_k);
        std::vector<std::string> names;
        for (const auto &d : top.diseases) names.push_back(d.disease);
        const auto counted = evidence_score(names, *run.evidence.disease_genes, run.network, run.seeds);
        top.warnings.insert(top.warnings.end(), counted.warnings.begin(), counted.warnings.end());
        print_warnings(*run.err, top.warnings);
    }
    const auto ranked = prioritize(run.network, run.seeds, run.evidence, candidates, cfg, weights);
    write_atomically(run.out("ranking.csv"), [&](std::ostream &o) {
        o << "gene_id,np,rwr,sp,evidence,fused,rank\n";
        for (const auto &g : ranked) {
            o << g.id;
            for (const auto x : g.steps) o << ',' << format_number(x);
            o << ',' << format_number(g.fused) << ',' << g.rank << '\n';
        }
    });
    run.write_manifest();
    *run.err << "ranked " << ranked.size() << " candidates into " << (run.settings.out / "ranking.csv").string()
             << '\n';
    return success;
}

int cmd_evaluate(Run &run) {
    load_common(run, true);
    const auto result = evaluate(run.network, run.seeds, run.positions, run.evidence, run.settings.pipeline);
    const auto &r = result.report;
    print_warnings(*run.err, r.warnings);

    write_atomically(run.out("folds.csv"), [&](std::ostream &o) { write_folds_csv(o, r); });
    write_atomically(run.out("roc.csv"), [&](std::ostream &o) { write_roc_csv(o, r); });
    write_atomically(run.out("roc.svg"), [&](std::ostream &o) { write_roc_svg(o, r); });
    if (result.weights) write_step_weights(run, *result.weights);

    const auto header = run.header();
    write_atomically(run.out("summary.txt"), [&](std::ostream &o) {
        o << header;
        o << "AUC\t" << format_number(r.auc) << '\n';
        o << "MRR\t" << format_number(r.mrr) << '\n';
        o << "AR\t" << format_number(r.ar) << '\n';
        o << "top1\t" << format_number(r.top1) << '\n';
        o << "top5\t" << format_number(r.top5) << '\n';
        o << "folds\t" << r.folds.size() << '\n';
        if (result.weights) {
            const auto &w = result.weights->weights;
            for (std::size_t i = 0; i < w.size(); ++i)
                o << "weight\t" << w.labels()[i] << '\t' << format_number(w[i]) << '\n';
            if (run.settings.pipeline.split_weights)
                o << "weight_folds\t" << result.weight_targets.size() << '\n';
        }
    });
    run.write_manifest();
    *run.err << "AUC " << r.auc << ", MRR " << r.mrr << ", AR " << r.ar << ", top1 " << r.top1 << ", top5 "
             << r.top5 << " over " << r.folds.size() << " folds\n";
    return success;
}

int cmd_weights(Run &run) {
    const auto mode = run.settings.pipeline.mode;
    if (!derives_weights(mode))
        throw InputError("mode '" + std::string(to_string(mode)) + "' derives no weights (use topsis-anp or topsis-ahp)");
    load_common(run, true);
    const auto sw = derive_step_weights(run.network, run.seeds, run.positions, run.evidence, run.settings.pipeline);
    print_warnings(*run.err, step_warnings(sw));
    write_step_weights(run, sw);
    run.write_manifest();
    for (std::size_t i = 0; i < sw.weights.size(); ++i)
        *run.err << sw.weights.labels()[i] << ' ' << sw.weights[i] << '\n';
    return success;
}

/// Flag values are collected as strings and merged over the config file.
struct Flags {
    std::string config;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option *> options;
    std::map<std::string, bool> switches;
    std::map<std::string, CLI::Option *> switch_options;

    void value(CLI::App *app, const std::string &flag, const std::string &key, const std::string &help) {
        options[key] = app->add_option(flag, values[key], help);
    }
    void toggle(CLI::App *app, const std::string &flag, const std::string &key, const std::string &help) {
        switch_options[key] = app->add_flag(flag, switches[key], help);
    }

    json merged() const {
        json doc = config.empty() ? json::object() : read_config_file(config);
        for (const auto &[key, opt] : options)
            if (opt->count() > 0) doc[key] = values.at(key);
        for (const auto &[key, opt] : switch_options)
            if (opt->count() > 0) doc[key] = switches.at(key);
        return doc;
    }
};

void add_flags(CLI::App *app, Flags &f, bool evaluation) {
    app->add_option("--config", f.config, "JSON config file; flags override its keys");
    f.value(app, "--network", "network", "edge list: id_a<TAB>id_b<TAB>confidence");
    f.value(app, "--seeds", "seeds", "seed gene ids, one per line");
    f.value(app, "--similarity", "similarity", "disease similarity: disease_a<TAB>disease_b<TAB>similarity");
    f.value(app, "--disease-genes", "disease_genes", "disease<TAB>gene_id associations");
    f.value(app, "--disease", "disease", "query disease in the similarity network");
    f.value(app, "--positions", "positions",
            evaluation ? "gene_id<TAB>chromosome<TAB>start" : "gene positions; derives step weights when given");
    f.value(app, "--mode", "mode", "topsis-anp, topsis-ahp, wdrs, ndos or fixed");
    f.value(app, "--weights", "weights", "step weights NP,RWR,SP,EVIDENCE (sum 1)");
    f.value(app, "--alpha", "alpha", "restart probability (default 0.15)");
    f.value(app, "--tolerance", "tolerance", "L1 stopping tolerance (default 1e-6)");
    f.value(app, "--max-iterations", "max_iterations", "diffusion iteration cap (default 1000)");
    f.value(app, "--distance", "distance", "edge cost: inverse, one-minus or neg-log");
    f.value(app, "--evidence-k", "evidence_k", "number of similar diseases (default 10)");
    f.value(app, "--gamma", "gamma", "WDRS discount (default 0.95)");
    f.value(app, "--normalization", "normalization", "fusion normalization: minmax or none");
    f.value(app, "--topsis-normalization", "topsis_normalization", "vector or minmax");
    f.value(app, "--supermatrix", "supermatrix", "ANP supermatrix CSV over the criteria");
    f.value(app, "--saaty-step", "saaty_step", "pairwise step between adjacent criteria (default 2)");
    f.value(app, "--feedback-share", "feedback_share", "inter-criterion feedback in the default supermatrix");
    f.value(app, "--criteria", "criteria_order", "criteria in decreasing importance, comma separated");
    f.value(app, "--neighbors", "neighbors", "linkage-interval neighbors (default 99)");
    f.value(app, "--split-seed", "split_seed", "random seed for --split-weights");
    f.value(app, "--out", "out", "output directory (default .)");
    if (evaluation) {
        f.toggle(app, "--split-weights", "split_weights", "derive weights on a random half of the seeds");
    } else {
        f.value(app, "--candidates", "candidates", "candidate gene ids, one per line");
        f.toggle(app, "--all-nonseeds", "all_nonseeds", "rank every non-seed gene");
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Candidate gene prioritization over protein interaction networks", "generank"};
    app.set_version_flag("--version", GENERANK_VERSION);
    app.require_subcommand(1);
    Flags prioritize_flags, evaluate_flags, weights_flags;
    auto *prioritize_cmd = app.add_subcommand("prioritize", "rank candidate genes");
    auto *evaluate_cmd = app.add_subcommand("evaluate", "leave-one-out cross-validation of the pipeline");
    auto *weights_cmd = app.add_subcommand("weights", "derive step weights from per-step cross-validation");
    add_flags(prioritize_cmd, prioritize_flags, false);
    add_flags(evaluate_cmd, evaluate_flags, true);
    add_flags(weights_cmd, weights_flags, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : input_error;
    }

    try {
        Run run;
        run.err = &err;
        Flags *flags = nullptr;
        int (*command)(Run &) = nullptr;
        if (prioritize_cmd->parsed()) {
            run.command = "prioritize";
            flags = &prioritize_flags;
            command = cmd_prioritize;
        } else if (evaluate_cmd->parsed()) {
            run.command = "evaluate";
            flags = &evaluate_flags;
            command = cmd_evaluate;
        } else {
            run.command = "weights";
            flags = &weights_flags;
            command = cmd_weights;
        }
        run.settings = resolve_settings(flags->merged());
        return command(run);
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

int run(int argc, char **argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace generank::cli
