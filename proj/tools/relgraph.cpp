// relgraph: three-layer drug/protein/disease graph embedding and
// drug-disease link prediction. Subcommands cover the whole pipeline:
// gen-synthetic -> build-graph -> embed -> make-dataset -> evaluate ->
// predict/neighbors. Every artifact-producing run drops a JSON manifest
// with parameter and checksum snapshots next to its primary output.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relgraph/embedding.hpp"
#include "relgraph/graph_io.hpp"
#include "relgraph/link_dataset.hpp"
#include "relgraph/manifest.hpp"
#include "relgraph/metrics.hpp"
#include "relgraph/mlp.hpp"
#include "relgraph/pipeline.hpp"
#include "relgraph/synthetic.hpp"
#include "relgraph/trainer.hpp"

namespace {

using namespace relgraph;

std::string fmt_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw Error("missing file: " + path);
}

struct SeedOption {
    std::uint64_t value = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", value, "RNG seed (env RELGRAPH_SEED)")
            ->envname("RELGRAPH_SEED");
    }
};

// ---------------------------------------------------------------- gen-synthetic

struct GenSyntheticCmd {
    SyntheticConfig config;
    std::string output_dir;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "gen-synthetic", "Generate a planted-community benchmark graph");
        cmd->add_option("--drugs", config.drugs, "number of drugs");
        cmd->add_option("--diseases", config.diseases, "number of diseases");
        cmd->add_option("--proteins", config.proteins, "number of proteins");
        cmd->add_option("--communities", config.communities,
                        "number of planted communities (>= 2)");
        cmd->add_option("--noise", config.noise,
                        "cross-community rewiring rate in [0,1]");
        cmd->add_option("--subgroups", config.subgroups,
                        "subgroups per community");
        cmd->add_option("--seed", config.seed, "RNG seed (env RELGRAPH_SEED)")
            ->envname("RELGRAPH_SEED");
        cmd->add_option("--output", output_dir, "output directory")->required();
        cmd->callback([this] { run(); });
    }

    void run() const {
        const auto summary = generate_synthetic(config, output_dir);
        RunManifest manifest;
        manifest.command = "gen-synthetic";
        manifest.params = {
            {"drugs", std::to_string(config.drugs)},
            {"diseases", std::to_string(config.diseases)},
            {"proteins", std::to_string(config.proteins)},
            {"communities", std::to_string(config.communities)},
            {"noise", fmt_double(config.noise)},
            {"subgroups", std::to_string(config.subgroups)},
            {"seed", std::to_string(config.seed)},
        };
        manifest.outputs = {summary.nodes_path, summary.drug_protein_path,
                            summary.drug_disease_path,
                            summary.protein_protein_path,
                            summary.manifest_path};
        write_manifest(manifest, (std::filesystem::path(output_dir) /
                                  "run.manifest.json")
                                     .string());
        std::cout << "wrote benchmark to " << output_dir << " ("
                  << summary.edge_counts[0] << " drug-protein, "
                  << summary.edge_counts[1] << " drug-disease, "
                  << summary.edge_counts[2] << " protein-protein edges)\n";
    }
};

// ---------------------------------------------------------------- build-graph

struct BuildGraphCmd {
    std::vector<std::string> drug_protein, drug_disease, protein_protein;
    std::string nodes_file, output, stats_file;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "build-graph", "Load edge TSVs into a binary graph cache");
        cmd->add_option("--drug-protein", drug_protein,
                        "drug<TAB>protein edge TSV (repeatable)");
        cmd->add_option("--drug-disease", drug_disease,
                        "drug<TAB>disease edge TSV (repeatable)");
        cmd->add_option("--protein-protein", protein_protein,
                        "protein<TAB>protein edge TSV (repeatable)");
        cmd->add_option("--nodes", nodes_file,
                        "node TSV: id<TAB>kind[<TAB>display name]");
        cmd->add_option("--output", output, "graph cache path")->required();
        cmd->add_option("--stats", stats_file,
                        "stats report path (default: <output>.stats.txt)");
        cmd->callback([this] { run(); });
    }

    void run() {
        std::vector<EdgeFile> edge_files;
        for (const auto& path : drug_protein)
            edge_files.push_back({path, RelationKind::DrugProtein});
        for (const auto& path : drug_disease)
            edge_files.push_back({path, RelationKind::DrugDisease});
        for (const auto& path : protein_protein)
            edge_files.push_back({path, RelationKind::ProteinProtein});
        if (edge_files.empty() && nodes_file.empty())
            throw Error("no input files given");
        for (const auto& file : edge_files) require_file(file.path);
        std::optional<std::string> nodes;
        if (!nodes_file.empty()) {
            require_file(nodes_file);
            nodes = nodes_file;
        }
        const auto result = load_graph(edge_files, nodes);
        save_graph_cache(result.graph, output);
        if (stats_file.empty()) stats_file = output + ".stats.txt";
        {
            std::ofstream out(stats_file, std::ios::trunc);
            if (!out) throw Error("cannot write stats: " + stats_file);
            out << format_stats(result.stats);
        }
        std::cout << format_stats(result.stats);

        RunManifest manifest;
        manifest.command = "build-graph";
        for (const auto& file : edge_files) {
            manifest.params.emplace_back(to_string(file.relation), file.path);
            manifest.inputs.push_back(file.path);
        }
        if (nodes) {
            manifest.params.emplace_back("nodes", *nodes);
            manifest.inputs.push_back(*nodes);
        }
        manifest.outputs = {output, stats_file};
        write_manifest(manifest, output + ".manifest.json");
    }
};

// ---------------------------------------------------------------- embed

struct EmbedCmd {
    std::string graph_path, output, method_name = "nbne", corpus_dump;
    EmbedOptions options;
    bool binary = false;
    bool deterministic = false;
    std::uint32_t threads = 1;
    SeedOption seed;
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand("embed",
                                 "Learn node embeddings from a graph cache");
        cmd->add_option("--graph", graph_path, "graph cache")->required();
        cmd->add_option("--output", output, "embedding file")->required();
        cmd->add_option("--method", method_name, "nbne | deepwalk | node2vec");
        cmd->add_option("--dim", options.trainer.dim, "embedding dimension");
        cmd->add_option("--window", options.trainer.window,
                        "context window (pairs at distance <= window)");
        cmd->add_option("--permutations", options.sampler.permutations,
                        "neighborhood permutations per node (nbne)");
        cmd->add_option("--group-size", options.sampler.group_size,
                        "neighbors per group (nbne)");
        cmd->add_option("--walks", options.sampler.num_walks,
                        "walks per node (deepwalk/node2vec)");
        cmd->add_option("--walk-length", options.sampler.walk_length,
                        "max nodes per walk");
        cmd->add_option("--p", options.sampler.return_bias,
                        "node2vec return bias");
        cmd->add_option("--q", options.sampler.inout_bias,
                        "node2vec in-out bias");
        cmd->add_option("--epochs", options.trainer.epochs, "training epochs");
        cmd->add_option("--lr", options.trainer.learning_rate,
                        "initial learning rate");
        cmd->add_option("--neg-samples", options.trainer.negatives,
                        "noise samples per positive pair");
        cmd->add_option("--threads", threads, "worker threads (lock-free)");
        cmd->add_flag("--deterministic", deterministic,
                      "single-worker bitwise-reproducible run");
        cmd->add_flag("--binary", binary, "write binary instead of text");
        cmd->add_option("--dump-corpus", corpus_dump,
                        "write sampled contexts, one group per line");
        seed.attach(cmd);
        cmd->callback([this] { run(); });
    }

    void run() {
        SamplerMethod method;
        if (!parse_sampler_method(method_name, method))
            throw Error("unknown method: " + method_name);
        const EmbedOptions defaults = default_embed_options(method);
        options.sampler.method = method;
        if (!cmd->count("--window"))
            options.trainer.window = defaults.trainer.window;
        if (!cmd->count("--permutations"))
            options.sampler.permutations = defaults.sampler.permutations;
        if (!cmd->count("--group-size"))
            options.sampler.group_size = defaults.sampler.group_size;
        if (!cmd->count("--walks"))
            options.sampler.num_walks = defaults.sampler.num_walks;
        if (!cmd->count("--walk-length"))
            options.sampler.walk_length = defaults.sampler.walk_length;
        options.sampler.seed = seed.value;
        options.trainer.seed = seed.value;
        options.trainer.threads = threads;
        options.trainer.mode = (deterministic || threads <= 1)
                                   ? TrainMode::DeterministicSingleWorker
                                   : TrainMode::ParallelLockFree;
        options.sampler.validate();
        options.trainer.validate();

        require_file(graph_path);
        const Graph graph = load_graph_cache(graph_path);
        if (!corpus_dump.empty())
            dump_corpus(build_corpus(graph, options), graph, corpus_dump);
        const EmbeddingTable table = embed_graph(graph, options);
        if (binary)
            save_embeddings_binary(table, output);
        else
            save_embeddings_text(table, output);

        RunManifest manifest;
        manifest.command = "embed";
        manifest.params = {
            {"graph", graph_path},
            {"method", method_name},
            {"dim", std::to_string(options.trainer.dim)},
            {"window", std::to_string(options.trainer.window)},
            {"permutations", std::to_string(options.sampler.permutations)},
            {"group-size", std::to_string(options.sampler.group_size)},
            {"walks", std::to_string(options.sampler.num_walks)},
            {"walk-length", std::to_string(options.sampler.walk_length)},
            {"p", fmt_double(options.sampler.return_bias)},
            {"q", fmt_double(options.sampler.inout_bias)},
            {"epochs", std::to_string(options.trainer.epochs)},
            {"lr", fmt_double(options.trainer.learning_rate)},
            {"neg-samples", std::to_string(options.trainer.negatives)},
            {"seed", std::to_string(seed.value)},
            {"deterministic",
             options.trainer.mode == TrainMode::DeterministicSingleWorker
                 ? "true"
                 : "false"},
            {"threads", std::to_string(threads)},
            {"format", binary ? "binary" : "text"},
        };
        manifest.inputs = {graph_path};
        manifest.outputs = {output};
        if (!corpus_dump.empty()) manifest.outputs.push_back(corpus_dump);
        write_manifest(manifest, output + ".manifest.json");
        std::cout << "embedded " << table.rows() << " nodes at dim "
                  << table.dim << " -> " << output << "\n";
    }
};

// ---------------------------------------------------------------- make-dataset

struct MakeDatasetCmd {
    std::string graph_path, output;
    std::uint64_t negatives = 0;
    std::uint32_t folds = 5;
    SeedOption seed;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "make-dataset",
            "Assemble labeled drug-disease pairs with fold assignments");
        cmd->add_option("--graph", graph_path, "graph cache")->required();
        cmd->add_option("--negatives", negatives,
                        "number of complement-graph negatives")
            ->required();
        cmd->add_option("--folds", folds, "cross-validation folds");
        cmd->add_option("--output", output, "dataset CSV")->required();
        seed.attach(cmd);
        cmd->callback([this] { run(); });
    }

    void run() const {
        if (negatives == 0)
            throw Error("need at least one negative example (evaluation is "
                        "undefined without them)");
        require_file(graph_path);
        const Graph graph = load_graph_cache(graph_path);
        const auto positives = positive_pairs(graph);
        if (positives.empty())
            throw Error("graph has no drug-disease edges to learn from");
        const auto sampled = sample_negatives(graph, negatives, seed.value);
        const auto examples = make_folds(positives, sampled, folds, seed.value);
        write_dataset_csv(output, graph, examples);

        RunManifest manifest;
        manifest.command = "make-dataset";
        manifest.params = {
            {"graph", graph_path},
            {"negatives", std::to_string(negatives)},
            {"folds", std::to_string(folds)},
            {"seed", std::to_string(seed.value)},
        };
        manifest.inputs = {graph_path};
        manifest.outputs = {output};
        write_manifest(manifest, output + ".manifest.json");
        std::cout << "dataset: " << positives.size() << " positives + "
                  << sampled.size() << " negatives across " << folds
                  << " folds -> " << output << "\n";
    }
};

// ---------------------------------------------------------------- shared helpers

EmbeddingTable load_table_with_names(const std::string& embeddings_path,
                                     const std::string& graph_path) {
    require_file(embeddings_path);
    EmbeddingTable table = load_embeddings(embeddings_path);
    if (table.names.empty()) {
        if (graph_path.empty())
            throw Error("binary embeddings carry no ids; pass --graph");
        const Graph graph = load_graph_cache(graph_path);
        if (graph.num_nodes() != table.rows())
            throw Error("graph/embedding row count mismatch");
        for (NodeId v = 0; v < table.rows(); ++v)
            table.names.push_back(graph.name_of(v));
    }
    return table;
}

std::size_t row_of(const EmbeddingTable& table, const std::string& name) {
    for (std::size_t v = 0; v < table.names.size(); ++v)
        if (table.names[v] == name) return v;
    throw Error("unknown node identifier: " + name);
}

// ---------------------------------------------------------------- evaluate

struct EvaluateCmd {
    std::string embeddings_path, dataset_path, report_path, graph_path,
        model_out;
    MlpConfig mlp;
    SeedOption seed;
    bool no_roc = false;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "evaluate", "Cross-validate a link classifier and report AUROC");
        cmd->add_option("--embeddings", embeddings_path, "embedding file")
            ->required();
        cmd->add_option("--dataset", dataset_path, "dataset CSV")->required();
        cmd->add_option("--report", report_path, "CV report CSV")->required();
        cmd->add_option("--graph", graph_path,
                        "graph cache (ids for binary embeddings)");
        cmd->add_option("--hidden", mlp.hidden, "hidden layer width");
        cmd->add_option("--epochs", mlp.epochs, "classifier epochs");
        cmd->add_option("--batch", mlp.batch_size, "mini-batch size");
        cmd->add_option("--lr", mlp.learning_rate, "classifier learning rate");
        cmd->add_option("--model-out", model_out,
                        "train a final model on all folds and save it");
        cmd->add_flag("--no-roc", no_roc, "skip per-fold ROC dumps");
        seed.attach(cmd);
        cmd->callback([this] { run(); });
    }

    void run() const {
        const EmbeddingTable table =
            load_table_with_names(embeddings_path, graph_path);
        require_file(dataset_path);
        const auto named = read_dataset_csv(dataset_path);
        std::vector<LinkExample> examples;
        examples.reserve(named.size());
        for (const auto& row : named)
            examples.push_back({static_cast<NodeId>(row_of(table, row.drug)),
                                static_cast<NodeId>(row_of(table, row.disease)),
                                row.label, row.fold});

        MlpConfig config = mlp;
        config.seed = seed.value;
        std::vector<RocResult> rocs;
        const CvReport report =
            cross_validate(examples, table, config, no_roc ? nullptr : &rocs);
        write_cv_csv(report_path, report);

        RunManifest manifest;
        manifest.command = "evaluate";
        manifest.params = {
            {"embeddings", embeddings_path},
            {"dataset", dataset_path},
            {"hidden", std::to_string(mlp.hidden)},
            {"epochs", std::to_string(mlp.epochs)},
            {"batch", std::to_string(mlp.batch_size)},
            {"lr", fmt_double(mlp.learning_rate)},
            {"seed", std::to_string(seed.value)},
        };
        manifest.inputs = {embeddings_path, dataset_path};
        manifest.outputs = {report_path};

        if (!no_roc) {
            const auto stem = report_path.substr(0, report_path.rfind('.') ==
                                                            std::string::npos
                                                        ? report_path.size()
                                                        : report_path.rfind('.'));
            for (std::size_t f = 0; f < rocs.size(); ++f) {
                const std::string roc_path =
                    stem + "_fold" + std::to_string(f) + "_roc.csv";
                write_roc_csv(roc_path, rocs[f]);
                manifest.outputs.push_back(roc_path);
            }
        }
        if (!model_out.empty()) {
            auto [features, labels] = build_features(examples, table);
            save_mlp(train_mlp(features, labels, config), model_out);
            manifest.outputs.push_back(model_out);
        }
        write_manifest(manifest, report_path + ".manifest.json");

        for (std::size_t f = 0; f < report.fold_auroc.size(); ++f)
            std::cout << "fold " << f << ": auroc "
                      << report.fold_auroc[f] << "\n";
        std::cout << "mean auroc: " << report.mean << " (stddev "
                  << report.stddev << ")\n";
    }
};

// ---------------------------------------------------------------- predict

struct PredictCmd {
    std::string embeddings_path, model_path, graph_path, drug, disease;
    std::uint32_t top_k = 0;
    CLI::App* cmd = nullptr;

    void attach(CLI::App& app) {
        cmd = app.add_subcommand(
            "predict", "Score drug-disease links with a trained classifier");
        cmd->add_option("--embeddings", embeddings_path, "embedding file")
            ->required();
        cmd->add_option("--model", model_path, "classifier file")->required();
        cmd->add_option("--drug", drug, "drug identifier")->required();
        cmd->add_option("--disease", disease, "disease identifier");
        cmd->add_option("--top-k", top_k,
                        "rank the k most likely diseases for the drug");
        cmd->add_option("--graph", graph_path,
                        "graph cache (required with --top-k)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        if (disease.empty() == (top_k == 0))
            throw Error("pass exactly one of --disease or --top-k");
        const EmbeddingTable table =
            load_table_with_names(embeddings_path, graph_path);
        require_file(model_path);
        const MlpModel model = load_mlp(model_path);
        if (model.input_dim != 2 * table.dim)
            throw Error("dimension mismatch: classifier expects input " +
                        std::to_string(model.input_dim) + ", embeddings give " +
                        std::to_string(2 * table.dim));

        const auto drug_row = row_of(table, drug);
        auto score_pair = [&](std::size_t disease_row) {
            std::vector<double> feature(2 * std::size_t{table.dim});
            auto d = table.input_row(static_cast<NodeId>(drug_row));
            auto x = table.input_row(static_cast<NodeId>(disease_row));
            for (std::uint32_t i = 0; i < table.dim; ++i) {
                feature[i] = d[i];
                feature[table.dim + i] = x[i];
            }
            return predict_proba(model, feature);
        };

        if (!disease.empty()) {
            std::cout << drug << ',' << disease << ','
                      << score_pair(row_of(table, disease)) << "\n";
            return;
        }

        if (graph_path.empty())
            throw Error("--top-k needs --graph to enumerate diseases");
        const Graph graph = load_graph_cache(graph_path);
        const NodeId drug_id = graph.id_of(drug);
        if (graph.kind_of(drug_id) != NodeKind::Drug)
            throw Error("'" + drug + "' is not a drug");
        struct Ranked {
            std::string name;
            double probability;
            bool known;
        };
        std::vector<Ranked> ranked;
        for (NodeId v : graph.nodes_of_kind(NodeKind::Disease))
            ranked.push_back(
                {graph.name_of(v), score_pair(row_of(table, graph.name_of(v))),
                 graph.has_edge(drug_id, v, RelationKind::DrugDisease)});
        std::sort(ranked.begin(), ranked.end(),
                  [](const Ranked& a, const Ranked& b) {
                      if (a.probability != b.probability)
                          return a.probability > b.probability;
                      return a.name < b.name;
                  });
        ranked.resize(std::min<std::size_t>(top_k, ranked.size()));
        std::cout << "disease,probability,known_indication\n";
        for (const auto& row : ranked)
            std::cout << row.name << ',' << row.probability << ','
                      << (row.known ? "yes" : "no") << "\n";
    }
};

// ---------------------------------------------------------------- neighbors

struct NeighborsCmd {
    std::string embeddings_path, graph_path, node, metric_name = "cosine";
    std::uint32_t top_k = 10;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "neighbors", "Rank nearest nodes in embedding space");
        cmd->add_option("--embeddings", embeddings_path, "embedding file")
            ->required();
        cmd->add_option("--node", node, "query node identifier")->required();
        cmd->add_option("--top-k", top_k, "results to return");
        cmd->add_option("--metric", metric_name, "cosine | euclidean");
        cmd->add_option("--graph", graph_path,
                        "graph cache (ids for binary embeddings)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        Metric metric;
        if (!parse_metric(metric_name, metric))
            throw Error("unknown metric: " + metric_name);
        const EmbeddingTable table =
            load_table_with_names(embeddings_path, graph_path);
        const auto query = static_cast<NodeId>(row_of(table, node));
        std::cout << "node,score\n";
        for (const auto& hit : nearest(table, query, top_k, metric))
            std::cout << table.names[hit.node] << ',' << hit.score << "\n";
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-layer graph embeddings and drug-disease link "
                 "prediction"};
    app.require_subcommand(1);

    GenSyntheticCmd gen_synthetic;
    BuildGraphCmd build_graph;
    EmbedCmd embed;
    MakeDatasetCmd make_dataset;
    EvaluateCmd evaluate;
    PredictCmd predict;
    NeighborsCmd neighbors;

    gen_synthetic.attach(app);
    build_graph.attach(app);
    embed.attach(app);
    make_dataset.attach(app);
    evaluate.attach(app);
    predict.attach(app);
    neighbors.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "relgraph: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
