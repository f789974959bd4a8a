#include "relgraph/link_dataset.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "relgraph/rng.hpp"

namespace relgraph {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return (std::uint64_t{a} << 32) | b;
}

}  // namespace

std::vector<NodePair> positive_pairs(const Graph& graph) {
    std::vector<NodePair> pairs;
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        if (graph.kind_of(v) != NodeKind::Drug) continue;
        for (NodeId disease : graph.neighbors(v, RelationKind::DrugDisease))
            pairs.emplace_back(v, disease);
    }
    return pairs;
}

std::vector<NodePair> sample_negatives(const Graph& graph, std::size_t count,
                                       std::uint64_t seed) {
    std::vector<NodeId> drugs;
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        if (graph.kind_of(v) != NodeKind::Drug) continue;
        if (!graph.neighbors(v, RelationKind::DrugDisease).empty() ||
            !graph.neighbors(v, RelationKind::DrugProtein).empty())
            drugs.push_back(v);
    }
    const auto diseases = graph.nodes_of_kind(NodeKind::Disease);

    std::uint64_t positives_in_universe = 0;
    for (NodeId drug : drugs)
        positives_in_universe +=
            graph.neighbors(drug, RelationKind::DrugDisease).size();
    const std::uint64_t universe =
        static_cast<std::uint64_t>(drugs.size()) * diseases.size();
    if (universe < positives_in_universe + count)
        throw Error("cannot sample " + std::to_string(count) +
                    " negatives: complement has only " +
                    std::to_string(universe - positives_in_universe) +
                    " pairs");

    Rng rng(substream(seed, "negatives"));
    std::vector<NodePair> sampled;
    sampled.reserve(count);

    const std::uint64_t complement = universe - positives_in_universe;
    if (count * 2 > complement) {
        // dense request: enumerate the whole complement and shuffle
        std::vector<NodePair> all;
        all.reserve(complement);
        for (NodeId drug : drugs)
            for (NodeId disease : diseases)
                if (!graph.has_edge(drug, disease, RelationKind::DrugDisease))
                    all.emplace_back(drug, disease);
        rng.shuffle(all);
        all.resize(count);
        return all;
    }

    std::unordered_set<std::uint64_t> taken;
    taken.reserve(count * 2);
    while (sampled.size() < count) {
        const NodeId drug = drugs[rng.bounded(drugs.size())];
        const NodeId disease = diseases[rng.bounded(diseases.size())];
        if (graph.has_edge(drug, disease, RelationKind::DrugDisease)) continue;
        if (!taken.insert(pair_key(drug, disease)).second) continue;
        sampled.emplace_back(drug, disease);
    }
    return sampled;
}

namespace {

// partition sizes differ by at most one; earlier parts take the remainder
void assign_folds(std::vector<NodePair>& pairs, std::uint8_t label,
                  std::uint32_t k_folds, Rng& rng,
                  std::vector<LinkExample>& out) {
    rng.shuffle(pairs);
    const std::size_t base = pairs.size() / k_folds;
    const std::size_t remainder = pairs.size() % k_folds;
    std::size_t next = 0;
    for (std::uint32_t fold = 0; fold < k_folds; ++fold) {
        const std::size_t take = base + (fold < remainder ? 1 : 0);
        for (std::size_t i = 0; i < take; ++i, ++next)
            out.push_back({pairs[next].first, pairs[next].second, label, fold});
    }
}

}  // namespace

std::vector<LinkExample> make_folds(std::span<const NodePair> positives,
                                    std::span<const NodePair> negatives,
                                    std::uint32_t k_folds, std::uint64_t seed) {
    if (k_folds < 2) throw Error("need at least 2 folds");
    if (positives.size() < k_folds || negatives.size() < k_folds)
        throw Error("too few examples: need at least one positive and one "
                    "negative per fold");
    std::vector<LinkExample> out;
    out.reserve(positives.size() + negatives.size());
    std::vector<NodePair> pos(positives.begin(), positives.end());
    std::vector<NodePair> neg(negatives.begin(), negatives.end());
    Rng pos_rng(substream(seed, "folds-pos"));
    Rng neg_rng(substream(seed, "folds-neg"));
    assign_folds(pos, 1, k_folds, pos_rng, out);
    assign_folds(neg, 0, k_folds, neg_rng, out);
    return out;
}

std::vector<double> featurize(const Graph& graph, const EmbeddingTable& table,
                              NodeId drug, NodeId disease) {
    if (graph.kind_of(drug) != NodeKind::Drug)
        throw Error("featurize: '" + graph.name_of(drug) + "' is a " +
                    to_string(graph.kind_of(drug)) + ", not a drug");
    if (graph.kind_of(disease) != NodeKind::Disease)
        throw Error("featurize: '" + graph.name_of(disease) + "' is a " +
                    to_string(graph.kind_of(disease)) + ", not a disease");
    if (drug >= table.rows() || disease >= table.rows())
        throw Error("featurize: node id outside embedding table");
    std::vector<double> feature(2 * std::size_t{table.dim});
    auto d_row = table.input_row(drug);
    auto x_row = table.input_row(disease);
    for (std::uint32_t i = 0; i < table.dim; ++i) {
        feature[i] = d_row[i];
        feature[table.dim + i] = x_row[i];
    }
    return feature;
}

void write_dataset_csv(const std::string& path, const Graph& graph,
                       std::span<const LinkExample> examples) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write dataset: " + path);
    out << "drug_id,disease_id,label,fold\n";
    for (const auto& example : examples)
        out << graph.name_of(example.drug) << ','
            << graph.name_of(example.disease) << ','
            << static_cast<int>(example.label) << ',' << example.fold << '\n';
    if (!out) throw Error("write failed: " + path);
}

std::vector<NamedExample> read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset: " + path);
    std::vector<NamedExample> examples;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "drug_id,disease_id,label,fold") continue;
        NamedExample ex;
        std::size_t start = 0;
        std::vector<std::string> fields;
        for (;;) {
            const auto comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 4 || fields[0].empty() || fields[1].empty())
            throw Error(path + ":" + std::to_string(line_no) +
                        ": malformed dataset row");
        ex.drug = fields[0];
        ex.disease = fields[1];
        try {
            const int label = std::stoi(fields[2]);
            if (label != 0 && label != 1) throw std::invalid_argument("");
            ex.label = static_cast<std::uint8_t>(label);
            ex.fold = static_cast<std::uint32_t>(std::stoul(fields[3]));
        } catch (const std::exception&) {
            throw Error(path + ":" + std::to_string(line_no) +
                        ": malformed dataset row");
        }
        examples.push_back(std::move(ex));
    }
    if (examples.empty()) throw Error("empty dataset: " + path);
    return examples;
}

std::uint32_t fold_count(std::span<const LinkExample> examples) {
    std::uint32_t max_fold = 0;
    for (const auto& example : examples)
        max_fold = std::max(max_fold, example.fold);
    return examples.empty() ? 0 : max_fold + 1;
}

}  // namespace relgraph
