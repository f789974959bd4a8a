#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relgraph/embedding.hpp"
#include "relgraph/graph.hpp"

namespace relgraph {

struct LinkExample {
    NodeId drug = 0;
    NodeId disease = 0;
    std::uint8_t label = 0;  // 1 positive, 0 negative
    std::uint32_t fold = 0;
};

using NodePair = std::pair<NodeId, NodeId>;

// All known drug-disease edges as (drug, disease) pairs, drug id ascending.
std::vector<NodePair> positive_pairs(const Graph& graph);

// `count` distinct uniform draws from the complement of the drug-disease
// relation: {drugs with at least one drug-disease or drug-protein edge} x
// {all diseases}, minus existing edges. Reproducible per seed. Throws when
// count exceeds the complement size.
std::vector<NodePair> sample_negatives(const Graph& graph, std::size_t count,
                                       std::uint64_t seed);

// Shuffles positives and negatives independently (seeded) and partitions
// each into k parts whose sizes differ by at most one, so every fold keeps
// the global class ratio within one example.
std::vector<LinkExample> make_folds(std::span<const NodePair> positives,
                                    std::span<const NodePair> negatives,
                                    std::uint32_t k_folds, std::uint64_t seed);

// Concatenated [input[drug] | input[disease]] as doubles, drug half first.
// Rejects ids whose kind does not match.
std::vector<double> featurize(const Graph& graph, const EmbeddingTable& table,
                              NodeId drug, NodeId disease);

// CSV dump: header drug_id,disease_id,label,fold + one row per example,
// external ids.
void write_dataset_csv(const std::string& path, const Graph& graph,
                       std::span<const LinkExample> examples);

struct NamedExample {
    std::string drug;
    std::string disease;
    std::uint8_t label = 0;
    std::uint32_t fold = 0;
};

std::vector<NamedExample> read_dataset_csv(const std::string& path);

std::uint32_t fold_count(std::span<const LinkExample> examples);

}  // namespace relgraph
