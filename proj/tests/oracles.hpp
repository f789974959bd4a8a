// Test-side reference implementations, deliberately independent of the
// library code paths they cross-check: naive softmax without max
// subtraction, direct double-sum likelihoods, pair-counting AUROC and
// central finite differences.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "relgraph/embedding.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/rng.hpp"
#include "relgraph/types.hpp"

namespace oracles {

using relgraph::ContextGroup;
using relgraph::EmbeddingTable;
using relgraph::NodeId;

inline double naive_dot(const EmbeddingTable& t, NodeId out_row, NodeId in_row) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < t.dim; ++i)
        sum += static_cast<double>(t.output[out_row * std::size_t{t.dim} + i]) *
               static_cast<double>(t.input[in_row * std::size_t{t.dim} + i]);
    return sum;
}

// direct normalization, no max-subtraction
inline double naive_softmax(const EmbeddingTable& t, NodeId target,
                            NodeId center) {
    double denom = 0.0;
    for (std::size_t v = 0; v < t.rows(); ++v)
        denom += std::exp(naive_dot(t, static_cast<NodeId>(v), center));
    return std::exp(naive_dot(t, target, center)) / denom;
}

// double-sum form of the group objective
inline double naive_group_ll(const EmbeddingTable& t, const ContextGroup& g) {
    double sum = 0.0;
    for (NodeId center : g)
        for (NodeId target : g)
            if (target != center)
                sum += std::log(naive_softmax(t, target, center));
    return sum / static_cast<double>(g.size());
}

inline double naive_corpus_ll(const EmbeddingTable& t,
                              std::span<const ContextGroup> corpus) {
    double sum = 0.0;
    for (const auto& g : corpus) sum += naive_group_ll(t, g);
    return sum / static_cast<double>(corpus.size());
}

// probability a random positive outranks a random negative, ties half credit
inline double pair_count_auroc(std::span<const double> scores,
                               std::span<const std::uint8_t> labels) {
    double credit = 0.0;
    std::uint64_t pairs = 0;
    for (std::size_t p = 0; p < scores.size(); ++p) {
        if (!labels[p]) continue;
        for (std::size_t n = 0; n < scores.size(); ++n) {
            if (labels[n]) continue;
            ++pairs;
            if (scores[p] > scores[n]) credit += 1.0;
            else if (scores[p] == scores[n]) credit += 0.5;
        }
    }
    return credit / static_cast<double>(pairs);
}

// negative-sampling objective on plain double vectors
inline double sgns_loss(std::span<const double> center,
                        std::span<const std::vector<double>> outputs) {
    auto log_sigmoid = [](double x) {
        // log(1/(1+e^-x)) = -log(1+e^-x)
        if (x > 0) return -std::log1p(std::exp(-x));
        return x - std::log1p(std::exp(x));
    };
    auto dot = [&](std::span<const double> row) {
        double sum = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) sum += row[i] * center[i];
        return sum;
    };
    double loss = log_sigmoid(dot(outputs[0]));  // positive target first
    for (std::size_t n = 1; n < outputs.size(); ++n)
        loss += log_sigmoid(-dot(outputs[n]));
    return loss;
}

// random table with entries uniform in [-scale, scale] and row names r0..rN
inline EmbeddingTable random_table(std::size_t rows, std::uint32_t dim,
                                   std::uint64_t seed, double scale = 1.0) {
    EmbeddingTable t;
    t.dim = dim;
    t.input.resize(rows * dim);
    t.output.resize(rows * dim);
    relgraph::Rng rng(seed);
    for (auto& x : t.input) x = static_cast<float>(rng.uniform(-scale, scale));
    for (auto& x : t.output) x = static_cast<float>(rng.uniform(-scale, scale));
    t.names.reserve(rows);
    for (std::size_t v = 0; v < rows; ++v)
        t.names.push_back("r" + std::to_string(v));
    return t;
}

// random multi-relation graph for property tests
inline relgraph::Graph random_graph(std::uint32_t drugs, std::uint32_t proteins,
                                    std::uint32_t diseases,
                                    std::uint32_t edges_per_relation,
                                    std::uint64_t seed) {
    relgraph::GraphBuilder builder;
    auto name = [](char prefix, std::uint32_t i) {
        return std::string(1, prefix) + std::to_string(i);
    };
    for (std::uint32_t i = 0; i < drugs; ++i)
        builder.add_node(name('d', i), relgraph::NodeKind::Drug);
    for (std::uint32_t i = 0; i < proteins; ++i)
        builder.add_node(name('p', i), relgraph::NodeKind::Protein);
    for (std::uint32_t i = 0; i < diseases; ++i)
        builder.add_node(name('x', i), relgraph::NodeKind::Disease);
    relgraph::Rng rng(seed);
    for (std::uint32_t e = 0; e < edges_per_relation; ++e) {
        builder.add_edge(name('d', rng.bounded(drugs)),
                         name('p', rng.bounded(proteins)),
                         relgraph::RelationKind::DrugProtein);
        builder.add_edge(name('d', rng.bounded(drugs)),
                         name('x', rng.bounded(diseases)),
                         relgraph::RelationKind::DrugDisease);
        const auto a = rng.bounded(proteins);
        auto b = rng.bounded(proteins);
        if (a != b)
            builder.add_edge(name('p', a), name('p', b),
                             relgraph::RelationKind::ProteinProtein);
    }
    return builder.build();
}

}  // namespace oracles
