#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relgraph/types.hpp"

namespace relgraph {

// Two dense row-major matrices: `input` rows are the representations used
// downstream, `output` rows are the prediction vectors. Entries are 32-bit
// floats; all evaluation arithmetic widens to double.
struct EmbeddingTable {
    std::uint32_t dim = 0;
    std::vector<std::string> names;  // external ids, one per row; may be empty
    std::vector<float> input;
    std::vector<float> output;

    std::size_t rows() const { return dim == 0 ? 0 : input.size() / dim; }

    std::span<float> input_row(NodeId node) {
        return {input.data() + std::size_t{node} * dim, dim};
    }
    std::span<const float> input_row(NodeId node) const {
        return {input.data() + std::size_t{node} * dim, dim};
    }
    std::span<float> output_row(NodeId node) {
        return {output.data() + std::size_t{node} * dim, dim};
    }
    std::span<const float> output_row(NodeId node) const {
        return {output.data() + std::size_t{node} * dim, dim};
    }
};

// input rows i.i.d. uniform in [-0.5/dim, +0.5/dim], output rows zero.
EmbeddingTable init_embeddings(std::size_t num_nodes, std::uint32_t dim,
                               std::uint64_t seed);

// Softmax over the whole vocabulary with the center's input row:
// exp(output[target] . input[center]) / sum_v exp(output[v] . input[center]),
// computed with max-subtraction. Result in (0, 1].
double softmax_prob(const EmbeddingTable& table, NodeId target, NodeId center);

// Size-normalized sum of log softmax over all ordered pairs of distinct
// group members; always <= 0. Rejects groups with duplicate ids or size < 2.
double group_log_likelihood(const EmbeddingTable& table,
                            const ContextGroup& group);

// Mean group log-likelihood over a non-empty corpus.
double corpus_log_likelihood(const EmbeddingTable& table,
                             std::span<const ContextGroup> corpus);

enum class Metric : std::uint8_t { Cosine = 0, Euclidean = 1 };

struct Scored {
    NodeId node;
    double score;
};

// Top-k rows closest to the query's input row, query excluded. Cosine ranks
// by descending similarity, euclidean by ascending distance; ties break by
// ascending node id. A zero-norm query under cosine is an error; zero-norm
// candidates score 0.
std::vector<Scored> nearest(const EmbeddingTable& table, NodeId query,
                            std::size_t top_k, Metric metric);

// Text format: header "N dim", then one row per line: external id followed
// by the input-row values. Round-trips within 1e-6 per entry.
void save_embeddings_text(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings_text(const std::string& path);

// Binary format: magic, version, N, dim, then raw input and output matrices;
// round-trips bit-exactly. Carries no id table.
void save_embeddings_binary(const EmbeddingTable& table,
                            const std::string& path);
EmbeddingTable load_embeddings_binary(const std::string& path);

// Sniffs the binary magic, falls back to text.
EmbeddingTable load_embeddings(const std::string& path);

inline constexpr std::uint32_t kEmbeddingBinaryVersion = 1;

bool parse_metric(const std::string& text, Metric& out);

}  // namespace relgraph
