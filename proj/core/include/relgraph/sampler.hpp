#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relgraph/graph.hpp"

namespace relgraph {

enum class SamplerMethod : std::uint8_t { Nbne = 0, DeepWalk = 1, Node2Vec = 2 };

struct SamplerConfig {
    SamplerMethod method = SamplerMethod::Nbne;
    std::uint32_t group_size = 5;      // neighbors per group
    std::uint32_t permutations = 30;   // permutations per node
    std::uint32_t num_walks = 7;       // walks per start node
    std::uint32_t walk_length = 25;    // max nodes per walk
    double return_bias = 1.0;          // second-order return weight is 1/return_bias
    double inout_bias = 1.0;           // second-order far-jump weight is 1/inout_bias
    std::uint64_t seed = 1;

    void validate() const;  // throws Error on out-of-range parameters
};

// For every node with at least one neighbor in the view: draw `permutations`
// independent uniform permutations of its neighbor list, cut each permutation
// into consecutive slices of `group_size` (the last slice may be shorter) and
// emit [root, slice...] per slice. Zero-degree nodes emit nothing. Groups are
// emitted in node-id order with one RNG stream per (seed, node), so output is
// reproducible regardless of scheduling.
std::vector<ContextGroup> nbne_groups(const Graph& graph, GraphView view,
                                      std::uint32_t group_size,
                                      std::uint32_t permutations,
                                      std::uint64_t seed);

// Uniform first-order random walks, `num_walks` per start node, at most
// `walk_length` nodes each; a walk stops early only at a node with no
// neighbors in the view.
std::vector<ContextGroup> deepwalk_walks(const Graph& graph, GraphView view,
                                         std::uint32_t num_walks,
                                         std::uint32_t walk_length,
                                         std::uint64_t seed);

// Second-order biased walks. Given the previous step t -> v, the unnormalized
// weight of candidate x is 1/return_bias if x == t, 1 if x neighbors t, and
// 1/inout_bias otherwise; the first step is uniform.
std::vector<ContextGroup> node2vec_walks(const Graph& graph, GraphView view,
                                         std::uint32_t num_walks,
                                         std::uint32_t walk_length,
                                         double return_bias, double inout_bias,
                                         std::uint64_t seed);

std::vector<ContextGroup> sample_contexts(const Graph& graph, GraphView view,
                                          const SamplerConfig& config);

// One group per line, space-separated external node ids; for offline
// inspection and cross-checking.
void dump_corpus(const std::vector<ContextGroup>& corpus, const Graph& graph,
                 const std::string& path);

bool parse_sampler_method(const std::string& text, SamplerMethod& out);
const char* to_string(SamplerMethod method);

}  // namespace relgraph
