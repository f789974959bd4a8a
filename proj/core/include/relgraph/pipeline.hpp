#pragma once

#include "relgraph/embedding.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/sampler.hpp"
#include "relgraph/trainer.hpp"

namespace relgraph {

struct EmbedOptions {
    SamplerConfig sampler;
    TrainerConfig trainer;
};

// Method presets: nbne uses window 6 with 30 permutations of groups of 5;
// deepwalk window 12 with 7 walks of length 25; node2vec window 5 with 57
// walks of length 73 and neutral biases.
EmbedOptions default_embed_options(SamplerMethod method);

// Neighborhood groups are drawn separately from the mechanism-of-action view
// (drug-protein + protein-protein) and the indication view (drug-disease)
// and concatenated into one corpus over the shared table; walk methods walk
// the full view.
std::vector<ContextGroup> build_corpus(const Graph& graph,
                                       const EmbedOptions& options);

// init + sample + train; table rows carry the graph's external ids.
EmbeddingTable embed_graph(const Graph& graph, const EmbedOptions& options,
                           const EpochCallback& on_epoch = {});

}  // namespace relgraph
