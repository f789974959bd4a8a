#include "relgraph/pipeline.hpp"

#include "relgraph/rng.hpp"

namespace relgraph {

EmbedOptions default_embed_options(SamplerMethod method) {
    EmbedOptions options;
    options.sampler.method = method;
    switch (method) {
        case SamplerMethod::Nbne:
            options.trainer.window = 6;
            options.sampler.permutations = 30;
            options.sampler.group_size = 5;
            break;
        case SamplerMethod::DeepWalk:
            options.trainer.window = 12;
            options.sampler.num_walks = 7;
            options.sampler.walk_length = 25;
            break;
        case SamplerMethod::Node2Vec:
            options.trainer.window = 5;
            options.sampler.num_walks = 57;
            options.sampler.walk_length = 73;
            options.sampler.return_bias = 1.0;
            options.sampler.inout_bias = 1.0;
            break;
    }
    return options;
}

std::vector<ContextGroup> build_corpus(const Graph& graph,
                                       const EmbedOptions& options) {
    const auto& sampler = options.sampler;
    sampler.validate();
    if (sampler.method == SamplerMethod::Nbne) {
        auto corpus = nbne_groups(graph, GraphView::Moa, sampler.group_size,
                                  sampler.permutations,
                                  substream(sampler.seed, "moa"));
        auto indication = nbne_groups(graph, GraphView::Indication,
                                      sampler.group_size, sampler.permutations,
                                      substream(sampler.seed, "indication"));
        corpus.insert(corpus.end(),
                      std::make_move_iterator(indication.begin()),
                      std::make_move_iterator(indication.end()));
        return corpus;
    }
    return sample_contexts(graph, GraphView::Full, sampler);
}

EmbeddingTable embed_graph(const Graph& graph, const EmbedOptions& options,
                           const EpochCallback& on_epoch) {
    if (graph.num_nodes() == 0) throw Error("empty graph");
    const auto corpus = build_corpus(graph, options);
    if (corpus.empty())
        throw Error("graph produced no training contexts (no edges?)");
    EmbeddingTable table = init_embeddings(graph.num_nodes(),
                                           options.trainer.dim,
                                           options.trainer.seed);
    table.names.reserve(graph.num_nodes());
    for (NodeId v = 0; v < graph.num_nodes(); ++v)
        table.names.push_back(graph.name_of(v));
    return train(corpus, options.trainer, std::move(table), on_epoch);
}

}  // namespace relgraph
