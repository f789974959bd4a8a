#include "relgraph/sampler.hpp"

#include <algorithm>
#include <fstream>

#include "relgraph/rng.hpp"

namespace relgraph {

void SamplerConfig::validate() const {
    if (group_size < 1) throw Error("group size must be >= 1");
    if (permutations < 1) throw Error("permutations must be >= 1");
    if (num_walks < 1) throw Error("walks per node must be >= 1");
    if (walk_length < 2) throw Error("walk length must be >= 2");
    if (!(return_bias > 0.0)) throw Error("return bias must be > 0");
    if (!(inout_bias > 0.0)) throw Error("in-out bias must be > 0");
}

namespace {

// Materialized view adjacency: merged neighbor lists, one contiguous block.
struct ViewAdjacency {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;

    ViewAdjacency(const Graph& graph, GraphView view) {
        const std::size_t n = graph.num_nodes();
        offsets.assign(n + 1, 0);
        for (NodeId v = 0; v < n; ++v) offsets[v + 1] = graph.degree(v, view);
        for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
        targets.resize(offsets[n]);
        for (NodeId v = 0; v < n; ++v) {
            auto merged = graph.neighbors(v, view);
            std::copy(merged.begin(), merged.end(),
                      targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
        }
    }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
    bool connected(NodeId a, NodeId b) const {
        auto ns = neighbors(a);
        return std::binary_search(ns.begin(), ns.end(), b);
    }
};

}  // namespace

std::vector<ContextGroup> nbne_groups(const Graph& graph, GraphView view,
                                      std::uint32_t group_size,
                                      std::uint32_t permutations,
                                      std::uint64_t seed) {
    if (group_size < 1) throw Error("group size must be >= 1");
    if (permutations < 1) throw Error("permutations must be >= 1");
    const ViewAdjacency adj(graph, view);
    std::vector<ContextGroup> groups;
    std::vector<NodeId> perm;
    for (NodeId root = 0; root < graph.num_nodes(); ++root) {
        auto ns = adj.neighbors(root);
        if (ns.empty()) continue;
        Rng rng(substream(seed, "nbne", root));
        perm.assign(ns.begin(), ns.end());
        for (std::uint32_t round = 0; round < permutations; ++round) {
            rng.shuffle(perm);
            for (std::size_t start = 0; start < perm.size();
                 start += group_size) {
                const std::size_t stop =
                    std::min(perm.size(), start + group_size);
                ContextGroup group;
                group.reserve(stop - start + 1);
                group.push_back(root);
                group.insert(group.end(), perm.begin() + start,
                             perm.begin() + stop);
                groups.push_back(std::move(group));
            }
        }
    }
    return groups;
}

namespace {

template <typename StepFn>
std::vector<ContextGroup> run_walks(const Graph& graph, const ViewAdjacency& adj,
                                    std::uint32_t num_walks,
                                    std::uint32_t walk_length,
                                    std::uint64_t seed, const char* stream,
                                    StepFn step) {
    if (walk_length < 2) throw Error("walk length must be >= 2");
    if (num_walks < 1) throw Error("walks per node must be >= 1");
    std::vector<ContextGroup> walks;
    for (NodeId start = 0; start < graph.num_nodes(); ++start) {
        if (adj.degree(start) == 0) continue;
        Rng rng(substream(seed, stream, start));
        for (std::uint32_t w = 0; w < num_walks; ++w) {
            ContextGroup walk;
            walk.reserve(walk_length);
            walk.push_back(start);
            while (walk.size() < walk_length) {
                const NodeId current = walk.back();
                if (adj.degree(current) == 0) break;
                walk.push_back(step(walk, current, rng));
            }
            walks.push_back(std::move(walk));
        }
    }
    return walks;
}

}  // namespace

std::vector<ContextGroup> deepwalk_walks(const Graph& graph, GraphView view,
                                         std::uint32_t num_walks,
                                         std::uint32_t walk_length,
                                         std::uint64_t seed) {
    const ViewAdjacency adj(graph, view);
    return run_walks(graph, adj, num_walks, walk_length, seed, "deepwalk",
                     [&adj](const ContextGroup&, NodeId current, Rng& rng) {
                         auto ns = adj.neighbors(current);
                         return ns[rng.bounded(ns.size())];
                     });
}

std::vector<ContextGroup> node2vec_walks(const Graph& graph, GraphView view,
                                         std::uint32_t num_walks,
                                         std::uint32_t walk_length,
                                         double return_bias, double inout_bias,
                                         std::uint64_t seed) {
    if (!(return_bias > 0.0) || !(inout_bias > 0.0))
        throw Error("node2vec biases must be > 0");
    const ViewAdjacency adj(graph, view);
    const double return_weight = 1.0 / return_bias;
    const double far_weight = 1.0 / inout_bias;
    std::vector<double> cumulative;
    auto step = [&](const ContextGroup& walk, NodeId current,
                    Rng& rng) -> NodeId {
        auto ns = adj.neighbors(current);
        if (walk.size() < 2) return ns[rng.bounded(ns.size())];
        const NodeId prev = walk[walk.size() - 2];
        cumulative.resize(ns.size());
        double total = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const NodeId candidate = ns[i];
            double weight;
            if (candidate == prev)
                weight = return_weight;
            else if (adj.connected(prev, candidate))
                weight = 1.0;
            else
                weight = far_weight;
            total += weight;
            cumulative[i] = total;
        }
        const double draw = rng.uniform() * total;
        const auto it =
            std::lower_bound(cumulative.begin(), cumulative.end(), draw);
        const auto idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), ns.size() - 1);
        return ns[idx];
    };
    return run_walks(graph, adj, num_walks, walk_length, seed, "node2vec",
                     step);
}

std::vector<ContextGroup> sample_contexts(const Graph& graph, GraphView view,
                                          const SamplerConfig& config) {
    config.validate();
    switch (config.method) {
        case SamplerMethod::Nbne:
            return nbne_groups(graph, view, config.group_size,
                               config.permutations, config.seed);
        case SamplerMethod::DeepWalk:
            return deepwalk_walks(graph, view, config.num_walks,
                                  config.walk_length, config.seed);
        case SamplerMethod::Node2Vec:
            return node2vec_walks(graph, view, config.num_walks,
                                  config.walk_length, config.return_bias,
                                  config.inout_bias, config.seed);
    }
    throw Error("unknown sampler method");
}

void dump_corpus(const std::vector<ContextGroup>& corpus, const Graph& graph,
                 const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write corpus dump: " + path);
    for (const auto& group : corpus) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i) out << ' ';
            out << graph.name_of(group[i]);
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

bool parse_sampler_method(const std::string& text, SamplerMethod& out) {
    if (text == "nbne") { out = SamplerMethod::Nbne; return true; }
    if (text == "deepwalk") { out = SamplerMethod::DeepWalk; return true; }
    if (text == "node2vec") { out = SamplerMethod::Node2Vec; return true; }
    return false;
}

const char* to_string(SamplerMethod method) {
    switch (method) {
        case SamplerMethod::Nbne: return "nbne";
        case SamplerMethod::DeepWalk: return "deepwalk";
        case SamplerMethod::Node2Vec: return "node2vec";
    }
    return "?";
}

}  // namespace relgraph
