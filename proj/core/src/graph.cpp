#include "relgraph/graph.hpp"

#include <algorithm>
#include <numeric>

namespace relgraph {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Drug: return "drug";
        case NodeKind::Protein: return "protein";
        case NodeKind::Disease: return "disease";
    }
    return "?";
}

const char* to_string(RelationKind rel) {
    switch (rel) {
        case RelationKind::DrugProtein: return "drug-protein";
        case RelationKind::DrugDisease: return "drug-disease";
        case RelationKind::ProteinProtein: return "protein-protein";
    }
    return "?";
}

const char* to_string(GraphView view) {
    switch (view) {
        case GraphView::Moa: return "moa";
        case GraphView::Indication: return "indication";
        case GraphView::Full: return "full";
    }
    return "?";
}

bool parse_node_kind(const std::string& text, NodeKind& out) {
    if (text == "drug") { out = NodeKind::Drug; return true; }
    if (text == "protein") { out = NodeKind::Protein; return true; }
    if (text == "disease") { out = NodeKind::Disease; return true; }
    return false;
}

std::uint64_t GraphStats::total_nodes() const {
    return std::accumulate(nodes_per_kind.begin(), nodes_per_kind.end(),
                           std::uint64_t{0});
}

std::uint64_t GraphStats::total_edges() const {
    return std::accumulate(edges_per_relation.begin(), edges_per_relation.end(),
                           std::uint64_t{0});
}

std::optional<NodeId> Graph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId Graph::id_of(std::string_view name) const {
    auto id = find(name);
    if (!id) throw Error("unknown node identifier: " + std::string(name));
    return *id;
}

const std::string& Graph::name_of(NodeId node) const {
    check_node(node);
    return names_[node];
}

const std::string& Graph::display_name(NodeId node) const {
    check_node(node);
    return display_names_[node].empty() ? names_[node] : display_names_[node];
}

NodeKind Graph::kind_of(NodeId node) const {
    check_node(node);
    return kinds_[node];
}

void Graph::check_node(NodeId node) const {
    if (node >= names_.size())
        throw Error("node id out of range: " + std::to_string(node));
}

std::span<const NodeId> Graph::neighbors(NodeId node, RelationKind rel) const {
    check_node(node);
    const auto r = static_cast<std::size_t>(rel);
    const auto lo = offsets_[r][node];
    const auto hi = offsets_[r][node + 1];
    return {adjacency_[r].data() + lo, adjacency_[r].data() + hi};
}

std::vector<NodeId> Graph::neighbors(NodeId node, GraphView view) const {
    check_node(node);
    switch (view) {
        case GraphView::Indication: {
            auto s = neighbors(node, RelationKind::DrugDisease);
            return {s.begin(), s.end()};
        }
        case GraphView::Moa: {
            auto a = neighbors(node, RelationKind::DrugProtein);
            auto b = neighbors(node, RelationKind::ProteinProtein);
            std::vector<NodeId> merged(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(), merged.begin());
            return merged;
        }
        case GraphView::Full: {
            // endpoint kinds make the three relation lists disjoint
            auto a = neighbors(node, RelationKind::DrugProtein);
            auto b = neighbors(node, RelationKind::ProteinProtein);
            auto c = neighbors(node, RelationKind::DrugDisease);
            std::vector<NodeId> ab(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(), ab.begin());
            std::vector<NodeId> out(ab.size() + c.size());
            std::merge(ab.begin(), ab.end(), c.begin(), c.end(), out.begin());
            return out;
        }
    }
    return {};
}

std::size_t Graph::degree(NodeId node, GraphView view) const {
    check_node(node);
    auto deg = [&](RelationKind rel) {
        const auto r = static_cast<std::size_t>(rel);
        return offsets_[r][node + 1] - offsets_[r][node];
    };
    switch (view) {
        case GraphView::Indication: return deg(RelationKind::DrugDisease);
        case GraphView::Moa:
            return deg(RelationKind::DrugProtein) +
                   deg(RelationKind::ProteinProtein);
        case GraphView::Full:
            return deg(RelationKind::DrugProtein) +
                   deg(RelationKind::ProteinProtein) +
                   deg(RelationKind::DrugDisease);
    }
    return 0;
}

bool Graph::has_edge(NodeId src, NodeId dst, RelationKind rel) const {
    auto ns = neighbors(src, rel);
    return std::binary_search(ns.begin(), ns.end(), dst);
}

GraphStats Graph::stats() const {
    GraphStats s;
    s.edges_per_relation = edge_counts_;
    std::size_t max_degree = 0;
    for (NodeId v = 0; v < num_nodes(); ++v)
        max_degree = std::max(max_degree, degree(v, GraphView::Full));
    s.degree_histogram.assign(num_nodes() == 0 ? 0 : max_degree + 1, 0);
    for (NodeId v = 0; v < num_nodes(); ++v) {
        s.nodes_per_kind[static_cast<std::size_t>(kinds_[v])]++;
        s.degree_histogram[degree(v, GraphView::Full)]++;
    }
    return s;
}

std::vector<NodeId> Graph::nodes_of_kind(NodeKind kind) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < num_nodes(); ++v)
        if (kinds_[v] == kind) out.push_back(v);
    return out;
}

bool Graph::operator==(const Graph& other) const {
    return names_ == other.names_ && display_names_ == other.display_names_ &&
           kinds_ == other.kinds_ && offsets_ == other.offsets_ &&
           adjacency_ == other.adjacency_ && edge_counts_ == other.edge_counts_;
}

namespace {

struct EndpointKinds {
    NodeKind src;
    NodeKind dst;
};

EndpointKinds endpoint_kinds(RelationKind rel) {
    switch (rel) {
        case RelationKind::DrugProtein:
            return {NodeKind::Drug, NodeKind::Protein};
        case RelationKind::DrugDisease:
            return {NodeKind::Drug, NodeKind::Disease};
        case RelationKind::ProteinProtein:
            return {NodeKind::Protein, NodeKind::Protein};
    }
    return {NodeKind::Drug, NodeKind::Drug};
}

}  // namespace

NodeId GraphBuilder::intern(std::string_view name, NodeKind kind,
                            const std::string& context) {
    auto it = graph_.index_.find(std::string(name));
    if (it != graph_.index_.end()) {
        const NodeId id = it->second;
        if (graph_.kinds_[id] != kind) {
            std::string msg = context.empty() ? "" : context + ": ";
            msg += "kind conflict for '" + std::string(name) + "': declared " +
                   to_string(graph_.kinds_[id]) + ", used as " + to_string(kind);
            throw Error(msg);
        }
        return id;
    }
    const auto id = static_cast<NodeId>(graph_.names_.size());
    graph_.names_.emplace_back(name);
    graph_.display_names_.emplace_back();
    graph_.kinds_.push_back(kind);
    graph_.index_.emplace(std::string(name), id);
    return id;
}

NodeId GraphBuilder::add_node(std::string_view name, NodeKind kind,
                              std::string_view display) {
    const NodeId id = intern(name, kind, {});
    // a display equal to the id is the accessor's fallback anyway; storing
    // it empty keeps cache round-trips canonical
    if (!display.empty() && display != name)
        graph_.display_names_[id] = std::string(display);
    return id;
}

void GraphBuilder::add_edge(std::string_view src, std::string_view dst,
                            RelationKind rel, const std::string& context) {
    const auto kinds = endpoint_kinds(rel);
    const NodeId s = intern(src, kinds.src, context);
    const NodeId d = intern(dst, kinds.dst, context);
    if (s == d) {
        ++self_loops_;
        return;
    }
    edges_[static_cast<std::size_t>(rel)].emplace_back(s, d);
}

Graph GraphBuilder::build() {
    if (graph_.names_.empty()) throw Error("empty input: no nodes or edges");
    const std::size_t n = graph_.names_.size();
    for (std::size_t r = 0; r < kNumRelations; ++r) {
        std::vector<std::vector<NodeId>> adj(n);
        for (const auto& [s, d] : edges_[r]) {
            adj[s].push_back(d);
            adj[d].push_back(s);
        }
        std::uint64_t entries = 0;
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            entries += list.size();
        }
        auto& offsets = graph_.offsets_[r];
        auto& flat = graph_.adjacency_[r];
        offsets.assign(n + 1, 0);
        flat.clear();
        flat.reserve(entries);
        for (std::size_t v = 0; v < n; ++v) {
            offsets[v] = flat.size();
            flat.insert(flat.end(), adj[v].begin(), adj[v].end());
        }
        offsets[n] = flat.size();
        // every surviving edge contributes one entry per endpoint
        graph_.edge_counts_[r] = entries / 2;
        edges_[r].clear();
        edges_[r].shrink_to_fit();
    }
    return std::move(graph_);
}

}  // namespace relgraph
