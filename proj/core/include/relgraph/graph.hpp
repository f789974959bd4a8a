#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relgraph/types.hpp"

namespace relgraph {

struct GraphStats {
    std::array<std::uint64_t, kNumNodeKinds> nodes_per_kind{};
    std::array<std::uint64_t, kNumRelations> edges_per_relation{};
    // degree_histogram[d] = number of nodes with full-view degree d;
    // entries sum to the node count
    std::vector<std::uint64_t> degree_histogram;

    std::uint64_t total_nodes() const;
    std::uint64_t total_edges() const;
};

// Immutable three-layer multi-relation graph. Node ids are dense integers
// assigned in first-seen order; external string identifiers map bijectively
// to ids. Adjacency is stored per relation, navigable from both endpoints,
// sorted and duplicate-free. Protein-protein edges are undirected.
// Safe for concurrent reads after construction.
class Graph {
public:
    Graph() = default;

    std::size_t num_nodes() const { return names_.size(); }
    std::uint64_t edge_count(RelationKind rel) const {
        return edge_counts_[static_cast<std::size_t>(rel)];
    }

    std::optional<NodeId> find(std::string_view name) const;
    NodeId id_of(std::string_view name) const;  // throws Error on unknown name
    const std::string& name_of(NodeId node) const;
    const std::string& display_name(NodeId node) const;  // falls back to name
    NodeKind kind_of(NodeId node) const;

    // sorted neighbor ids under a single relation
    std::span<const NodeId> neighbors(NodeId node, RelationKind rel) const;
    // sorted, duplicate-free union of the view's relations
    std::vector<NodeId> neighbors(NodeId node, GraphView view) const;
    std::size_t degree(NodeId node, GraphView view) const;

    bool has_edge(NodeId src, NodeId dst, RelationKind rel) const;

    GraphStats stats() const;

    std::vector<NodeId> nodes_of_kind(NodeKind kind) const;

    bool operator==(const Graph& other) const;

private:
    friend class GraphBuilder;
    friend Graph load_graph_cache(const std::string& path);

    void check_node(NodeId node) const;

    std::vector<std::string> names_;
    std::vector<std::string> display_names_;
    std::vector<NodeKind> kinds_;
    std::unordered_map<std::string, NodeId> index_;
    // CSR per relation; every edge appears under both endpoints
    std::array<std::vector<std::uint64_t>, kNumRelations> offsets_;
    std::array<std::vector<NodeId>, kNumRelations> adjacency_;
    std::array<std::uint64_t, kNumRelations> edge_counts_{};
};

// Single-threaded construction; duplicate edges are deduplicated, self-loops
// are dropped (counted in the report). Endpoint kinds are validated against
// the relation: a drug-protein row must read drug<TAB>protein.
class GraphBuilder {
public:
    // Declares a node up front (node TSV path). Conflicting kinds throw.
    NodeId add_node(std::string_view name, NodeKind kind,
                    std::string_view display = {});

    // context is prepended to error messages ("file.tsv:12")
    void add_edge(std::string_view src, std::string_view dst, RelationKind rel,
                  const std::string& context = {});

    std::uint64_t self_loops_dropped() const { return self_loops_; }

    Graph build();  // throws Error on an empty graph; builder is consumed

private:
    NodeId intern(std::string_view name, NodeKind kind,
                  const std::string& context);

    Graph graph_;
    std::array<std::vector<std::pair<NodeId, NodeId>>, kNumRelations> edges_;
    std::uint64_t self_loops_ = 0;
};

}  // namespace relgraph
