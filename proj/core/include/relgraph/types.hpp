#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relgraph {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Drug = 0, Protein = 1, Disease = 2 };

enum class RelationKind : std::uint8_t {
    DrugProtein = 0,
    DrugDisease = 1,
    ProteinProtein = 2,
};

// Relation-filtered neighborhoods. Moa covers drug-protein and
// protein-protein edges, Indication covers drug-disease edges.
enum class GraphView : std::uint8_t { Moa = 0, Indication = 1, Full = 2 };

inline constexpr std::size_t kNumNodeKinds = 3;
inline constexpr std::size_t kNumRelations = 3;

// One training sentence: a sequence of node ids. Neighborhood groups put
// the root node first; random walks put the start node first.
using ContextGroup = std::vector<NodeId>;

const char* to_string(NodeKind kind);
const char* to_string(RelationKind rel);
const char* to_string(GraphView view);

// kind name as used in node TSV files: "drug" | "protein" | "disease"
bool parse_node_kind(const std::string& text, NodeKind& out);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace relgraph
