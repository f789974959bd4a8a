#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relgraph/graph.hpp"

namespace relgraph {

struct EdgeFile {
    std::string path;
    RelationKind relation;
};

struct LoadResult {
    Graph graph;
    GraphStats stats;
    std::uint64_t rows_parsed = 0;
    std::uint64_t self_loops_dropped = 0;
};

// Edge TSV: one `src<TAB>dst` per line, '#' comment lines and blank lines
// skipped. Node TSV (optional): `id<TAB>kind<TAB>display_name` with kind in
// {drug, protein, disease}; the display name may be omitted. Malformed rows
// raise Error naming the file and line number.
LoadResult load_graph(const std::vector<EdgeFile>& edge_files,
                      const std::optional<std::string>& node_file = {});

// Binary graph cache, versioned; see doc/formats.md. The loader rejects a
// mismatched magic or version.
void save_graph_cache(const Graph& graph, const std::string& path);
Graph load_graph_cache(const std::string& path);

inline constexpr std::uint32_t kGraphCacheVersion = 1;

std::string format_stats(const GraphStats& stats);

}  // namespace relgraph
