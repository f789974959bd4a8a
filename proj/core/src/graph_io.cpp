#include "relgraph/graph_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace relgraph {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string at_line(const std::string& path, std::uint64_t line_no) {
    return path + ":" + std::to_string(line_no);
}

void load_node_file(GraphBuilder& builder, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open node file: " + path);
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() ||
            fields[1].empty())
            throw Error(at_line(path, line_no) +
                        ": malformed node row (want id<TAB>kind[<TAB>name])");
        NodeKind kind;
        if (!parse_node_kind(fields[1], kind))
            throw Error(at_line(path, line_no) + ": unknown node kind '" +
                        fields[1] + "'");
        builder.add_node(fields[0], kind,
                         fields.size() == 3 ? fields[2] : std::string{});
    }
}

std::uint64_t load_edge_file(GraphBuilder& builder, const EdgeFile& file) {
    std::ifstream in(file.path);
    if (!in) throw Error("cannot open edge file: " + file.path);
    std::string line;
    std::uint64_t line_no = 0, rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw Error(at_line(file.path, line_no) +
                        ": malformed edge row (want src<TAB>dst)");
        builder.add_edge(fields[0], fields[1], file.relation,
                         at_line(file.path, line_no));
        ++rows;
    }
    return rows;
}

}  // namespace

LoadResult load_graph(const std::vector<EdgeFile>& edge_files,
                      const std::optional<std::string>& node_file) {
    GraphBuilder builder;
    // node file first: zero-degree nodes keep stable ids across runs
    if (node_file) load_node_file(builder, *node_file);
    LoadResult result;
    for (const auto& file : edge_files)
        result.rows_parsed += load_edge_file(builder, file);
    result.self_loops_dropped = builder.self_loops_dropped();
    result.graph = builder.build();
    result.stats = result.graph.stats();
    return result;
}

namespace {

constexpr char kCacheMagic[4] = {'R', 'G', 'P', 'H'};

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw Error("truncated graph cache: " + path);
    return value;
}

void write_string(std::ostream& out, const std::string& s) {
    write_pod(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in, const std::string& path) {
    const auto len = read_pod<std::uint32_t>(in, path);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw Error("truncated graph cache: " + path);
    return s;
}

}  // namespace

void save_graph_cache(const Graph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write graph cache: " + path);
    out.write(kCacheMagic, sizeof(kCacheMagic));
    write_pod(out, kGraphCacheVersion);
    const auto n = static_cast<std::uint64_t>(graph.num_nodes());
    write_pod(out, n);
    for (std::size_t r = 0; r < kNumRelations; ++r)
        write_pod(out, graph.edge_count(static_cast<RelationKind>(r)));
    for (NodeId v = 0; v < n; ++v)
        write_pod(out, static_cast<std::uint8_t>(graph.kind_of(v)));
    for (NodeId v = 0; v < n; ++v) {
        write_string(out, graph.name_of(v));
        const auto& display = graph.display_name(v);
        write_string(out, display == graph.name_of(v) ? std::string{} : display);
    }
    for (std::size_t r = 0; r < kNumRelations; ++r) {
        for (NodeId v = 0; v < n; ++v) {
            auto ns = graph.neighbors(v, static_cast<RelationKind>(r));
            write_pod(out, static_cast<std::uint32_t>(ns.size()));
            out.write(reinterpret_cast<const char*>(ns.data()),
                      static_cast<std::streamsize>(ns.size() * sizeof(NodeId)));
        }
    }
    if (!out) throw Error("write failed: " + path);
}

Graph load_graph_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open graph cache: " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0)
        throw Error("not a graph cache (bad magic): " + path);
    const auto version = read_pod<std::uint32_t>(in, path);
    if (version != kGraphCacheVersion)
        throw Error("unsupported graph cache version " +
                    std::to_string(version) + " (want " +
                    std::to_string(kGraphCacheVersion) + "): " + path);
    const auto n = read_pod<std::uint64_t>(in, path);

    Graph graph;
    for (std::size_t r = 0; r < kNumRelations; ++r)
        graph.edge_counts_[r] = read_pod<std::uint64_t>(in, path);
    graph.kinds_.resize(n);
    for (auto& kind : graph.kinds_) {
        const auto raw = read_pod<std::uint8_t>(in, path);
        if (raw >= kNumNodeKinds)
            throw Error("corrupt graph cache (bad node kind): " + path);
        kind = static_cast<NodeKind>(raw);
    }
    graph.names_.reserve(n);
    graph.display_names_.reserve(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        graph.names_.push_back(read_string(in, path));
        graph.display_names_.push_back(read_string(in, path));
        graph.index_.emplace(graph.names_.back(), static_cast<NodeId>(v));
    }
    if (graph.index_.size() != n)
        throw Error("corrupt graph cache (duplicate node names): " + path);
    for (std::size_t r = 0; r < kNumRelations; ++r) {
        auto& offsets = graph.offsets_[r];
        auto& flat = graph.adjacency_[r];
        offsets.assign(n + 1, 0);
        for (std::uint64_t v = 0; v < n; ++v) {
            const auto deg = read_pod<std::uint32_t>(in, path);
            offsets[v] = flat.size();
            const std::size_t old = flat.size();
            flat.resize(old + deg);
            in.read(reinterpret_cast<char*>(flat.data() + old),
                    static_cast<std::streamsize>(deg * sizeof(NodeId)));
            if (!in) throw Error("truncated graph cache: " + path);
        }
        offsets[n] = flat.size();
        for (NodeId id : flat)
            if (id >= n)
                throw Error("corrupt graph cache (neighbor id out of range): " +
                            path);
    }
    return graph;
}

std::string format_stats(const GraphStats& stats) {
    std::ostringstream out;
    out << "nodes: " << stats.total_nodes() << "\n";
    for (std::size_t k = 0; k < kNumNodeKinds; ++k)
        out << "  " << to_string(static_cast<NodeKind>(k)) << ": "
            << stats.nodes_per_kind[k] << "\n";
    out << "edges: " << stats.total_edges() << "\n";
    for (std::size_t r = 0; r < kNumRelations; ++r)
        out << "  " << to_string(static_cast<RelationKind>(r)) << ": "
            << stats.edges_per_relation[r] << "\n";
    std::uint64_t isolated =
        stats.degree_histogram.empty() ? 0 : stats.degree_histogram[0];
    out << "isolated nodes: " << isolated << "\n";
    out << "max degree: "
        << (stats.degree_histogram.empty()
                ? 0
                : stats.degree_histogram.size() - 1)
        << "\n";
    return out.str();
}

}  // namespace relgraph
