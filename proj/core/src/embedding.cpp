#include "relgraph/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "relgraph/rng.hpp"

namespace relgraph {

EmbeddingTable init_embeddings(std::size_t num_nodes, std::uint32_t dim,
                               std::uint64_t seed) {
    if (num_nodes < 1) throw Error("embedding table needs at least one node");
    if (dim < 1) throw Error("embedding dimension must be >= 1");
    EmbeddingTable table;
    table.dim = dim;
    table.input.resize(num_nodes * std::size_t{dim});
    table.output.assign(num_nodes * std::size_t{dim}, 0.0f);
    Rng rng(substream(seed, "init"));
    const double half = 0.5 / dim;
    for (auto& value : table.input)
        value = static_cast<float>(rng.uniform(-half, half));
    return table;
}

namespace {

double dot(std::span<const float> a, std::span<const float> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return sum;
}

void check_ids(const EmbeddingTable& table, std::initializer_list<NodeId> ids) {
    for (NodeId id : ids)
        if (id >= table.rows())
            throw Error("node id out of range: " + std::to_string(id));
}

// log sum_v exp(output[v] . center) via max-subtraction
double log_partition(const EmbeddingTable& table,
                     std::span<const float> center) {
    double max_dot = -std::numeric_limits<double>::infinity();
    std::vector<double> dots(table.rows());
    for (NodeId v = 0; v < table.rows(); ++v) {
        dots[v] = dot(table.output_row(v), center);
        if (!std::isfinite(dots[v]))
            throw Error("non-finite embedding entries");
        max_dot = std::max(max_dot, dots[v]);
    }
    double sum = 0.0;
    for (double d : dots) sum += std::exp(d - max_dot);
    return max_dot + std::log(sum);
}

}  // namespace

double softmax_prob(const EmbeddingTable& table, NodeId target, NodeId center) {
    check_ids(table, {target, center});
    const auto center_row = table.input_row(center);
    const double log_z = log_partition(table, center_row);
    return std::exp(dot(table.output_row(target), center_row) - log_z);
}

double group_log_likelihood(const EmbeddingTable& table,
                            const ContextGroup& group) {
    if (group.size() < 2) throw Error("context group needs at least 2 nodes");
    std::unordered_set<NodeId> seen(group.begin(), group.end());
    if (seen.size() != group.size())
        throw Error("context group has duplicate node ids");
    for (NodeId v : group) check_ids(table, {v});

    double total = 0.0;
    for (NodeId center : group) {
        const auto center_row = table.input_row(center);
        const double log_z = log_partition(table, center_row);
        for (NodeId target : group) {
            if (target == center) continue;
            total += dot(table.output_row(target), center_row) - log_z;
        }
    }
    return total / static_cast<double>(group.size());
}

double corpus_log_likelihood(const EmbeddingTable& table,
                             std::span<const ContextGroup> corpus) {
    if (corpus.empty()) throw Error("empty corpus");
    double sum = 0.0;
    for (const auto& group : corpus) sum += group_log_likelihood(table, group);
    return sum / static_cast<double>(corpus.size());
}

std::vector<Scored> nearest(const EmbeddingTable& table, NodeId query,
                            std::size_t top_k, Metric metric) {
    check_ids(table, {query});
    if (top_k < 1) throw Error("top_k must be >= 1");
    const auto query_row = table.input_row(query);
    const double query_norm = std::sqrt(dot(query_row, query_row));
    if (metric == Metric::Cosine && query_norm == 0.0)
        throw Error("cosine similarity undefined for zero-vector query node " +
                    std::to_string(query));

    std::vector<Scored> scored;
    scored.reserve(table.rows() - 1);
    for (NodeId v = 0; v < table.rows(); ++v) {
        if (v == query) continue;
        const auto row = table.input_row(v);
        double score;
        if (metric == Metric::Cosine) {
            const double norm = std::sqrt(dot(row, row));
            score = norm == 0.0 ? 0.0 : dot(row, query_row) / (norm * query_norm);
        } else {
            double sq = 0.0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const double diff =
                    static_cast<double>(row[i]) - static_cast<double>(query_row[i]);
                sq += diff * diff;
            }
            score = std::sqrt(sq);
        }
        scored.push_back({v, score});
    }
    const bool descending = metric == Metric::Cosine;
    auto better = [descending](const Scored& a, const Scored& b) {
        if (a.score != b.score)
            return descending ? a.score > b.score : a.score < b.score;
        return a.node < b.node;
    };
    const std::size_t k = std::min(top_k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), better);
    scored.resize(k);
    return scored;
}

void save_embeddings_text(const EmbeddingTable& table,
                          const std::string& path) {
    if (table.names.size() != table.rows())
        throw Error("embedding table has no external ids; use binary format");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write embeddings: " + path);
    out << table.rows() << ' ' << table.dim << '\n';
    char buf[32];
    for (NodeId v = 0; v < table.rows(); ++v) {
        out << table.names[v];
        for (float value : table.input_row(v)) {
            std::snprintf(buf, sizeof(buf), " %.6f", static_cast<double>(value));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

EmbeddingTable load_embeddings_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open embeddings: " + path);
    std::size_t rows = 0;
    std::uint32_t dim = 0;
    if (!(in >> rows >> dim) || rows < 1 || dim < 1)
        throw Error("bad embedding header: " + path);
    EmbeddingTable table;
    table.dim = dim;
    table.names.resize(rows);
    table.input.resize(rows * std::size_t{dim});
    table.output.assign(rows * std::size_t{dim}, 0.0f);
    for (std::size_t v = 0; v < rows; ++v) {
        if (!(in >> table.names[v]))
            throw Error("truncated embeddings (header says " +
                        std::to_string(rows) + " rows): " + path);
        for (std::uint32_t i = 0; i < dim; ++i) {
            double value;
            if (!(in >> value))
                throw Error("truncated embeddings (header says " +
                            std::to_string(rows) + " rows): " + path);
            table.input[v * dim + i] = static_cast<float>(value);
        }
    }
    return table;
}

namespace {
constexpr char kEmbeddingMagic[4] = {'R', 'E', 'M', 'B'};
}

void save_embeddings_binary(const EmbeddingTable& table,
                            const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write embeddings: " + path);
    out.write(kEmbeddingMagic, sizeof(kEmbeddingMagic));
    const std::uint32_t version = kEmbeddingBinaryVersion;
    const std::uint64_t rows = table.rows();
    const std::uint32_t dim = table.dim;
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char*>(table.input.data()),
              static_cast<std::streamsize>(table.input.size() * sizeof(float)));
    out.write(reinterpret_cast<const char*>(table.output.data()),
              static_cast<std::streamsize>(table.output.size() * sizeof(float)));
    if (!out) throw Error("write failed: " + path);
}

EmbeddingTable load_embeddings_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open embeddings: " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kEmbeddingMagic, sizeof(magic)) != 0)
        throw Error("not a binary embedding file (bad magic): " + path);
    std::uint32_t version = 0, dim = 0;
    std::uint64_t rows = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    if (!in) throw Error("truncated embeddings: " + path);
    if (version != kEmbeddingBinaryVersion)
        throw Error("unsupported embedding format version " +
                    std::to_string(version) + ": " + path);
    if (rows < 1 || dim < 1) throw Error("bad embedding header: " + path);
    EmbeddingTable table;
    table.dim = dim;
    table.input.resize(rows * std::size_t{dim});
    table.output.resize(rows * std::size_t{dim});
    in.read(reinterpret_cast<char*>(table.input.data()),
            static_cast<std::streamsize>(table.input.size() * sizeof(float)));
    in.read(reinterpret_cast<char*>(table.output.data()),
            static_cast<std::streamsize>(table.output.size() * sizeof(float)));
    if (!in) throw Error("truncated embeddings: " + path);
    return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open embeddings: " + path);
        char magic[4] = {};
        in.read(magic, sizeof(magic));
        if (in && std::memcmp(magic, kEmbeddingMagic, sizeof(magic)) == 0)
            return load_embeddings_binary(path);
    }
    return load_embeddings_text(path);
}

bool parse_metric(const std::string& text, Metric& out) {
    if (text == "cosine") { out = Metric::Cosine; return true; }
    if (text == "euclidean") { out = Metric::Euclidean; return true; }
    return false;
}

}  // namespace relgraph
