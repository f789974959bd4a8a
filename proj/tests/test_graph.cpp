#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/graph_io.hpp"

using namespace relgraph;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "relgraph-test-graph";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("graph builder: kinds, views, dedup") {
    GraphBuilder builder;
    builder.add_edge("aspirin", "cox1", RelationKind::DrugProtein);
    builder.add_edge("aspirin", "cox2", RelationKind::DrugProtein);
    builder.add_edge("aspirin", "pain", RelationKind::DrugDisease);
    builder.add_edge("cox1", "cox2", RelationKind::ProteinProtein);
    builder.add_edge("aspirin", "cox1", RelationKind::DrugProtein);  // dup
    const Graph graph = builder.build();

    CHECK(graph.num_nodes() == 4);
    CHECK(graph.edge_count(RelationKind::DrugProtein) == 2);
    CHECK(graph.edge_count(RelationKind::DrugDisease) == 1);
    CHECK(graph.edge_count(RelationKind::ProteinProtein) == 1);

    const NodeId aspirin = graph.id_of("aspirin");
    const NodeId cox1 = graph.id_of("cox1");
    const NodeId cox2 = graph.id_of("cox2");
    const NodeId pain = graph.id_of("pain");
    CHECK(graph.kind_of(aspirin) == NodeKind::Drug);
    CHECK(graph.kind_of(cox1) == NodeKind::Protein);
    CHECK(graph.kind_of(pain) == NodeKind::Disease);

    // relation views split the neighborhood
    CHECK(graph.neighbors(aspirin, GraphView::Moa) ==
          std::vector<NodeId>{cox1, cox2});
    CHECK(graph.neighbors(aspirin, GraphView::Indication) ==
          std::vector<NodeId>{pain});
    // protein sees its drug and its protein partner
    CHECK(graph.neighbors(cox1, GraphView::Moa) ==
          std::vector<NodeId>{aspirin, cox2});
}

TEST_CASE("hub protein attached to 3 drugs and 2 proteins has moa degree 5") {
    GraphBuilder builder;
    for (const char* drug : {"d1", "d2", "d3"})
        builder.add_edge(drug, "hub", RelationKind::DrugProtein);
    builder.add_edge("hub", "pa", RelationKind::ProteinProtein);
    builder.add_edge("hub", "pb", RelationKind::ProteinProtein);
    const Graph graph = builder.build();
    CHECK(graph.neighbors(graph.id_of("hub"), GraphView::Moa).size() == 5);
}

TEST_CASE("undirected protein edge navigable from both endpoints") {
    const auto pp = write_file("pp.tsv", "A\tB\n");
    const auto dd = write_file("dd_empty.tsv", "");
    const auto result = load_graph(
        {{pp, RelationKind::ProteinProtein}, {dd, RelationKind::DrugDisease}});
    const Graph& graph = result.graph;
    CHECK(graph.num_nodes() == 2);
    CHECK(graph.kind_of(graph.id_of("A")) == NodeKind::Protein);
    CHECK(graph.edge_count(RelationKind::ProteinProtein) == 1);
    CHECK(graph.neighbors(graph.id_of("A"), GraphView::Moa) ==
          std::vector<NodeId>{graph.id_of("B")});
    CHECK(graph.neighbors(graph.id_of("B"), GraphView::Moa) ==
          std::vector<NodeId>{graph.id_of("A")});
}

TEST_CASE("duplicate file rows collapse to one edge") {
    const auto dp = write_file("dup.tsv", "d\tp\nd\tp\n");
    const auto result = load_graph({{dp, RelationKind::DrugProtein}});
    CHECK(result.graph.edge_count(RelationKind::DrugProtein) == 1);
    CHECK(result.rows_parsed == 2);
}

TEST_CASE("isolated node from node file: kept, empty neighborhoods") {
    const auto nodes = write_file("nodes.tsv",
                                  "lonely\tdisease\tLonely Disease\n"
                                  "d\tdrug\n"
                                  "p\tprotein\n");
    const auto dp = write_file("one.tsv", "d\tp\n");
    const auto result =
        load_graph({{dp, RelationKind::DrugProtein}}, nodes.c_str());
    const Graph& graph = result.graph;
    // node-file order fixes ids before edges arrive
    CHECK(graph.id_of("lonely") == 0);
    CHECK(graph.display_name(0) == "Lonely Disease");
    for (auto view : {GraphView::Moa, GraphView::Indication, GraphView::Full})
        CHECK(graph.neighbors(0, view).empty());
    CHECK(result.stats.degree_histogram[0] == 1);  // exactly one isolated node
}

TEST_CASE("loader errors") {
    SUBCASE("malformed row reports file and line") {
        const auto bad = write_file("bad.tsv", "a\tb\nonly-one-field\n");
        CHECK_THROWS_WITH_AS(load_graph({{bad, RelationKind::DrugProtein}}),
                             doctest::Contains("bad.tsv:2"), Error);
    }
    SUBCASE("kind conflict names the identifier") {
        const auto dp = write_file("kc_dp.tsv", "drugA\tprotB\n");
        const auto dd = write_file("kc_dd.tsv", "protB\tdisC\n");
        CHECK_THROWS_WITH_AS(load_graph({{dp, RelationKind::DrugProtein},
                                         {dd, RelationKind::DrugDisease}}),
                             doctest::Contains("protB"), Error);
    }
    SUBCASE("empty input") {
        const auto empty = write_file("empty.tsv", "");
        CHECK_THROWS_WITH_AS(load_graph({{empty, RelationKind::DrugProtein}}),
                             doctest::Contains("empty input"), Error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_graph({{"/nonexistent/x.tsv",
                                     RelationKind::DrugProtein}}),
                        Error);
    }
    SUBCASE("unknown node kind") {
        const auto nodes = write_file("badkind.tsv", "n\tgene\n");
        const auto dp = write_file("ok.tsv", "d\tp\n");
        CHECK_THROWS_WITH_AS(
            load_graph({{dp, RelationKind::DrugProtein}}, nodes.c_str()),
            doctest::Contains("gene"), Error);
    }
    SUBCASE("self-loops are dropped, not stored") {
        const auto pp = write_file("self.tsv", "A\tA\nA\tB\n");
        const auto result = load_graph({{pp, RelationKind::ProteinProtein}});
        CHECK(result.graph.edge_count(RelationKind::ProteinProtein) == 1);
        CHECK(result.self_loops_dropped == 1);
    }
}

TEST_CASE("comment lines and CRLF are tolerated") {
    const auto dp = write_file("comments.tsv",
                               "# header comment\r\nd\tp\r\n\n# tail\n");
    const auto result = load_graph({{dp, RelationKind::DrugProtein}});
    CHECK(result.graph.num_nodes() == 2);
    CHECK(result.graph.edge_count(RelationKind::DrugProtein) == 1);
}

TEST_CASE("stats of an empty graph are all zeros") {
    const GraphStats stats = Graph{}.stats();
    CHECK(stats.total_nodes() == 0);
    CHECK(stats.total_edges() == 0);
    CHECK(stats.degree_histogram.empty());
}

TEST_CASE("graph properties on a random instance") {
    const Graph graph = oracles::random_graph(12, 20, 8, 60, /*seed=*/7);

    SUBCASE("protein-protein symmetry") {
        for (NodeId v = 0; v < graph.num_nodes(); ++v)
            for (NodeId u : graph.neighbors(v, RelationKind::ProteinProtein)) {
                auto back = graph.neighbors(u, RelationKind::ProteinProtein);
                CHECK(std::binary_search(back.begin(), back.end(), v));
            }
    }
    SUBCASE("moa degree sum counts both endpoints of every edge") {
        std::uint64_t degree_sum = 0;
        for (NodeId v = 0; v < graph.num_nodes(); ++v)
            degree_sum += graph.degree(v, GraphView::Moa);
        CHECK(degree_sum ==
              2 * (graph.edge_count(RelationKind::ProteinProtein) +
                   graph.edge_count(RelationKind::DrugProtein)));
    }
    SUBCASE("full view is the union of moa and indication views") {
        for (NodeId v = 0; v < graph.num_nodes(); ++v) {
            auto moa = graph.neighbors(v, GraphView::Moa);
            auto ind = graph.neighbors(v, GraphView::Indication);
            std::vector<NodeId> expected(moa.size() + ind.size());
            std::merge(moa.begin(), moa.end(), ind.begin(), ind.end(),
                       expected.begin());
            expected.erase(std::unique(expected.begin(), expected.end()),
                           expected.end());
            CHECK(graph.neighbors(v, GraphView::Full) == expected);
        }
    }
    SUBCASE("histogram sums to node count") {
        const auto stats = graph.stats();
        std::uint64_t total = 0;
        for (auto count : stats.degree_histogram) total += count;
        CHECK(total == graph.num_nodes());
    }
}

TEST_CASE("cache round trip is identity") {
    const Graph graph = oracles::random_graph(10, 15, 6, 40, /*seed=*/3);
    const auto path = (scratch_dir() / "roundtrip.bin").string();
    save_graph_cache(graph, path);
    const Graph reloaded = load_graph_cache(path);
    CHECK(reloaded == graph);

    // serialize-load-serialize is stable too
    const auto path2 = (scratch_dir() / "roundtrip2.bin").string();
    save_graph_cache(reloaded, path2);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
}

TEST_CASE("cache rejects foreign or mismatched files") {
    const auto junk = write_file("junk.bin", "not a cache at all");
    CHECK_THROWS_WITH_AS(load_graph_cache(junk), doctest::Contains("magic"),
                         Error);

    const Graph graph = oracles::random_graph(3, 3, 3, 5, /*seed=*/1);
    const auto path = (scratch_dir() / "versioned.bin").string();
    save_graph_cache(graph, path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(4);
        const std::uint32_t wrong_version = 99;
        f.write(reinterpret_cast<const char*>(&wrong_version),
                sizeof(wrong_version));
    }
    CHECK_THROWS_WITH_AS(load_graph_cache(path), doctest::Contains("version"),
                         Error);

    // truncation
    const auto truncated = (scratch_dir() / "truncated.bin").string();
    {
        std::ifstream in(path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), {});
        bytes[4] = 1;  // restore version
        bytes.resize(bytes.size() / 2);
        std::ofstream out(truncated, std::ios::binary | std::ios::trunc);
        out << bytes;
    }
    CHECK_THROWS_WITH_AS(load_graph_cache(truncated),
                         doctest::Contains("truncated"), Error);
}

// Reference shape: 584 drugs x 16,546 proteins with 1,824,204 distinct
// interactions; the loader must report exactly these counts.
TEST_CASE("large bipartite load reports exact counts" * doctest::timeout(120)) {
    const std::uint32_t num_drugs = 584, num_proteins = 16546;
    const std::uint64_t num_edges = 1824204;
    const std::uint64_t base = num_edges / num_drugs;       // 3123
    const std::uint64_t remainder = num_edges % num_drugs;  // 372

    const auto path = (scratch_dir() / "large_dp.tsv").string();
    {
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        std::string line;
        for (std::uint32_t d = 0; d < num_drugs; ++d) {
            const std::uint64_t degree = base + (d < remainder ? 1 : 0);
            const std::uint32_t start = (d * 29u) % num_proteins;
            for (std::uint64_t j = 0; j < degree; ++j) {
                const std::uint32_t p =
                    static_cast<std::uint32_t>((start + j) % num_proteins);
                line = "D" + std::to_string(d) + "\tP" + std::to_string(p) +
                       "\n";
                out << line;
            }
        }
    }
    const auto result = load_graph({{path, RelationKind::DrugProtein}});
    CHECK(result.stats.nodes_per_kind[size_t(NodeKind::Drug)] == num_drugs);
    CHECK(result.stats.nodes_per_kind[size_t(NodeKind::Protein)] ==
          num_proteins);
    CHECK(result.stats.edges_per_relation[size_t(RelationKind::DrugProtein)] ==
          num_edges);
    std::error_code ec;
    fs::remove(path, ec);
}
