#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "oracles.hpp"
#include "relgraph/sampler.hpp"

using namespace relgraph;

namespace {

// star: hub protein linked to `leaves` drugs
Graph star_graph(std::uint32_t leaves) {
    GraphBuilder builder;
    for (std::uint32_t i = 0; i < leaves; ++i)
        builder.add_edge("d" + std::to_string(i), "hub",
                         RelationKind::DrugProtein);
    return builder.build();
}

Graph path_graph_ab() {
    GraphBuilder builder;
    builder.add_edge("a", "b", RelationKind::ProteinProtein);
    return builder.build();
}

Graph cycle_graph(std::uint32_t n) {
    GraphBuilder builder;
    for (std::uint32_t i = 0; i < n; ++i)
        builder.add_edge("p" + std::to_string(i),
                         "p" + std::to_string((i + 1) % n),
                         RelationKind::ProteinProtein);
    return builder.build();
}

}  // namespace

TEST_CASE("nbne: zero-degree nodes emit nothing, empty view yields nothing") {
    GraphBuilder builder;
    builder.add_node("alone", NodeKind::Drug);
    builder.add_edge("a", "b", RelationKind::ProteinProtein);
    const Graph graph = builder.build();

    const auto groups = nbne_groups(graph, GraphView::Moa, 3, 5, 1);
    for (const auto& group : groups)
        CHECK(group.front() != graph.id_of("alone"));
    // the indication view has no edges at all
    CHECK(nbne_groups(graph, GraphView::Indication, 3, 5, 1).empty());
}

TEST_CASE("nbne: three neighbors with group size 3 give one full group") {
    GraphBuilder builder;
    for (const char* p : {"a", "b", "c"})
        builder.add_edge("v", p, RelationKind::DrugProtein);
    const Graph graph = builder.build();
    const NodeId v = graph.id_of("v");

    auto groups = nbne_groups(graph, GraphView::Moa, 3, 1, 9);
    // one group rooted at v...
    std::vector<ContextGroup> rooted;
    for (auto& g : groups)
        if (g.front() == v) rooted.push_back(g);
    REQUIRE(rooted.size() == 1);
    REQUIRE(rooted[0].size() == 4);
    // ...containing exactly the neighborhood, root first
    std::set<NodeId> members(rooted[0].begin() + 1, rooted[0].end());
    CHECK(members == std::set<NodeId>{graph.id_of("a"), graph.id_of("b"),
                                      graph.id_of("c")});
}

TEST_CASE("nbne: 5 neighbors, slices of 2, 30 permutations -> 90 groups") {
    GraphBuilder builder;
    for (int i = 0; i < 5; ++i)
        builder.add_edge("v", "n" + std::to_string(i),
                         RelationKind::DrugProtein);
    const Graph graph = builder.build();
    const NodeId v = graph.id_of("v");

    const auto groups = nbne_groups(graph, GraphView::Moa, 2, 30, 4);
    std::size_t rooted = 0;
    std::map<NodeId, int> appearances;
    for (const auto& group : groups) {
        if (group.front() != v) continue;
        ++rooted;
        CHECK(group.size() <= 3);  // root + at most 2 neighbors
        for (std::size_t i = 1; i < group.size(); ++i) ++appearances[group[i]];
    }
    // ceil(5/2) = 3 slices per permutation
    CHECK(rooted == 90);
    for (int i = 0; i < 5; ++i) {
        INFO("neighbor n" << i);
        CHECK(appearances[graph.id_of("n" + std::to_string(i))] == 30);
    }
}

TEST_CASE("nbne properties on a random graph") {
    const Graph graph = oracles::random_graph(10, 14, 8, 50, /*seed=*/11);
    const std::uint32_t group_size = 3, permutations = 7;
    const auto groups =
        nbne_groups(graph, GraphView::Full, group_size, permutations, 99);

    SUBCASE("members are neighbors of the root; size bounded by k+1") {
        for (const auto& group : groups) {
            REQUIRE(group.size() >= 2);
            CHECK(group.size() <= group_size + 1);
            const auto ns = graph.neighbors(group.front(), GraphView::Full);
            for (std::size_t i = 1; i < group.size(); ++i)
                CHECK(std::binary_search(ns.begin(), ns.end(), group[i]));
        }
    }
    SUBCASE("each neighbor appears exactly once per permutation") {
        // groups for one root arrive consecutively, permutation by permutation
        std::size_t cursor = 0;
        for (NodeId v = 0; v < graph.num_nodes(); ++v) {
            const auto ns = graph.neighbors(v, GraphView::Full);
            if (ns.empty()) continue;
            const std::size_t slices =
                (ns.size() + group_size - 1) / group_size;
            for (std::uint32_t round = 0; round < permutations; ++round) {
                std::vector<NodeId> emitted;
                for (std::size_t s = 0; s < slices; ++s, ++cursor) {
                    REQUIRE(cursor < groups.size());
                    REQUIRE(groups[cursor].front() == v);
                    emitted.insert(emitted.end(), groups[cursor].begin() + 1,
                                   groups[cursor].end());
                }
                std::sort(emitted.begin(), emitted.end());
                CHECK(emitted == std::vector<NodeId>(ns.begin(), ns.end()));
            }
        }
        CHECK(cursor == groups.size());
    }
    SUBCASE("fixed seed reproduces bitwise, fresh seed reshuffles") {
        CHECK(groups == nbne_groups(graph, GraphView::Full, group_size,
                                    permutations, 99));
        CHECK(groups != nbne_groups(graph, GraphView::Full, group_size,
                                    permutations, 100));
    }
}

TEST_CASE("deepwalk: degree-1 endpoints force an alternating path walk") {
    const Graph graph = path_graph_ab();
    const NodeId a = graph.id_of("a"), b = graph.id_of("b");
    const auto walks = deepwalk_walks(graph, GraphView::Moa, 1, 5, 21);
    REQUIRE(walks.size() == 2);
    CHECK(walks[a == 0 ? 0 : 1] == ContextGroup{a, b, a, b, a});
    CHECK(walks[a == 0 ? 1 : 0] == ContextGroup{b, a, b, a, b});
}

TEST_CASE("deepwalk: isolated nodes emit no walks; starts and lengths hold") {
    GraphBuilder builder;
    builder.add_node("alone", NodeKind::Protein);
    builder.add_edge("a", "b", RelationKind::ProteinProtein);
    builder.add_edge("b", "c", RelationKind::ProteinProtein);
    const Graph graph = builder.build();

    const std::uint32_t num_walks = 4, walk_length = 9;
    const auto walks =
        deepwalk_walks(graph, GraphView::Moa, num_walks, walk_length, 5);
    CHECK(walks.size() == 3 * num_walks);  // three connected nodes
    for (const auto& walk : walks) {
        CHECK(walk.front() != graph.id_of("alone"));
        CHECK(walk.size() <= walk_length);
        for (std::size_t i = 1; i < walk.size(); ++i) {
            const auto ns = graph.neighbors(walk[i - 1], GraphView::Moa);
            CHECK(std::binary_search(ns.begin(), ns.end(), walk[i]));
        }
    }
}

TEST_CASE("deepwalk: uniform next-step frequencies on a star") {
    const Graph graph = star_graph(4);
    const NodeId hub = graph.id_of("hub");
    const auto walks = deepwalk_walks(graph, GraphView::Moa, 1000, 2, 2025);
    std::map<NodeId, int> second;
    int hub_walks = 0;
    for (const auto& walk : walks) {
        if (walk.front() != hub) continue;
        ++hub_walks;
        REQUIRE(walk.size() == 2);
        ++second[walk[1]];
    }
    REQUIRE(hub_walks == 1000);
    for (const auto& [leaf, count] : second) {
        INFO("leaf " << leaf << " count " << count);
        CHECK(count >= 238);  // 250 +- 5%
        CHECK(count <= 262);
    }
}

TEST_CASE("node2vec with neutral biases matches deepwalk statistically") {
    const Graph graph = star_graph(4);
    const NodeId hub = graph.id_of("hub");
    // different RNG disciplines -> compare distributions, not sequences
    auto histogram = [&](const std::vector<ContextGroup>& walks) {
        std::map<NodeId, double> freq;
        double total = 0;
        for (const auto& walk : walks) {
            if (walk.front() != hub || walk.size() < 2) continue;
            freq[walk[1]] += 1;
            total += 1;
        }
        for (auto& [node, f] : freq) f /= total;
        return freq;
    };
    const auto uniform =
        histogram(deepwalk_walks(graph, GraphView::Moa, 4000, 2, 31));
    const auto neutral = histogram(
        node2vec_walks(graph, GraphView::Moa, 4000, 2, 1.0, 1.0, 32));
    REQUIRE(uniform.size() == 4);
    REQUIRE(neutral.size() == 4);
    for (const auto& [leaf, f] : neutral) {
        CHECK(f == doctest::Approx(0.25).epsilon(0.10));
        CHECK(uniform.at(leaf) == doctest::Approx(f).epsilon(0.10));
    }
}

TEST_CASE("node2vec: huge biases forbid returns on a triangle") {
    const Graph graph = cycle_graph(3);
    const auto walks =
        node2vec_walks(graph, GraphView::Moa, 5, 400, 1e12, 1e12, 77);
    for (const auto& walk : walks)
        for (std::size_t i = 2; i < walk.size(); ++i)
            CHECK(walk[i] != walk[i - 2]);  // never steps back
}

TEST_CASE("node2vec: return frequency on a 4-cycle matches the bias weights") {
    // from t -> v the candidates are t (weight 1/p = 4) and the opposite
    // corner (not adjacent to t, weight 1/q = 0.25): return probability
    // 4 / 4.25
    const double expected = 4.0 / 4.25;
    const Graph graph = cycle_graph(4);
    const auto walks =
        node2vec_walks(graph, GraphView::Moa, 1, 10002, 0.25, 4.0, 123);
    std::uint64_t returns = 0, steps = 0;
    for (const auto& walk : walks)
        for (std::size_t i = 2; i < walk.size(); ++i) {
            ++steps;
            returns += walk[i] == walk[i - 2];
        }
    REQUIRE(steps >= 10000);
    const double observed =
        static_cast<double>(returns) / static_cast<double>(steps);
    CHECK(observed == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("sampler config validation") {
    SamplerConfig config;
    config.group_size = 0;
    CHECK_THROWS_AS(config.validate(), Error);
    config = {};
    config.walk_length = 1;
    CHECK_THROWS_AS(config.validate(), Error);
    config = {};
    config.return_bias = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("corpus dump: one group per line, external ids") {
    const Graph graph = star_graph(2);
    const auto groups = nbne_groups(graph, GraphView::Moa, 2, 1, 3);
    const auto path =
        (std::filesystem::temp_directory_path() / "relgraph-corpus.txt")
            .string();
    dump_corpus(groups, graph, path);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(line.find(' ') != std::string::npos);
    }
    CHECK(lines == groups.size());
}
