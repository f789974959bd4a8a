#include "relgraph/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "relgraph/rng.hpp"

namespace relgraph {

void SyntheticConfig::validate() const {
    if (communities < 2) throw Error("need at least 2 communities");
    if (drugs < communities || diseases < communities || proteins < communities)
        throw Error("each community needs at least one drug, disease and "
                    "protein");
    if (noise < 0.0 || noise > 1.0) throw Error("noise must be in [0, 1]");
    if (subgroups < 1) throw Error("subgroups per community must be >= 1");
    for (double density :
         {drug_protein_density, drug_disease_density, drug_disease_community,
          protein_protein_density, protein_bridge_density,
          shared_protein_fraction})
        if (density < 0.0 || density > 1.0)
            throw Error("densities must be in [0, 1]");
}

namespace {

struct BlockLayout {
    // block[c] = indices owned by community c, split into subgroup slices
    std::vector<std::vector<std::vector<std::uint32_t>>> block;
    std::vector<std::uint32_t> community_of;
    std::vector<std::uint32_t> subgroup_of;

    BlockLayout(std::uint32_t total, std::uint32_t communities,
                std::uint32_t subgroups) {
        community_of.resize(total);
        subgroup_of.resize(total);
        block.resize(communities);
        std::uint32_t next = 0;
        for (std::uint32_t c = 0; c < communities; ++c) {
            const std::uint32_t size =
                total / communities + (c < total % communities ? 1 : 0);
            const std::uint32_t groups = std::min(subgroups, std::max(1u, size));
            block[c].resize(groups);
            for (std::uint32_t i = 0; i < size; ++i, ++next) {
                const std::uint32_t g = i % groups;
                block[c][g].push_back(next);
                community_of[next] = c;
                subgroup_of[next] = g;
            }
        }
    }

    // all indices not in community c
    std::vector<std::uint32_t> outside(std::uint32_t c) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < community_of.size(); ++i)
            if (community_of[i] != c) out.push_back(i);
        return out;
    }
};

std::string node_name(char prefix, std::uint32_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%04u", prefix, index);
    return buf;
}

struct EdgeSet {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint64_t cross = 0;

    bool insert(std::uint32_t a, std::uint32_t b, bool is_cross) {
        const std::uint64_t key = (std::uint64_t{a} << 32) | b;
        if (!seen.insert(key).second) return false;
        edges.emplace_back(a, b);
        cross += is_cross;
        return true;
    }
};

}  // namespace

SyntheticSummary generate_synthetic(const SyntheticConfig& config,
                                    const std::string& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);

    const BlockLayout drugs(config.drugs, config.communities, config.subgroups);
    const BlockLayout diseases(config.diseases, config.communities,
                               config.subgroups);
    const BlockLayout proteins(config.proteins, config.communities,
                               config.subgroups);

    Rng rng(substream(config.seed, "synthetic"));

    // rewires the second endpoint outside the community with prob noise
    auto maybe_rewire = [&](const BlockLayout& layout, std::uint32_t community,
                            std::uint32_t& endpoint) -> bool {
        if (config.noise > 0.0 && rng.uniform() < config.noise) {
            const auto foreign = layout.outside(community);
            if (!foreign.empty()) {
                endpoint = foreign[rng.bounded(foreign.size())];
                return true;
            }
        }
        return false;
    };

    EdgeSet drug_protein, drug_disease, protein_protein;

    for (std::uint32_t drug = 0; drug < config.drugs; ++drug) {
        const std::uint32_t community = drugs.community_of[drug];
        const std::uint32_t subgroup = drugs.subgroup_of[drug];
        const auto& protein_block =
            proteins.block[community][subgroup % proteins.block[community].size()];
        for (std::uint32_t protein : protein_block) {
            if (rng.uniform() >= config.drug_protein_density) continue;
            std::uint32_t target = protein;
            const bool cross = maybe_rewire(proteins, community, target);
            drug_protein.insert(drug, target, cross);
        }
        const auto& disease_blocks = diseases.block[community];
        for (std::uint32_t g = 0; g < disease_blocks.size(); ++g) {
            const double density = g == subgroup % disease_blocks.size()
                                       ? config.drug_disease_density
                                       : config.drug_disease_community;
            for (std::uint32_t disease : disease_blocks[g]) {
                if (rng.uniform() >= density) continue;
                std::uint32_t target = disease;
                const bool cross = maybe_rewire(diseases, community, target);
                drug_disease.insert(drug, target, cross);
            }
        }
    }

    for (std::uint32_t c = 0; c < config.communities; ++c) {
        const auto& groups = proteins.block[c];
        for (std::uint32_t g = 0; g < groups.size(); ++g) {
            for (std::size_t i = 0; i < groups[g].size(); ++i) {
                for (std::size_t j = i + 1; j < groups[g].size(); ++j) {
                    if (rng.uniform() >= config.protein_protein_density)
                        continue;
                    std::uint32_t target = groups[g][j];
                    const bool cross = maybe_rewire(proteins, c, target);
                    const auto a = std::min(groups[g][i], target);
                    const auto b = std::max(groups[g][i], target);
                    if (a != b) protein_protein.insert(a, b, cross);
                }
            }
            // bridges keep the community connected across subgroups
            for (std::uint32_t h = g + 1; h < groups.size(); ++h) {
                for (std::uint32_t p : groups[g]) {
                    for (std::uint32_t q : groups[h]) {
                        if (rng.uniform() >= config.protein_bridge_density)
                            continue;
                        protein_protein.insert(std::min(p, q), std::max(p, q),
                                               false);
                    }
                }
            }
        }
    }

    // anchor proteins wired to drugs of the next community
    std::vector<std::uint32_t> shared;
    const auto shared_count = static_cast<std::uint32_t>(
        config.shared_protein_fraction * config.proteins);
    for (std::uint32_t s = 0; s < shared_count; ++s) {
        const std::uint32_t protein =
            static_cast<std::uint32_t>(rng.bounded(config.proteins));
        const std::uint32_t home = proteins.community_of[protein];
        const std::uint32_t other = (home + 1) % config.communities;
        bool linked = false;
        for (std::uint32_t d = 0; d < config.shared_protein_drugs; ++d) {
            std::uint32_t pick = 0, members = 0;
            for (const auto& group : drugs.block[other]) members += group.size();
            if (members == 0) break;
            pick = static_cast<std::uint32_t>(rng.bounded(members));
            for (const auto& group : drugs.block[other]) {
                if (pick < group.size()) {
                    linked |= drug_protein.insert(group[pick], protein, true);
                    break;
                }
                pick -= group.size();
            }
        }
        if (linked) shared.push_back(protein);
    }
    std::sort(shared.begin(), shared.end());
    shared.erase(std::unique(shared.begin(), shared.end()), shared.end());

    // --- write artifacts ---
    namespace fs = std::filesystem;
    SyntheticSummary summary;
    summary.nodes_path = (fs::path(out_dir) / "nodes.tsv").string();
    summary.drug_protein_path =
        (fs::path(out_dir) / "drug_protein.tsv").string();
    summary.drug_disease_path =
        (fs::path(out_dir) / "drug_disease.tsv").string();
    summary.protein_protein_path =
        (fs::path(out_dir) / "protein_protein.tsv").string();
    summary.manifest_path = (fs::path(out_dir) / "manifest.json").string();

    auto open = [](const std::string& path) {
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        if (!out) throw Error("cannot write: " + path);
        return out;
    };

    {
        auto out = open(summary.nodes_path);
        for (std::uint32_t d = 0; d < config.drugs; ++d)
            out << node_name('D', d) << "\tdrug\n";
        for (std::uint32_t p = 0; p < config.proteins; ++p)
            out << node_name('P', p) << "\tprotein\n";
        for (std::uint32_t x = 0; x < config.diseases; ++x)
            out << node_name('X', x) << "\tdisease\n";
    }
    {
        auto out = open(summary.drug_protein_path);
        for (const auto& [d, p] : drug_protein.edges)
            out << node_name('D', d) << '\t' << node_name('P', p) << '\n';
    }
    {
        auto out = open(summary.drug_disease_path);
        for (const auto& [d, x] : drug_disease.edges)
            out << node_name('D', d) << '\t' << node_name('X', x) << '\n';
    }
    {
        auto out = open(summary.protein_protein_path);
        for (const auto& [p, q] : protein_protein.edges)
            out << node_name('P', p) << '\t' << node_name('P', q) << '\n';
    }

    summary.node_counts = {config.drugs, config.proteins, config.diseases};
    summary.edge_counts = {drug_protein.edges.size(), drug_disease.edges.size(),
                           protein_protein.edges.size()};
    summary.cross_community_edges = {drug_protein.cross, drug_disease.cross,
                                     protein_protein.cross};

    nlohmann::ordered_json manifest;
    manifest["format_version"] = 1;
    manifest["seed"] = config.seed;
    manifest["params"] = {
        {"drugs", config.drugs},
        {"diseases", config.diseases},
        {"proteins", config.proteins},
        {"communities", config.communities},
        {"noise", config.noise},
        {"subgroups", config.subgroups},
        {"drug_protein_density", config.drug_protein_density},
        {"drug_disease_density", config.drug_disease_density},
        {"drug_disease_community", config.drug_disease_community},
        {"protein_protein_density", config.protein_protein_density},
        {"protein_bridge_density", config.protein_bridge_density},
        {"shared_protein_fraction", config.shared_protein_fraction},
        {"shared_protein_drugs", config.shared_protein_drugs},
    };
    manifest["counts"] = {
        {"nodes",
         {{"drug", config.drugs},
          {"protein", config.proteins},
          {"disease", config.diseases}}},
        {"edges",
         {{"drug_protein", drug_protein.edges.size()},
          {"drug_disease", drug_disease.edges.size()},
          {"protein_protein", protein_protein.edges.size()}}},
        {"cross_community_edges",
         {{"drug_protein", drug_protein.cross},
          {"drug_disease", drug_disease.cross},
          {"protein_protein", protein_protein.cross}}},
    };
    manifest["files"] = {
        {"nodes", "nodes.tsv"},
        {"drug_protein", "drug_protein.tsv"},
        {"drug_disease", "drug_disease.tsv"},
        {"protein_protein", "protein_protein.tsv"},
    };
    auto node_entry = [](const std::string& id, const char* kind,
                         std::uint32_t community, std::uint32_t subgroup) {
        return nlohmann::ordered_json{{"id", id},
                                      {"kind", kind},
                                      {"community", community},
                                      {"subgroup", subgroup}};
    };
    auto& nodes = manifest["nodes"] = nlohmann::ordered_json::array();
    for (std::uint32_t d = 0; d < config.drugs; ++d)
        nodes.push_back(node_entry(node_name('D', d), "drug",
                                   drugs.community_of[d], drugs.subgroup_of[d]));
    for (std::uint32_t p = 0; p < config.proteins; ++p)
        nodes.push_back(node_entry(node_name('P', p), "protein",
                                   proteins.community_of[p],
                                   proteins.subgroup_of[p]));
    for (std::uint32_t x = 0; x < config.diseases; ++x)
        nodes.push_back(node_entry(node_name('X', x), "disease",
                                   diseases.community_of[x],
                                   diseases.subgroup_of[x]));
    auto& shared_json = manifest["shared_proteins"] =
        nlohmann::ordered_json::array();
    for (std::uint32_t p : shared) shared_json.push_back(node_name('P', p));

    {
        auto out = open(summary.manifest_path);
        out << manifest.dump(2) << '\n';
    }
    return summary;
}

}  // namespace relgraph
