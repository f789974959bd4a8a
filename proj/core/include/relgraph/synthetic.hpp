#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "relgraph/types.hpp"

namespace relgraph {

// Planted-structure benchmark generator. Every community owns disjoint
// blocks of drugs, diseases and mediator proteins, further split into
// subgroups; drugs link densely to their subgroup's proteins and diseases.
// Each generated edge is rewired across communities with probability
// `noise`, and a small set of proteins is additionally wired to drugs of a
// neighboring community. Output is byte-identical per seed.
struct SyntheticConfig {
    std::uint32_t drugs = 60;
    std::uint32_t diseases = 50;
    std::uint32_t proteins = 300;
    std::uint32_t communities = 4;
    double noise = 0.05;
    std::uint64_t seed = 42;

    std::uint32_t subgroups = 2;             // per community
    double drug_protein_density = 0.5;       // within subgroup
    double drug_disease_density = 0.85;      // within subgroup
    double drug_disease_community = 0.08;    // same community, other subgroup
    double protein_protein_density = 0.10;   // within subgroup
    double protein_bridge_density = 0.02;    // same community, other subgroup
    double shared_protein_fraction = 0.05;   // wired into the next community
    std::uint32_t shared_protein_drugs = 2;  // foreign drugs per shared protein

    void validate() const;
};

struct SyntheticSummary {
    std::array<std::uint64_t, kNumNodeKinds> node_counts{};
    std::array<std::uint64_t, kNumRelations> edge_counts{};
    std::array<std::uint64_t, kNumRelations> cross_community_edges{};
    std::string nodes_path;
    std::string drug_protein_path;
    std::string drug_disease_path;
    std::string protein_protein_path;
    std::string manifest_path;
};

// Writes nodes.tsv, drug_protein.tsv, drug_disease.tsv, protein_protein.tsv
// and manifest.json (ground-truth community of every node, exact counts)
// into out_dir, creating it if needed.
SyntheticSummary generate_synthetic(const SyntheticConfig& config,
                                    const std::string& out_dir);

}  // namespace relgraph
