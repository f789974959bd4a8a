#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relgraph/embedding.hpp"
#include "relgraph/link_dataset.hpp"
#include "relgraph/mlp.hpp"

namespace relgraph {

// Rank-statistic AUROC: probability that a random positive outranks a random
// negative, ties counted 1/2 (Mann-Whitney normalization). Both classes must
// be present.
double auroc(std::span<const double> scores,
             std::span<const std::uint8_t> labels);

struct RocResult {
    double auroc = 0.0;
    // (false-positive rate, true-positive rate), from (0,0) to (1,1),
    // both coordinates non-decreasing
    std::vector<std::pair<double, double>> curve;
};

// Threshold sweep over distinct score values; the trapezoidal area of the
// curve equals the rank-statistic AUROC.
RocResult roc_curve(std::span<const double> scores,
                    std::span<const std::uint8_t> labels);

struct CvReport {
    std::vector<double> fold_auroc;
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation over folds
};

// For each fold f: train a fresh classifier on every example with fold != f,
// score the examples with fold == f, compute AUROC. Per-fold training seeds
// derive from config.seed. Optionally returns per-fold ROC curves.
CvReport cross_validate(std::span<const LinkExample> examples,
                        const EmbeddingTable& table, const MlpConfig& config,
                        std::vector<RocResult>* fold_rocs = nullptr);

void write_roc_csv(const std::string& path, const RocResult& roc);
void write_cv_csv(const std::string& path, const CvReport& report);

// Feature matrix + labels for a set of examples (concatenated embeddings).
std::pair<Matrix, std::vector<std::uint8_t>> build_features(
    std::span<const LinkExample> examples, const EmbeddingTable& table);

}  // namespace relgraph
