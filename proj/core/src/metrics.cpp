#include "relgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "relgraph/rng.hpp"

namespace relgraph {

namespace {

void check_classes(std::span<const std::uint8_t> labels) {
    bool has_pos = false, has_neg = false;
    for (auto label : labels) (label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw Error("AUROC undefined: need both classes present");
}

}  // namespace

double auroc(std::span<const double> scores,
             std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size())
        throw Error("scores/labels length mismatch");
    if (scores.empty()) throw Error("empty score vector");
    check_classes(labels);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    // tie groups share the average rank; halves are exact in binary
    double positive_rank_sum = 0.0;
    std::uint64_t positives = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]]) {
                positive_rank_sum += avg_rank;
                ++positives;
            }
        }
        i = j;
    }
    const std::uint64_t negatives = order.size() - positives;
    const double u_statistic =
        positive_rank_sum -
        0.5 * static_cast<double>(positives) * static_cast<double>(positives + 1);
    return u_statistic /
           (static_cast<double>(positives) * static_cast<double>(negatives));
}

RocResult roc_curve(std::span<const double> scores,
                    std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size())
        throw Error("scores/labels length mismatch");
    if (scores.empty()) throw Error("empty score vector");
    check_classes(labels);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    std::uint64_t total_pos = 0;
    for (auto label : labels) total_pos += label;
    const std::uint64_t total_neg = labels.size() - total_pos;

    RocResult result;
    result.curve.emplace_back(0.0, 0.0);
    std::uint64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]]) ++tp; else ++fp;
        }
        result.curve.emplace_back(
            static_cast<double>(fp) / static_cast<double>(total_neg),
            static_cast<double>(tp) / static_cast<double>(total_pos));
        i = j;
    }
    double area = 0.0;
    for (std::size_t p = 1; p < result.curve.size(); ++p) {
        const auto& [x0, y0] = result.curve[p - 1];
        const auto& [x1, y1] = result.curve[p];
        area += (x1 - x0) * 0.5 * (y0 + y1);
    }
    result.auroc = area;
    return result;
}

std::pair<Matrix, std::vector<std::uint8_t>> build_features(
    std::span<const LinkExample> examples, const EmbeddingTable& table) {
    Matrix features(examples.size(), 2 * std::size_t{table.dim});
    std::vector<std::uint8_t> labels(examples.size());
    for (std::size_t r = 0; r < examples.size(); ++r) {
        const auto& example = examples[r];
        if (example.drug >= table.rows() || example.disease >= table.rows())
            throw Error("example node id outside embedding table");
        auto row = features.row(r);
        auto drug_row = table.input_row(example.drug);
        auto disease_row = table.input_row(example.disease);
        for (std::uint32_t i = 0; i < table.dim; ++i) {
            row[i] = drug_row[i];
            row[table.dim + i] = disease_row[i];
        }
        labels[r] = example.label;
    }
    return {std::move(features), std::move(labels)};
}

CvReport cross_validate(std::span<const LinkExample> examples,
                        const EmbeddingTable& table, const MlpConfig& config,
                        std::vector<RocResult>* fold_rocs) {
    const std::uint32_t folds = fold_count(examples);
    if (folds < 2) throw Error("cross-validation needs at least 2 folds");

    CvReport report;
    if (fold_rocs) fold_rocs->clear();
    for (std::uint32_t fold = 0; fold < folds; ++fold) {
        std::vector<LinkExample> train_set, valid_set;
        for (const auto& example : examples)
            (example.fold == fold ? valid_set : train_set).push_back(example);
        if (train_set.empty() || valid_set.empty())
            throw Error("fold " + std::to_string(fold) + " is empty");

        auto [train_features, train_labels] = build_features(train_set, table);
        MlpConfig fold_config = config;
        // fresh initialization per fold, no warm start
        fold_config.seed = substream(config.seed, "cv-fold", fold);
        const MlpModel model =
            train_mlp(train_features, train_labels, fold_config);

        auto [valid_features, valid_labels] = build_features(valid_set, table);
        std::vector<double> scores(valid_set.size());
        for (std::size_t r = 0; r < valid_set.size(); ++r)
            scores[r] = predict_proba(model, valid_features.row(r));
        report.fold_auroc.push_back(auroc(scores, valid_labels));
        if (fold_rocs) fold_rocs->push_back(roc_curve(scores, valid_labels));
    }

    report.mean =
        std::accumulate(report.fold_auroc.begin(), report.fold_auroc.end(), 0.0) /
        static_cast<double>(report.fold_auroc.size());
    double variance = 0.0;
    for (double a : report.fold_auroc)
        variance += (a - report.mean) * (a - report.mean);
    report.stddev =
        std::sqrt(variance / static_cast<double>(report.fold_auroc.size()));
    return report;
}

void write_roc_csv(const std::string& path, const RocResult& roc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write ROC curve: " + path);
    out << "fpr,tpr\n";
    out.precision(10);
    for (const auto& [fpr, tpr] : roc.curve) out << fpr << ',' << tpr << '\n';
    if (!out) throw Error("write failed: " + path);
}

void write_cv_csv(const std::string& path, const CvReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write CV report: " + path);
    out << "fold,auroc\n";
    out.precision(10);
    for (std::size_t f = 0; f < report.fold_auroc.size(); ++f)
        out << f << ',' << report.fold_auroc[f] << '\n';
    out << "mean," << report.mean << '\n';
    out << "stddev," << report.stddev << '\n';
    if (!out) throw Error("write failed: " + path);
}

}  // namespace relgraph
