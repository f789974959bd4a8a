#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "relgraph/metrics.hpp"

using namespace relgraph;

namespace {

std::pair<std::vector<double>, std::vector<std::uint8_t>> random_instance(
    Rng& rng, std::size_t max_n = 200) {
    const std::size_t n = 2 + rng.bounded(max_n - 1);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        // quantized scores provoke plenty of ties
        scores[i] = static_cast<double>(rng.bounded(20)) / 10.0;
        labels[i] = static_cast<std::uint8_t>(rng.bounded(2));
    }
    labels[0] = 1;  // guarantee both classes
    labels[1] = 0;
    return {std::move(scores), std::move(labels)};
}

}  // namespace

TEST_CASE("auroc basics") {
    SUBCASE("perfect separation scores one") {
        CHECK(auroc(std::vector<double>{0.9, 0.1},
                    std::vector<std::uint8_t>{1, 0}) == 1.0);
    }
    SUBCASE("all ties score one half") {
        CHECK(auroc(std::vector<double>{0.4, 0.4, 0.4, 0.4},
                    std::vector<std::uint8_t>{1, 0, 1, 0}) == 0.5);
    }
    SUBCASE("single-class input is rejected") {
        CHECK_THROWS_AS(auroc(std::vector<double>{0.1, 0.2},
                              std::vector<std::uint8_t>{1, 1}),
                        Error);
    }
}

TEST_CASE("auroc equals brute-force pair counting on 200 random instances") {
    Rng rng(2025);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [scores, labels] = random_instance(rng);
        const double fast = auroc(scores, labels);
        const double brute = oracles::pair_count_auroc(scores, labels);
        CHECK(std::abs(fast - brute) <= 1e-12);
    }
}

TEST_CASE("auroc rank invariances") {
    Rng rng(515);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [scores, labels] = random_instance(rng, 60);
        const double base = auroc(scores, labels);

        // strictly increasing transforms preserve the ranking exactly
        std::vector<double> transformed(scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i)
            transformed[i] = std::exp(scores[i]) * 3.0 + 1.0;
        CHECK(auroc(transformed, labels) == base);

        std::vector<std::uint8_t> flipped(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            flipped[i] = labels[i] ? 0 : 1;
        CHECK(base + auroc(scores, flipped) == 1.0);
    }
}

TEST_CASE("roc curve") {
    SUBCASE("one positive above one negative walks the left and top edges") {
        const auto roc = roc_curve(std::vector<double>{0.8, 0.2},
                                   std::vector<std::uint8_t>{1, 0});
        REQUIRE(roc.curve.size() == 3);
        CHECK(roc.curve[0] == std::pair{0.0, 0.0});
        CHECK(roc.curve[1] == std::pair{0.0, 1.0});
        CHECK(roc.curve[2] == std::pair{1.0, 1.0});
        CHECK(roc.auroc == 1.0);
    }
    SUBCASE("flipping labels mirrors the area") {
        Rng rng(99);
        const auto [scores, labels] = random_instance(rng, 80);
        std::vector<std::uint8_t> flipped(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            flipped[i] = labels[i] ? 0 : 1;
        CHECK(roc_curve(scores, labels).auroc +
                  roc_curve(scores, flipped).auroc ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("curve is monotone from (0,0) to (1,1); area matches rank auroc") {
        Rng rng(31337);
        for (int trial = 0; trial < 200; ++trial) {
            const auto [scores, labels] = random_instance(rng);
            const auto roc = roc_curve(scores, labels);
            REQUIRE(roc.curve.size() >= 2);
            CHECK(roc.curve.front() == std::pair{0.0, 0.0});
            CHECK(roc.curve.back() == std::pair{1.0, 1.0});
            for (std::size_t i = 1; i < roc.curve.size(); ++i) {
                CHECK(roc.curve[i].first >= roc.curve[i - 1].first);
                CHECK(roc.curve[i].second >= roc.curve[i - 1].second);
            }
            CHECK(std::abs(roc.auroc - auroc(scores, labels)) <= 1e-12);
        }
    }
}

TEST_CASE("cross validation") {
    // embedding table engineered so drug row sign equals the label when
    // paired with the right disease: community c drugs pair with community c
    // diseases positively, across communities negatively
    EmbeddingTable table;
    table.dim = 1;
    const std::size_t drugs = 20, diseases = 20;
    table.input.resize(drugs + diseases);
    table.output.assign(drugs + diseases, 0.0f);
    table.names.resize(drugs + diseases);
    Rng rng(7);
    for (std::size_t i = 0; i < drugs + diseases; ++i) {
        const bool first_half = (i % 20) < 10;
        table.input[i] = (first_half ? 1.0f : -1.0f) *
                         static_cast<float>(0.5 + rng.uniform());
    }

    std::vector<LinkExample> examples;
    Rng pick(13);
    for (std::uint32_t i = 0; i < 200; ++i) {
        const auto drug = static_cast<NodeId>(pick.bounded(drugs));
        const auto disease =
            static_cast<NodeId>(drugs + pick.bounded(diseases));
        // both-positive pairs are links; the rule is linearly separable
        const bool positive =
            table.input[drug] > 0 && table.input[disease] > 0;
        examples.push_back({drug, disease, positive, i % 5});
    }

    MlpConfig config;
    config.hidden = 8;
    config.epochs = 300;
    config.batch_size = 32;
    config.learning_rate = 0.5;
    config.seed = 2;

    std::vector<RocResult> rocs;
    const auto report = cross_validate(examples, table, config, &rocs);
    REQUIRE(report.fold_auroc.size() == 5);
    REQUIRE(rocs.size() == 5);
    double mean = 0;
    for (double a : report.fold_auroc) {
        CHECK(a == 1.0);  // separable in every fold
        mean += a;
    }
    CHECK(report.mean == doctest::Approx(mean / 5.0));
    CHECK(report.stddev == doctest::Approx(0.0));

    SUBCASE("a fold lacking one class is rejected") {
        std::vector<LinkExample> broken = examples;
        for (auto& example : broken)
            if (example.fold == 2) example.label = 1;
        CHECK_THROWS_AS(cross_validate(broken, table, config), Error);
    }
    SUBCASE("csv reports") {
        namespace fs = std::filesystem;
        const auto dir = fs::temp_directory_path();
        const auto cv_path = (dir / "relgraph-cv.csv").string();
        const auto roc_path = (dir / "relgraph-roc.csv").string();
        write_cv_csv(cv_path, report);
        write_roc_csv(roc_path, rocs[0]);
        std::ifstream cv(cv_path);
        std::string line;
        std::getline(cv, line);
        CHECK(line == "fold,auroc");
        std::size_t rows = 0;
        while (std::getline(cv, line)) ++rows;
        CHECK(rows == 7);  // 5 folds + mean + stddev
        std::ifstream roc(roc_path);
        std::getline(roc, line);
        CHECK(line == "fpr,tpr");
    }
}
