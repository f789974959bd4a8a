#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relgraph/types.hpp"

namespace relgraph {

// Row-major double matrix, used for classifier features.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * cols, cols};
    }
};

struct MlpConfig {
    std::uint32_t hidden = 64;
    std::uint32_t epochs = 50;
    std::uint32_t batch_size = 128;
    double learning_rate = 0.01;
    std::uint64_t seed = 1;

    void validate() const;
};

// One rectifier hidden layer, logistic output, trained on binary
// cross-entropy. Inference is read-only and thread-safe.
struct MlpModel {
    std::uint32_t input_dim = 0;
    std::uint32_t hidden = 0;
    std::vector<double> w1;  // hidden x input_dim
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // hidden
    double b2 = 0.0;

    double logit(std::span<const double> feature) const;
};

// Fan-balanced uniform weights, zero biases.
MlpModel init_mlp(std::uint32_t input_dim, const MlpConfig& config);

// Mini-batch gradient descent with seeded shuffling, fixed epoch count.
// Requires both classes present and finite features.
MlpModel train_mlp(const Matrix& features, std::span<const std::uint8_t> labels,
                   const MlpConfig& config);

// Logistic of the output unit, clamped into (0, 1).
double predict_proba(const MlpModel& model, std::span<const double> feature);

// Mean binary cross-entropy, computed from logits for stability.
double mlp_loss(const MlpModel& model, const Matrix& features,
                std::span<const std::uint8_t> labels);

// Max relative error between backprop and central finite differences over
// every parameter of the single-example loss.
double mlp_gradient_check(const MlpModel& model, std::span<const double> feature,
                          std::uint8_t label, double step = 1e-5);

// Versioned binary round trip, bit-exact.
void save_mlp(const MlpModel& model, const std::string& path);
MlpModel load_mlp(const std::string& path);

inline constexpr std::uint32_t kMlpBinaryVersion = 1;

}  // namespace relgraph
