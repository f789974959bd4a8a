#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "relgraph/embedding.hpp"
#include "relgraph/rng.hpp"
#include "relgraph/types.hpp"

namespace relgraph {

enum class TrainMode : std::uint8_t {
    DeterministicSingleWorker = 0,
    ParallelLockFree = 1,
};

struct TrainerConfig {
    std::uint32_t dim = 128;
    std::uint32_t epochs = 5;
    double learning_rate = 0.025;   // decays linearly to 1/10000 of itself
    std::uint32_t window = 6;       // pair positions at distance <= window
    std::uint32_t negatives = 5;    // noise samples per positive
    std::uint64_t seed = 1;
    TrainMode mode = TrainMode::DeterministicSingleWorker;
    std::uint32_t threads = 1;      // ParallelLockFree only

    void validate() const;
};

// Thrown when an update produces a non-finite value.
struct TrainDivergence : Error {
    TrainDivergence(std::uint32_t epoch_, std::size_t group_index_);
    std::uint32_t epoch;
    std::size_t group_index;
};

// Called after each completed epoch; used to monitor probe likelihoods.
using EpochCallback =
    std::function<void(std::uint32_t epochs_done, const EmbeddingTable&)>;

// Noise distribution for negative sampling: corpus node frequencies raised
// to the 3/4 power. Nodes absent from the corpus are never drawn.
class UnigramSampler {
public:
    UnigramSampler(std::span<const ContextGroup> corpus, std::size_t num_nodes,
                   double power = 0.75);

    NodeId sample(Rng& rng) const;
    std::span<const std::uint64_t> counts() const { return counts_; }

private:
    std::vector<std::uint64_t> counts_;
    std::vector<double> cumulative;  // over present_ nodes
    std::vector<NodeId> present_;
};

// Stochastic gradient ascent on the negative-sampling objective. For every
// group, every ordered (center, target) position pair at distance <= window
// with distinct node ids gets one update touching input[center],
// output[target] and the output rows of `negatives` sampled noise nodes.
// The learning rate decays linearly over all scheduled updates with a floor
// of learning_rate/10000. Deterministic mode is bitwise reproducible;
// parallel mode applies updates lock-free and tolerates lost writes.
EmbeddingTable train(std::span<const ContextGroup> corpus,
                     const TrainerConfig& config, EmbeddingTable table,
                     const EpochCallback& on_epoch = {});

// Analytic gradient of
//   l = log sigmoid(output[target] . input[center])
//     + sum_neg log sigmoid(-output[neg] . input[center])
// with respect to every touched row; duplicate negatives accumulate.
struct PairGradient {
    std::vector<double> center;  // d/d input[center]
    std::vector<std::pair<NodeId, std::vector<double>>> outputs;  // target first
};

PairGradient sg_pair_gradient(const EmbeddingTable& table, NodeId center,
                              NodeId target, std::span<const NodeId> negatives);

}  // namespace relgraph
