#include "relgraph/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace relgraph {

void TrainerConfig::validate() const {
    if (dim < 1) throw Error("dimension must be >= 1");
    if (!(learning_rate > 0.0)) throw Error("learning rate must be > 0");
    if (negatives < 1) throw Error("negatives per positive must be >= 1");
    if (window < 1) throw Error("window must be >= 1");
    if (mode == TrainMode::ParallelLockFree && threads < 1)
        throw Error("threads must be >= 1");
}

TrainDivergence::TrainDivergence(std::uint32_t epoch_, std::size_t group_index_)
    : Error("non-finite value during training (epoch " +
            std::to_string(epoch_) + ", group " + std::to_string(group_index_) +
            ")"),
      epoch(epoch_),
      group_index(group_index_) {}

UnigramSampler::UnigramSampler(std::span<const ContextGroup> corpus,
                               std::size_t num_nodes, double power) {
    counts_.assign(num_nodes, 0);
    for (const auto& group : corpus)
        for (NodeId v : group) {
            if (v >= num_nodes) throw Error("corpus node id out of range");
            ++counts_[v];
        }
    double total = 0.0;
    for (NodeId v = 0; v < num_nodes; ++v) {
        if (counts_[v] == 0) continue;
        total += std::pow(static_cast<double>(counts_[v]), power);
        present_.push_back(v);
        cumulative.push_back(total);
    }
    if (present_.empty()) throw Error("empty corpus");
}

NodeId UnigramSampler::sample(Rng& rng) const {
    const double draw = rng.uniform() * cumulative.back();
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), draw);
    const auto idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), present_.size() - 1);
    return present_[idx];
}

namespace {

double sigmoid(double x) {
    if (x > 40.0) return 1.0;
    if (x < -40.0) return 0.0;
    return 1.0 / (1.0 + std::exp(-x));
}

std::uint64_t pairs_in_group(std::size_t len, std::uint32_t window) {
    // ordered position pairs (i, j), i != j, |i - j| <= window
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(len - 1, i + std::size_t{window});
        pairs += hi - lo;  // excludes i itself
    }
    return pairs;
}

struct UpdateContext {
    EmbeddingTable* table;
    const TrainerConfig* config;
    const UnigramSampler* noise;
    double lr_floor;
};

// One SGNS step for (center, target) plus sampled negatives. Returns false
// when a non-finite value appears.
bool sg_update(UpdateContext& ctx, NodeId center, NodeId target, double lr,
               Rng& rng, std::vector<float>& scratch) {
    const std::uint32_t dim = ctx.table->dim;
    float* center_row = ctx.table->input.data() + std::size_t{center} * dim;
    scratch.assign(dim, 0.0f);

    const std::uint32_t samples = ctx.config->negatives + 1;
    for (std::uint32_t s = 0; s < samples; ++s) {
        NodeId row_id;
        double label;
        if (s == 0) {
            row_id = target;
            label = 1.0;
        } else {
            row_id = ctx.noise->sample(rng);
            for (int tries = 0; row_id == target && tries < 16; ++tries)
                row_id = ctx.noise->sample(rng);
            if (row_id == target) continue;  // single-node noise distribution
            label = 0.0;
        }
        float* out_row = ctx.table->output.data() + std::size_t{row_id} * dim;
        double dot = 0.0;
        for (std::uint32_t i = 0; i < dim; ++i)
            dot += static_cast<double>(center_row[i]) *
                   static_cast<double>(out_row[i]);
        const double grad = (label - sigmoid(dot)) * lr;
        if (!std::isfinite(grad)) return false;
        const auto g = static_cast<float>(grad);
        for (std::uint32_t i = 0; i < dim; ++i) {
            scratch[i] += g * out_row[i];
            out_row[i] += g * center_row[i];
        }
    }
    for (std::uint32_t i = 0; i < dim; ++i) {
        center_row[i] += scratch[i];
        if (!std::isfinite(center_row[i])) return false;
    }
    return true;
}

}  // namespace

EmbeddingTable train(std::span<const ContextGroup> corpus,
                     const TrainerConfig& config, EmbeddingTable table,
                     const EpochCallback& on_epoch) {
    config.validate();
    if (corpus.empty()) throw Error("empty corpus");
    if (table.dim != config.dim)
        throw Error("table dimension does not match trainer configuration");
    if (config.epochs == 0) return table;

    const UnigramSampler noise(corpus, table.rows());

    std::uint64_t pairs_per_epoch = 0;
    for (const auto& group : corpus)
        pairs_per_epoch += pairs_in_group(group.size(), config.window);
    if (pairs_per_epoch == 0) throw Error("corpus yields no training pairs");
    const std::uint64_t total_updates =
        pairs_per_epoch * std::uint64_t{config.epochs};

    UpdateContext ctx{&table, &config, &noise, config.learning_rate * 1e-4};
    const std::uint32_t workers =
        config.mode == TrainMode::ParallelLockFree ? std::max(1u, config.threads)
                                                   : 1u;

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng shuffle_rng(substream(config.seed, "shuffle"));
    std::atomic<std::uint64_t> done{0};

    auto run_range = [&](std::size_t begin, std::size_t end,
                         std::uint32_t epoch, std::uint32_t worker) {
        Rng neg_rng(substream(config.seed, "negatives",
                              (std::uint64_t{epoch} << 32) | worker));
        std::vector<float> scratch(config.dim);
        for (std::size_t oi = begin; oi < end; ++oi) {
            const std::size_t gi = order[oi];
            const auto& group = corpus[gi];
            const std::size_t len = group.size();
            for (std::size_t i = 0; i < len; ++i) {
                const std::size_t lo = i > config.window ? i - config.window : 0;
                const std::size_t hi =
                    std::min(len - 1, i + std::size_t{config.window});
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j == i) continue;
                    const std::uint64_t step =
                        done.fetch_add(1, std::memory_order_relaxed);
                    // same-node pairs advance the schedule but skip the update
                    if (group[i] == group[j]) continue;
                    const double progress =
                        static_cast<double>(step) /
                        static_cast<double>(total_updates);
                    const double lr =
                        std::max(config.learning_rate * (1.0 - progress),
                                 ctx.lr_floor);
                    if (!sg_update(ctx, group[i], group[j], lr, neg_rng,
                                   scratch))
                        throw TrainDivergence(epoch, gi);
                }
            }
        }
    };

    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        if (workers == 1) {
            run_range(0, order.size(), epoch, 0);
        } else {
            std::vector<std::thread> pool;
            std::exception_ptr failure;
            std::mutex failure_mutex;
            const std::size_t chunk =
                (order.size() + workers - 1) / workers;
            for (std::uint32_t w = 0; w < workers; ++w) {
                const std::size_t begin = std::min(order.size(), w * chunk);
                const std::size_t end =
                    std::min(order.size(), begin + chunk);
                if (begin >= end) break;
                pool.emplace_back([&, begin, end, epoch, w] {
                    try {
                        run_range(begin, end, epoch, w);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            if (failure) std::rethrow_exception(failure);
        }
        if (on_epoch) on_epoch(epoch + 1, table);
    }
    return table;
}

PairGradient sg_pair_gradient(const EmbeddingTable& table, NodeId center,
                              NodeId target,
                              std::span<const NodeId> negatives) {
    if (negatives.empty()) throw Error("need at least one negative");
    for (NodeId neg : negatives) {
        if (neg == target) throw Error("target must not appear in negatives");
        if (neg >= table.rows()) throw Error("negative id out of range");
    }
    if (center >= table.rows() || target >= table.rows())
        throw Error("node id out of range");

    const std::uint32_t dim = table.dim;
    auto center_row = table.input_row(center);

    PairGradient grads;
    grads.center.assign(dim, 0.0);
    auto output_grad = [&](NodeId row) -> std::vector<double>& {
        for (auto& [id, vec] : grads.outputs)
            if (id == row) return vec;
        grads.outputs.emplace_back(row, std::vector<double>(dim, 0.0));
        return grads.outputs.back().second;
    };

    auto accumulate = [&](NodeId row, double label) {
        auto out_row = table.output_row(row);
        double dot = 0.0;
        for (std::uint32_t i = 0; i < dim; ++i)
            dot += static_cast<double>(center_row[i]) *
                   static_cast<double>(out_row[i]);
        const double coeff = label - sigmoid(dot);
        auto& out_grad = output_grad(row);
        for (std::uint32_t i = 0; i < dim; ++i) {
            out_grad[i] += coeff * static_cast<double>(center_row[i]);
            grads.center[i] += coeff * static_cast<double>(out_row[i]);
        }
    };

    accumulate(target, 1.0);
    for (NodeId neg : negatives) accumulate(neg, 0.0);
    return grads;
}

}  // namespace relgraph
