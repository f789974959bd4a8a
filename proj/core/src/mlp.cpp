#include "relgraph/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "relgraph/rng.hpp"

namespace relgraph {

void MlpConfig::validate() const {
    if (hidden < 1) throw Error("hidden width must be >= 1");
    if (batch_size < 1) throw Error("batch size must be >= 1");
    if (!(learning_rate > 0.0)) throw Error("learning rate must be > 0");
}

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow
double softplus(double x) {
    if (x > 35.0) return x;
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

struct Workspace {
    std::vector<double> pre;     // hidden pre-activations
    std::vector<double> act;     // hidden activations
    std::vector<double> gw1, gb1, gw2;
    double gb2 = 0.0;

    explicit Workspace(const MlpModel& model)
        : pre(model.hidden),
          act(model.hidden),
          gw1(model.w1.size(), 0.0),
          gb1(model.hidden, 0.0),
          gw2(model.hidden, 0.0) {}

    void zero_grads() {
        std::fill(gw1.begin(), gw1.end(), 0.0);
        std::fill(gb1.begin(), gb1.end(), 0.0);
        std::fill(gw2.begin(), gw2.end(), 0.0);
        gb2 = 0.0;
    }
};

double forward(const MlpModel& model, std::span<const double> feature,
               Workspace& ws) {
    for (std::uint32_t h = 0; h < model.hidden; ++h) {
        double sum = model.b1[h];
        const double* weights = model.w1.data() + std::size_t{h} * model.input_dim;
        for (std::uint32_t i = 0; i < model.input_dim; ++i)
            sum += weights[i] * feature[i];
        ws.pre[h] = sum;
        ws.act[h] = sum > 0.0 ? sum : 0.0;
    }
    double logit = model.b2;
    for (std::uint32_t h = 0; h < model.hidden; ++h)
        logit += model.w2[h] * ws.act[h];
    return logit;
}

// accumulates dLoss/dtheta for one example into the workspace grads
void backward(const MlpModel& model, std::span<const double> feature,
              double logit, double label, Workspace& ws) {
    const double dlogit = sigmoid(logit) - label;
    for (std::uint32_t h = 0; h < model.hidden; ++h) {
        ws.gw2[h] += dlogit * ws.act[h];
        if (ws.pre[h] <= 0.0) continue;
        const double dh = dlogit * model.w2[h];
        ws.gb1[h] += dh;
        double* grad_row = ws.gw1.data() + std::size_t{h} * model.input_dim;
        for (std::uint32_t i = 0; i < model.input_dim; ++i)
            grad_row[i] += dh * feature[i];
    }
    ws.gb2 += dlogit;
}

}  // namespace

double MlpModel::logit(std::span<const double> feature) const {
    if (feature.size() != input_dim)
        throw Error("feature length " + std::to_string(feature.size()) +
                    " does not match classifier input " +
                    std::to_string(input_dim));
    double out = b2;
    for (std::uint32_t h = 0; h < hidden; ++h) {
        double sum = b1[h];
        const double* weights = w1.data() + std::size_t{h} * input_dim;
        for (std::uint32_t i = 0; i < input_dim; ++i)
            sum += weights[i] * feature[i];
        if (sum > 0.0) out += w2[h] * sum;
    }
    return out;
}

double predict_proba(const MlpModel& model, std::span<const double> feature) {
    const double p = sigmoid(model.logit(feature));
    return std::clamp(p, 1e-12, 1.0 - 1e-12);
}

MlpModel init_mlp(std::uint32_t input_dim, const MlpConfig& config) {
    config.validate();
    if (input_dim < 1) throw Error("input dimension must be >= 1");
    MlpModel model;
    model.input_dim = input_dim;
    model.hidden = config.hidden;
    model.w1.resize(std::size_t{config.hidden} * input_dim);
    model.b1.assign(config.hidden, 0.0);
    model.w2.resize(config.hidden);
    model.b2 = 0.0;
    Rng rng(substream(config.seed, "mlp-init"));
    const double bound1 = std::sqrt(6.0 / (input_dim + config.hidden));
    for (auto& w : model.w1) w = rng.uniform(-bound1, bound1);
    const double bound2 = std::sqrt(6.0 / (config.hidden + 1));
    for (auto& w : model.w2) w = rng.uniform(-bound2, bound2);
    return model;
}

double mlp_loss(const MlpModel& model, const Matrix& features,
                std::span<const std::uint8_t> labels) {
    if (features.rows != labels.size())
        throw Error("feature/label row mismatch");
    if (features.rows == 0) throw Error("empty feature matrix");
    double total = 0.0;
    for (std::size_t r = 0; r < features.rows; ++r) {
        const double z = model.logit(features.row(r));
        // -[y log p + (1-y) log(1-p)] = softplus(z) - y z
        total += softplus(z) - static_cast<double>(labels[r]) * z;
    }
    return total / static_cast<double>(features.rows);
}

MlpModel train_mlp(const Matrix& features, std::span<const std::uint8_t> labels,
                   const MlpConfig& config) {
    config.validate();
    if (features.rows != labels.size())
        throw Error("feature/label row mismatch");
    if (features.rows < 2) throw Error("need at least 2 training rows");
    bool has_pos = false, has_neg = false;
    for (auto label : labels) (label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw Error("training data must contain both classes");
    for (double value : features.data)
        if (!std::isfinite(value)) throw Error("non-finite feature value");

    MlpModel model = init_mlp(static_cast<std::uint32_t>(features.cols), config);
    Workspace ws(model);
    Rng shuffle_rng(substream(config.seed, "mlp-shuffle"));
    std::vector<std::size_t> order(features.rows);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size();
             start += config.batch_size) {
            const std::size_t stop =
                std::min(order.size(), start + config.batch_size);
            ws.zero_grads();
            for (std::size_t o = start; o < stop; ++o) {
                const std::size_t r = order[o];
                const double logit = forward(model, features.row(r), ws);
                backward(model, features.row(r), logit,
                         static_cast<double>(labels[r]), ws);
            }
            const double scale =
                config.learning_rate / static_cast<double>(stop - start);
            for (std::size_t i = 0; i < model.w1.size(); ++i)
                model.w1[i] -= scale * ws.gw1[i];
            for (std::uint32_t h = 0; h < model.hidden; ++h) {
                model.b1[h] -= scale * ws.gb1[h];
                model.w2[h] -= scale * ws.gw2[h];
            }
            model.b2 -= scale * ws.gb2;
        }
    }
    return model;
}

double mlp_gradient_check(const MlpModel& model, std::span<const double> feature,
                          std::uint8_t label, double step) {
    Workspace ws(model);
    const double logit = forward(model, feature, ws);
    backward(model, feature, logit, static_cast<double>(label), ws);

    MlpModel probe = model;
    auto loss_at = [&]() {
        const double z = probe.logit(feature);
        return softplus(z) - static_cast<double>(label) * z;
    };
    double max_rel = 0.0;
    auto check = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + step;
        const double up = loss_at();
        param = saved - step;
        const double down = loss_at();
        param = saved;
        const double numeric = (up - down) / (2.0 * step);
        const double denom =
            std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
    };
    for (std::size_t i = 0; i < probe.w1.size(); ++i)
        check(probe.w1[i], ws.gw1[i]);
    for (std::uint32_t h = 0; h < probe.hidden; ++h) {
        check(probe.b1[h], ws.gb1[h]);
        check(probe.w2[h], ws.gw2[h]);
    }
    check(probe.b2, ws.gb2);
    return max_rel;
}

namespace {
constexpr char kMlpMagic[4] = {'R', 'M', 'L', 'P'};

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw Error("truncated classifier file: " + path);
    return value;
}
}  // namespace

void save_mlp(const MlpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write classifier: " + path);
    out.write(kMlpMagic, sizeof(kMlpMagic));
    write_pod(out, kMlpBinaryVersion);
    write_pod(out, model.input_dim);
    write_pod(out, model.hidden);
    out.write(reinterpret_cast<const char*>(model.w1.data()),
              static_cast<std::streamsize>(model.w1.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(model.b1.data()),
              static_cast<std::streamsize>(model.b1.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(model.w2.data()),
              static_cast<std::streamsize>(model.w2.size() * sizeof(double)));
    write_pod(out, model.b2);
    if (!out) throw Error("write failed: " + path);
}

MlpModel load_mlp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open classifier: " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMlpMagic, sizeof(magic)) != 0)
        throw Error("not a classifier file (bad magic): " + path);
    const auto version = read_pod<std::uint32_t>(in, path);
    if (version != kMlpBinaryVersion)
        throw Error("unsupported classifier version " +
                    std::to_string(version) + ": " + path);
    MlpModel model;
    model.input_dim = read_pod<std::uint32_t>(in, path);
    model.hidden = read_pod<std::uint32_t>(in, path);
    if (model.input_dim < 1 || model.hidden < 1)
        throw Error("bad classifier header: " + path);
    model.w1.resize(std::size_t{model.hidden} * model.input_dim);
    model.b1.resize(model.hidden);
    model.w2.resize(model.hidden);
    in.read(reinterpret_cast<char*>(model.w1.data()),
            static_cast<std::streamsize>(model.w1.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(model.b1.data()),
            static_cast<std::streamsize>(model.b1.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(model.w2.data()),
            static_cast<std::streamsize>(model.w2.size() * sizeof(double)));
    if (!in) throw Error("truncated classifier file: " + path);
    model.b2 = read_pod<double>(in, path);
    return model;
}

}  // namespace relgraph
