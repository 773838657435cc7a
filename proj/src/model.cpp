#include "tsr/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "tsr/errors.hpp"

namespace tsr {

namespace {

constexpr double kLogClamp = 1e-15;

void check_config(const NetConfig& cfg) {
    if (cfg.input_dim < 1) throw ConfigError("net: input_dim must be >= 1");
    if (cfg.body_dims.empty()) throw ConfigError("net: body_dims must be non-empty");
    for (int d : cfg.body_dims)
        if (d < 1) throw ConfigError("net: body widths must be >= 1");
    if (cfg.head_hidden < 1) throw ConfigError("net: head_hidden must be >= 1");
    if (cfg.num_classes < 1) throw ConfigError("net: num_classes must be >= 1");
}

DenseLayer make_layer(int out, int in, SeededRng& rng) {
    DenseLayer layer;
    layer.weights = Matrix(out, in);
    layer.biases.assign(out, 0.0);
    const double scale = std::sqrt(2.0 / in);
    for (double& w : layer.weights.data) w = scale * rng.next_normal();
    return layer;
}

DenseLayer zeros_like(const DenseLayer& src) {
    DenseLayer out;
    out.weights = Matrix(src.weights.rows, src.weights.cols);
    out.biases.assign(src.biases.size(), 0.0);
    return out;
}

// Z = A * W^T + b
Matrix affine(const Matrix& a, const DenseLayer& layer) {
    Matrix z(a.rows, layer.weights.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        auto in = a.row(i);
        auto out = z.row(i);
        for (std::size_t o = 0; o < layer.weights.rows; ++o) {
            double acc = layer.biases[o];
            auto w = layer.weights.row(o);
            for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * in[j];
            out[o] = acc;
        }
    }
    return z;
}

void relu_inplace(Matrix& z) {
    for (double& v : z.data)
        if (v < 0.0) v = 0.0;
}

void softmax_rows_inplace(Matrix& z) {
    for (std::size_t i = 0; i < z.rows; ++i) {
        auto row = z.row(i);
        double mx = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
}

// All layers of one scope in forward order; head-only sees just the head.
std::vector<const DenseLayer*> scope_layers(const Network& net, TrainScope scope) {
    std::vector<const DenseLayer*> layers;
    if (scope == TrainScope::AllParams)
        for (const auto& l : net.body) layers.push_back(&l);
    for (const auto& l : net.head) layers.push_back(&l);
    return layers;
}

// activations[0] = X, activations[i] = output of layer i-1 (rectified for
// hidden layers, probabilities for the last).
std::vector<Matrix> run_layers(const std::vector<const DenseLayer*>& layers, const Matrix& x) {
    std::vector<Matrix> acts;
    acts.reserve(layers.size() + 1);
    acts.push_back(x);
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Matrix z = affine(acts.back(), *layers[l]);
        if (l + 1 < layers.size())
            relu_inplace(z);
        else
            softmax_rows_inplace(z);
        acts.push_back(std::move(z));
    }
    return acts;
}

void check_input(const Matrix& x, int expected_dim, const char* what) {
    if (x.cols != static_cast<std::size_t>(expected_dim))
        throw DataError(std::string(what) + ": input has " + std::to_string(x.cols) +
                        " columns, expected " + std::to_string(expected_dim));
    for (double v : x.data)
        if (!std::isfinite(v)) throw DataError(std::string(what) + ": non-finite input");
}

} // namespace

Network init_network(const NetConfig& cfg, SeededRng& rng) {
    check_config(cfg);
    Network net;
    net.config = cfg;
    int in = cfg.input_dim;
    for (int width : cfg.body_dims) {
        net.body.push_back(make_layer(width, in, rng));
        in = width;
    }
    net.head.push_back(make_layer(cfg.head_hidden, in, rng));
    net.head.push_back(make_layer(cfg.num_classes, cfg.head_hidden, rng));
    return net;
}

Matrix forward(const Network& net, const Matrix& x) {
    check_input(x, net.config.input_dim, "forward");
    return run_layers(scope_layers(net, TrainScope::AllParams), x).back();
}

Matrix head_forward(const Network& net, const Matrix& features) {
    check_input(features, net.feature_dim(), "head_forward");
    return run_layers(scope_layers(net, TrainScope::HeadOnly), features).back();
}

Matrix extract_features(const Network& net, const Matrix& x) {
    check_input(x, net.config.input_dim, "extract_features");
    Matrix a = x;
    for (const auto& layer : net.body) {
        a = affine(a, layer);
        relu_inplace(a);
    }
    return a;
}

std::vector<int> predict(const Network& net, const Matrix& x) {
    Matrix probs = forward(net, x);
    std::vector<int> labels(probs.rows);
    for (std::size_t i = 0; i < probs.rows; ++i) {
        auto row = probs.row(i);
        int best = 0;
        for (int c = 1; c < net.config.num_classes; ++c)
            if (row[c] > row[best]) best = c;
        labels[i] = best;
    }
    return labels;
}

double loss_and_grads(const Network& net, const Matrix& x, std::span<const int> y,
                      TrainScope scope, Gradients& grads) {
    const int expected = scope == TrainScope::AllParams ? net.config.input_dim
                                                        : net.feature_dim();
    check_input(x, expected, "loss_and_grads");
    if (x.rows != y.size() || y.empty())
        throw DataError("loss_and_grads: batch/label size mismatch");
    for (int label : y)
        if (label < 0 || label >= net.config.num_classes)
            throw DataError("loss_and_grads: label out of range");

    auto layers = scope_layers(net, scope);
    auto acts = run_layers(layers, x);
    const Matrix& probs = acts.back();
    const double batch = static_cast<double>(x.rows);

    double loss = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i)
        loss -= std::log(std::max(probs(i, y[i]), kLogClamp));
    loss /= batch;

    grads.body.clear();
    grads.head.clear();
    std::vector<DenseLayer*> grad_ptrs;
    if (scope == TrainScope::AllParams) {
        for (const auto& l : net.body) grads.body.push_back(zeros_like(l));
        for (auto& g : grads.body) grad_ptrs.push_back(&g);
    }
    for (const auto& l : net.head) grads.head.push_back(zeros_like(l));
    for (auto& g : grads.head) grad_ptrs.push_back(&g);

    // dZ at the softmax layer; then walk the stack backwards.
    Matrix dz = probs;
    for (std::size_t i = 0; i < x.rows; ++i) {
        dz(i, y[i]) -= 1.0;
        for (double& v : dz.row(i)) v /= batch;
    }
    for (std::size_t l = layers.size(); l-- > 0;) {
        const Matrix& input = acts[l];
        DenseLayer& g = *grad_ptrs[l];
        for (std::size_t i = 0; i < dz.rows; ++i) {
            auto drow = dz.row(i);
            auto in = input.row(i);
            for (std::size_t o = 0; o < drow.size(); ++o) {
                g.biases[o] += drow[o];
                auto wrow = g.weights.row(o);
                for (std::size_t j = 0; j < in.size(); ++j) wrow[j] += drow[o] * in[j];
            }
        }
        if (l == 0) break;
        // dA = dZ * W, masked by the rectifier of the previous layer.
        Matrix da(dz.rows, layers[l]->weights.cols);
        for (std::size_t i = 0; i < dz.rows; ++i) {
            auto drow = dz.row(i);
            auto out = da.row(i);
            for (std::size_t o = 0; o < drow.size(); ++o) {
                auto wrow = layers[l]->weights.row(o);
                for (std::size_t j = 0; j < wrow.size(); ++j) out[j] += drow[o] * wrow[j];
            }
            auto prev = input.row(i);
            for (std::size_t j = 0; j < out.size(); ++j)
                if (prev[j] <= 0.0) out[j] = 0.0;
        }
        dz = std::move(da);
    }
    return loss;
}

RmsPropState init_rmsprop_state(const Network& net, TrainScope scope) {
    RmsPropState state;
    if (scope == TrainScope::AllParams)
        for (const auto& l : net.body) state.body.push_back(zeros_like(l));
    for (const auto& l : net.head) state.head.push_back(zeros_like(l));
    return state;
}

namespace {

void rmsprop_block(DenseLayer& params, const DenseLayer& grad, DenseLayer& acc,
                   const TrainConfig& cfg) {
    auto update = [&](double& theta, double g, double& s) {
        if (!std::isfinite(g))
            throw std::runtime_error("rmsprop_step: non-finite gradient (lr=" +
                                     std::to_string(cfg.learning_rate) + ")");
        s = cfg.rho * s + (1.0 - cfg.rho) * g * g;
        theta -= cfg.learning_rate * g / (std::sqrt(s) + cfg.epsilon);
    };
    for (std::size_t i = 0; i < params.weights.data.size(); ++i)
        update(params.weights.data[i], grad.weights.data[i], acc.weights.data[i]);
    for (std::size_t i = 0; i < params.biases.size(); ++i)
        update(params.biases[i], grad.biases[i], acc.biases[i]);
}

} // namespace

void rmsprop_step(Network& net, const Gradients& grads, RmsPropState& state,
                  const TrainConfig& cfg) {
    if (grads.body.size() != state.body.size() || grads.head.size() != state.head.size())
        throw ConfigError("rmsprop_step: gradient/state scope mismatch");
    for (std::size_t l = 0; l < grads.body.size(); ++l)
        rmsprop_block(net.body[l], grads.body[l], state.body[l], cfg);
    for (std::size_t l = 0; l < grads.head.size(); ++l)
        rmsprop_block(net.head[l], grads.head[l], state.head[l], cfg);
}

Network train(Network net, const Dataset& ds, const TrainConfig& cfg) {
    if (cfg.epochs < 1 || cfg.batch_size < 1)
        throw ConfigError("train: epochs and batch_size must be >= 1");
    if (cfg.learning_rate <= 0.0)
        throw ConfigError("train: learning_rate must be positive");
    if (cfg.rho <= 0.0 || cfg.rho >= 1.0)
        throw ConfigError("train: rho must be in (0, 1)");
    validate(ds);
    if (ds.size() == 0) throw DataError("train: empty dataset");
    if (ds.num_classes > net.config.num_classes)
        throw DataError("train: dataset has more classes than the network");

    SeededRng rng = SeededRng(cfg.seed).substream("shuffle");
    RmsPropState state = init_rmsprop_state(net, cfg.scope);
    Gradients grads;

    std::vector<std::size_t> perm(ds.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(perm);
        for (std::size_t start = 0; start < ds.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(ds.size(), start + cfg.batch_size);
            Matrix xb(stop - start, ds.dim());
            std::vector<int> yb(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                auto src = ds.features.row(perm[i]);
                std::copy(src.begin(), src.end(), xb.row(i - start).begin());
                yb[i - start] = ds.labels[perm[i]];
            }
            loss_and_grads(net, xb, yb, cfg.scope, grads);
            rmsprop_step(net, grads, state, cfg);
        }
    }
    return net;
}

// ---------------------------------------------------------------------------
// Serialization: "TSRNET01" magic, then little-endian u64 shape fields,
// then raw little-endian doubles for every layer (weights row-major, biases).

namespace {

constexpr char kMagic[8] = {'T', 'S', 'R', 'N', 'E', 'T', '0', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw DataError("network file: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }
double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

void write_layer(std::ostream& out, const DenseLayer& l) {
    for (double v : l.weights.data) write_f64(out, v);
    for (double v : l.biases) write_f64(out, v);
}

void read_layer(std::istream& in, DenseLayer& l) {
    for (double& v : l.weights.data) v = read_f64(in);
    for (double& v : l.biases) v = read_f64(in);
}

} // namespace

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out.write(kMagic, 8);
    write_u64(out, net.config.input_dim);
    write_u64(out, net.config.body_dims.size());
    for (int d : net.config.body_dims) write_u64(out, d);
    write_u64(out, net.config.head_hidden);
    write_u64(out, net.config.num_classes);
    for (const auto& l : net.body) write_layer(out, l);
    for (const auto& l : net.head) write_layer(out, l);
    if (!out) throw DataError("write failure on '" + path + "'");
}

Network load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw DataError("'" + path + "' is not a network file (bad magic)");

    NetConfig cfg;
    cfg.input_dim = static_cast<int>(read_u64(in));
    auto body_count = read_u64(in);
    if (body_count == 0 || body_count > 64)
        throw DataError("network file: implausible body layer count");
    for (std::uint64_t i = 0; i < body_count; ++i)
        cfg.body_dims.push_back(static_cast<int>(read_u64(in)));
    cfg.head_hidden = static_cast<int>(read_u64(in));
    cfg.num_classes = static_cast<int>(read_u64(in));
    check_config(cfg);

    Network net;
    net.config = cfg;
    int in_dim = cfg.input_dim;
    for (int width : cfg.body_dims) {
        DenseLayer l;
        l.weights = Matrix(width, in_dim);
        l.biases.assign(width, 0.0);
        read_layer(in, l);
        net.body.push_back(std::move(l));
        in_dim = width;
    }
    for (int width : {cfg.head_hidden, cfg.num_classes}) {
        DenseLayer l;
        l.weights = Matrix(width, in_dim);
        l.biases.assign(width, 0.0);
        read_layer(in, l);
        net.head.push_back(std::move(l));
        in_dim = width;
    }
    return net;
}

} // namespace tsr
