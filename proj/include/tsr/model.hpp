#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsr/dataset.hpp"
#include "tsr/matrix.hpp"
#include "tsr/rng.hpp"

namespace tsr {

/// Feed-forward classifier shape. The body (rectifier stack ending in the
/// feature layer) and the head (one hidden rectifier layer plus the softmax
/// layer) are kept separate so the head can be fine-tuned on its own.
struct NetConfig {
    int input_dim = 0;
    std::vector<int> body_dims;   // hidden widths; last entry is the feature dim F
    int head_hidden = 0;
    int num_classes = 0;
};

// One dense layer's parameters; also reused as a gradient / accumulator block.
struct DenseLayer {
    Matrix weights; // out x in
    std::vector<double> biases;

    bool operator==(const DenseLayer&) const = default;
};

struct Network {
    NetConfig config;
    std::vector<DenseLayer> body; // one per body_dims entry, rectifier each
    std::vector<DenseLayer> head; // [hidden (rectifier), output (softmax)]

    int feature_dim() const { return config.body_dims.back(); }
};

enum class TrainScope { AllParams, HeadOnly };

struct TrainConfig {
    int epochs = 20;
    int batch_size = 32;
    double learning_rate = 1e-4;
    double rho = 0.9;      // accumulator decay
    double epsilon = 1e-7; // added outside the square root
    std::uint64_t seed = 0;
    TrainScope scope = TrainScope::AllParams;
};

struct Gradients {
    std::vector<DenseLayer> body; // empty under HeadOnly
    std::vector<DenseLayer> head;
};

struct RmsPropState {
    std::vector<DenseLayer> body;
    std::vector<DenseLayer> head;
};

// He-scaled normal weights (variance 2/fan_in), zero biases.
Network init_network(const NetConfig& cfg, SeededRng& rng);

// Full forward pass; rows of the result are probability vectors.
Matrix forward(const Network& net, const Matrix& X);

// Head applied to already-extracted features (batch x F input).
Matrix head_forward(const Network& net, const Matrix& features);

// Body output: activations of the last body layer, batch x F.
Matrix extract_features(const Network& net, const Matrix& X);

// Argmax class per row; exact ties go to the lowest class index.
std::vector<int> predict(const Network& net, const Matrix& X);

// Mean categorical cross-entropy over the batch plus gradients for the given
// scope. Under HeadOnly, X must be feature-space input (batch x F) and
// grads.body comes back empty.
double loss_and_grads(const Network& net, const Matrix& X, std::span<const int> y,
                      TrainScope scope, Gradients& grads);

RmsPropState init_rmsprop_state(const Network& net, TrainScope scope);

// s <- rho*s + (1-rho)*g^2;  theta <- theta - lr*g / (sqrt(s) + eps)
void rmsprop_step(Network& net, const Gradients& grads, RmsPropState& state,
                  const TrainConfig& cfg);

// Mini-batch training, epochs * ceil(N/batch) steps, data reshuffled each
// epoch from cfg.seed. Fresh accumulators. HeadOnly expects ds in feature
// space and leaves the body bit-identical.
Network train(Network net, const Dataset& ds, const TrainConfig& cfg);

// Versioned little-endian binary container; round-trips bit-exactly.
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

} // namespace tsr
