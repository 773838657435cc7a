#pragma once

#include <string>
#include <string_view>

#include "tsr/dataset.hpp"
#include "tsr/metrics.hpp"
#include "tsr/model.hpp"
#include "tsr/resampling.hpp"

namespace tsr {

enum class StrategyKind { Baseline, InputSpace, FeatureSpace, TwoStage };

/// Which resampler runs in which space:
///   baseline            - no resampling, plain training
///   is:<r>              - resample inputs, train everything
///   fs:<r>              - train, extract features, resample them, tune head
///   ts:<first>+<second> - resample inputs, train, extract features from the
///                         ORIGINAL data, resample those, tune head
struct StrategySpec {
    StrategyKind kind = StrategyKind::Baseline;
    ResamplerKind first;  // input-space stage (is:, ts:)
    ResamplerKind second; // feature-space stage (fs:, ts:)
};

StrategySpec parse_strategy(std::string_view name, int smote_k = 5);
std::string strategy_name(const StrategySpec& spec);

// Runs one strategy end to end and returns the trained network. Randomness
// is split into fixed substreams of rng ("init", "s1.resample", "s1.train",
// "s2.resample", "s2.train"), so altering one stage never shifts another.
// TrainConfig seeds/scopes are overridden from those substreams. When
// stage1_out is given, it receives the network as of the end of stage 1.
Network run_strategy(const Dataset& train_ds, const StrategySpec& spec,
                     const NetConfig& net_cfg, const TrainConfig& stage1_cfg,
                     const TrainConfig& stage2_cfg, const SeededRng& rng,
                     Network* stage1_out = nullptr);

struct EvalResult {
    ConfusionMatrix cm;
    double acc = 0.0;
    double avacc = 0.0;
    double cba = 0.0;
    double mavg = 0.0;
};

// Predict on the test set and score it; requires every class present.
EvalResult evaluate(const Network& net, const Dataset& test_ds);

} // namespace tsr
