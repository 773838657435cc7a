#include "tsr/pipeline.hpp"

#include "tsr/errors.hpp"

namespace tsr {

StrategySpec parse_strategy(std::string_view name, int smote_k) {
    StrategySpec spec;
    if (name == "baseline") {
        spec.kind = StrategyKind::Baseline;
        return spec;
    }
    if (name.starts_with("is:")) {
        spec.kind = StrategyKind::InputSpace;
        spec.first = parse_resampler(name.substr(3), smote_k);
        return spec;
    }
    if (name.starts_with("fs:")) {
        spec.kind = StrategyKind::FeatureSpace;
        spec.second = parse_resampler(name.substr(3), smote_k);
        return spec;
    }
    if (name.starts_with("ts:")) {
        auto rest = name.substr(3);
        auto plus = rest.find('+');
        if (plus == std::string_view::npos)
            throw ConfigError("two-stage strategy needs 'ts:<first>+<second>', got '" +
                              std::string(name) + "'");
        spec.kind = StrategyKind::TwoStage;
        spec.first = parse_resampler(rest.substr(0, plus), smote_k);
        spec.second = parse_resampler(rest.substr(plus + 1), smote_k);
        if (spec.first.kind == ResamplerKind::Kind::None ||
            spec.second.kind == ResamplerKind::Kind::None)
            throw ConfigError("two-stage strategy requires a resampler in both stages");
        return spec;
    }
    throw ConfigError("unknown strategy '" + std::string(name) +
                      "' (expected baseline | is:<r> | fs:<r> | ts:<r>+<r>)");
}

std::string strategy_name(const StrategySpec& spec) {
    switch (spec.kind) {
        case StrategyKind::Baseline: return "baseline";
        case StrategyKind::InputSpace: return "is:" + to_string(spec.first);
        case StrategyKind::FeatureSpace: return "fs:" + to_string(spec.second);
        case StrategyKind::TwoStage:
            return "ts:" + to_string(spec.first) + "+" + to_string(spec.second);
    }
    return "?";
}

namespace {

// Stage 2 runs the head on body features, fresh optimizer accumulators.
Network tune_head(Network net, const Dataset& train_ds, const ResamplerKind& second,
                  const TrainConfig& stage2_cfg, const SeededRng& rng) {
    Dataset feature_ds;
    feature_ds.features = extract_features(net, train_ds.features);
    feature_ds.labels = train_ds.labels;
    feature_ds.num_classes = train_ds.num_classes;

    SeededRng resample_rng = rng.substream("s2.resample");
    Dataset resampled = apply_resampler(feature_ds, second, resample_rng);

    TrainConfig cfg = stage2_cfg;
    cfg.scope = TrainScope::HeadOnly;
    cfg.seed = rng.substream("s2.train").seed();
    return train(std::move(net), resampled, cfg);
}

} // namespace

Network run_strategy(const Dataset& train_ds, const StrategySpec& spec,
                     const NetConfig& net_cfg, const TrainConfig& stage1_cfg,
                     const TrainConfig& stage2_cfg, const SeededRng& rng,
                     Network* stage1_out) {
    validate(train_ds);
    if (net_cfg.input_dim != static_cast<int>(train_ds.dim()))
        throw ConfigError("run_strategy: net input_dim " + std::to_string(net_cfg.input_dim) +
                          " != dataset dim " + std::to_string(train_ds.dim()));
    if (spec.kind == StrategyKind::TwoStage &&
        (spec.first.kind == ResamplerKind::Kind::None ||
         spec.second.kind == ResamplerKind::Kind::None))
        throw ConfigError("run_strategy: two-stage strategy with an empty stage");

    SeededRng init_rng = rng.substream("init");
    Network net = init_network(net_cfg, init_rng);

    TrainConfig s1 = stage1_cfg;
    s1.scope = TrainScope::AllParams;
    s1.seed = rng.substream("s1.train").seed();

    switch (spec.kind) {
        case StrategyKind::Baseline: {
            net = train(std::move(net), train_ds, s1);
            if (stage1_out) *stage1_out = net;
            return net;
        }
        case StrategyKind::InputSpace: {
            SeededRng resample_rng = rng.substream("s1.resample");
            Dataset resampled = apply_resampler(train_ds, spec.first, resample_rng);
            net = train(std::move(net), resampled, s1);
            if (stage1_out) *stage1_out = net;
            return net;
        }
        case StrategyKind::FeatureSpace: {
            net = train(std::move(net), train_ds, s1);
            if (stage1_out) *stage1_out = net;
            return tune_head(std::move(net), train_ds, spec.second, stage2_cfg, rng);
        }
        case StrategyKind::TwoStage: {
            SeededRng resample_rng = rng.substream("s1.resample");
            Dataset resampled = apply_resampler(train_ds, spec.first, resample_rng);
            net = train(std::move(net), resampled, s1);
            if (stage1_out) *stage1_out = net;
            // Features come from the original rows, not the oversampled set.
            return tune_head(std::move(net), train_ds, spec.second, stage2_cfg, rng);
        }
    }
    throw ConfigError("run_strategy: bad strategy kind");
}

EvalResult evaluate(const Network& net, const Dataset& test_ds) {
    validate(test_ds);
    if (test_ds.size() == 0) throw DataError("evaluate: empty test set");

    EvalResult res;
    auto y_pred = predict(net, test_ds.features);
    res.cm = confusion(test_ds.labels, y_pred, net.config.num_classes);
    res.acc = accuracy(res.cm);
    res.avacc = avacc(res.cm);
    res.cba = cba(res.cm);
    res.mavg = mavg(res.cm);
    return res;
}

} // namespace tsr
