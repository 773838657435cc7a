// Command-line front end: dataset generation, resampling, imbalance
// description, single-strategy training, full experiment grids, the
// baseline IR study, and result summaries.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsr/errors.hpp"
#include "tsr/harness.hpp"
#include "tsr/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

struct CommonGridArgs {
    std::string config_path;
    std::string dataset;
    std::string output_dir;
    std::vector<std::string> scenarios;
    std::vector<double> levels;
    std::vector<std::string> strategies;
    std::string ratio_mode;
    int folds = -1;
    int smote_k = -1;
    int workers = -1;
    bool serial = false;
    bool strict = false;
    std::int64_t seed = -1;
    // synthetic overrides
    int classes = -1, per_class = -1, dims = -1;
    double spread = -1.0, separation = -1.0;
    // net + train overrides
    std::string body_dims;
    int head_hidden = -1;
    int epochs = -1, batch = -1;
    double lr = -1.0, rho = -1.0, eps = -1.0;
    int epochs2 = -1, batch2 = -1;
    double lr2 = -1.0;
};

void add_grid_flags(CLI::App* cmd, CommonGridArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON experiment config");
    cmd->add_option("--dataset", args.dataset, "dataset CSV (otherwise synthetic blobs)");
    cmd->add_option("--out", args.output_dir, "output directory");
    cmd->add_option("--folds", args.folds, "cross-validation folds");
    cmd->add_option("--scenarios", args.scenarios,
                    "imbalance scenarios (linear single-majority single-minority half-minority)");
    cmd->add_option("--levels", args.levels, "imbalance ratios");
    cmd->add_option("--strategies", args.strategies, "strategy names");
    cmd->add_option("--k", args.smote_k, "SMOTE neighbor count");
    cmd->add_option("--ratio-mode", args.ratio_mode, "ratio-linear | count-linear");
    cmd->add_option("--seed", args.seed, "master seed");
    cmd->add_option("--workers", args.workers, "parallel cell workers");
    cmd->add_flag("--serial", args.serial, "force the serial reference mode");
    cmd->add_flag("--strict", args.strict, "abort the grid on the first failed cell");
    cmd->add_option("--classes", args.classes, "synthetic: number of classes");
    cmd->add_option("--per-class", args.per_class, "synthetic: samples per class");
    cmd->add_option("--dims", args.dims, "synthetic: feature dimensions");
    cmd->add_option("--spread", args.spread, "synthetic: cluster spread");
    cmd->add_option("--separation", args.separation, "synthetic: center separation");
    cmd->add_option("--body-dims", args.body_dims, "comma-separated body widths, e.g. 32,16");
    cmd->add_option("--head-hidden", args.head_hidden, "head hidden width");
    cmd->add_option("--epochs", args.epochs, "stage-1 epochs");
    cmd->add_option("--batch", args.batch, "stage-1 batch size");
    cmd->add_option("--lr", args.lr, "stage-1 learning rate");
    cmd->add_option("--rho", args.rho, "RMSprop decay");
    cmd->add_option("--eps", args.eps, "RMSprop epsilon");
    cmd->add_option("--epochs2", args.epochs2, "stage-2 epochs");
    cmd->add_option("--batch2", args.batch2, "stage-2 batch size");
    cmd->add_option("--lr2", args.lr2, "stage-2 learning rate");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty()) throw tsr::ConfigError("empty dimension list '" + text + "'");
    return out;
}

tsr::ExperimentConfig build_config(const CommonGridArgs& args) {
    tsr::ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = tsr::load_config(args.config_path);
    if (!args.dataset.empty()) cfg.dataset_csv = args.dataset;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (args.folds > 0) cfg.num_folds = args.folds;
    if (!args.scenarios.empty()) {
        cfg.scenarios.clear();
        for (const auto& s : args.scenarios) cfg.scenarios.push_back(tsr::parse_scenario(s));
    }
    if (!args.levels.empty()) cfg.ir_levels = args.levels;
    if (!args.strategies.empty()) cfg.strategies = args.strategies;
    if (args.smote_k > 0) cfg.smote_k = args.smote_k;
    if (!args.ratio_mode.empty()) cfg.ratio_mode = tsr::parse_ratio_mode(args.ratio_mode);
    if (args.seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(args.seed);
    if (args.workers > 0) cfg.workers = args.workers;
    if (args.serial) cfg.workers = 1;
    if (args.strict) cfg.strict = true;
    if (args.classes > 0) cfg.synthetic.num_classes = args.classes;
    if (args.per_class > 0) cfg.synthetic.samples_per_class = args.per_class;
    if (args.dims > 0) cfg.synthetic.dims = args.dims;
    if (args.spread > 0) cfg.synthetic.cluster_spread = args.spread;
    if (args.separation > 0) cfg.synthetic.class_separation = args.separation;
    if (!args.body_dims.empty()) cfg.body_dims = parse_int_list(args.body_dims);
    if (args.head_hidden > 0) cfg.head_hidden = args.head_hidden;
    if (args.epochs > 0) cfg.stage1.epochs = cfg.stage2.epochs = args.epochs;
    if (args.batch > 0) cfg.stage1.batch_size = cfg.stage2.batch_size = args.batch;
    if (args.lr > 0) cfg.stage1.learning_rate = cfg.stage2.learning_rate = args.lr;
    if (args.rho > 0) cfg.stage1.rho = cfg.stage2.rho = args.rho;
    if (args.eps > 0) cfg.stage1.epsilon = cfg.stage2.epsilon = args.eps;
    if (args.epochs2 > 0) cfg.stage2.epochs = args.epochs2;
    if (args.batch2 > 0) cfg.stage2.batch_size = args.batch2;
    if (args.lr2 > 0) cfg.stage2.learning_rate = args.lr2;
    return cfg;
}

int run_train_command(const CommonGridArgs& args, const std::string& train_path,
                      const std::string& test_path, const std::string& strategy,
                      const std::string& save_network_path,
                      const std::string& init_network_path) {
    tsr::ExperimentConfig cfg = build_config(args);
    tsr::Dataset train_ds = tsr::load_csv(train_path);

    tsr::NetConfig net_cfg;
    net_cfg.input_dim = static_cast<int>(train_ds.dim());
    net_cfg.body_dims = cfg.body_dims;
    net_cfg.head_hidden = cfg.head_hidden;
    net_cfg.num_classes = train_ds.num_classes;

    tsr::StrategySpec spec = tsr::parse_strategy(strategy, cfg.smote_k);
    tsr::SeededRng rng(cfg.master_seed);

    tsr::Network net;
    if (!init_network_path.empty()) {
        // warm start: reuse a saved network's parameters instead of init
        net = tsr::load_network(init_network_path);
        if (net.config.input_dim != net_cfg.input_dim ||
            net.config.num_classes < net_cfg.num_classes)
            throw tsr::ConfigError("--init-network shape does not match the training data");
        tsr::TrainConfig s1 = cfg.stage1;
        s1.seed = rng.substream("s1.train").seed();
        net = tsr::train(net, train_ds, s1);
    } else {
        net = tsr::run_strategy(train_ds, spec, net_cfg, cfg.stage1, cfg.stage2, rng);
    }

    if (!save_network_path.empty()) {
        tsr::save_network(net, save_network_path);
        std::cout << "network written to " << save_network_path << "\n";
    }
    if (!test_path.empty()) {
        tsr::Dataset test_ds = tsr::load_csv(test_path);
        tsr::EvalResult res = tsr::evaluate(net, test_ds);
        std::printf("acc,%s\n", tsr::format_double(res.acc).c_str());
        std::printf("avacc,%s\n", tsr::format_double(res.avacc).c_str());
        std::printf("cba,%s\n", tsr::format_double(res.cba).c_str());
        std::printf("mavg,%s\n", tsr::format_double(res.mavg).c_str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-stage resampling toolkit for imbalanced classification"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a synthetic blob dataset as CSV");
    tsr::SyntheticSpec gen_spec;
    std::string gen_out = "data.csv";
    std::uint64_t gen_seed = 0;
    gen->add_option("--classes", gen_spec.num_classes, "number of classes");
    gen->add_option("--per-class", gen_spec.samples_per_class, "samples per class");
    gen->add_option("--dims", gen_spec.dims, "feature dimensions");
    gen->add_option("--spread", gen_spec.cluster_spread, "cluster spread");
    gen->add_option("--separation", gen_spec.class_separation, "minimum center distance");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output CSV path");

    // resample
    auto* res = app.add_subcommand("resample", "rebalance a CSV dataset file to file");
    std::string res_in, res_out, res_method = "smote";
    int res_k = 5;
    std::uint64_t res_seed = 0;
    res->add_option("--in", res_in, "input CSV")->required();
    res->add_option("--out", res_out, "output CSV")->required();
    res->add_option("--method", res_method, "none | rus | ros | smote");
    res->add_option("--k", res_k, "SMOTE neighbor count");
    res->add_option("--seed", res_seed, "resampler seed");

    // describe-imbalance
    auto* desc = app.add_subcommand("describe-imbalance",
                                    "per-class target counts for each scenario and IR");
    CommonGridArgs desc_args;
    std::string desc_out;
    add_grid_flags(desc, desc_args);
    desc->add_option("--csv-out", desc_out, "write the table to this file instead of stdout");

    // train
    auto* tr = app.add_subcommand("train", "run one strategy on a dataset");
    CommonGridArgs tr_args;
    std::string tr_train, tr_test, tr_strategy = "baseline", tr_save, tr_init;
    add_grid_flags(tr, tr_args);
    tr->add_option("--train", tr_train, "training CSV")->required();
    tr->add_option("--test", tr_test, "evaluation CSV (prints metrics)");
    tr->add_option("--strategy", tr_strategy, "strategy name");
    tr->add_option("--save-network", tr_save, "write the trained network here");
    tr->add_option("--init-network", tr_init, "warm-start from a saved network");

    // run
    auto* run = app.add_subcommand("run", "run the full experiment grid");
    CommonGridArgs run_args;
    add_grid_flags(run, run_args);

    // ir-study
    auto* study = app.add_subcommand("ir-study", "baseline-only imbalance ratio sweep");
    CommonGridArgs study_args;
    add_grid_flags(study, study_args);

    // summarize
    auto* sum = app.add_subcommand("summarize", "aggregate a results file into tables");
    std::string sum_results, sum_out;
    sum->add_option("--results", sum_results, "results CSV path")->required();
    sum->add_option("--out", sum_out, "directory for summary CSVs (default: alongside results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            tsr::SeededRng rng(gen_seed);
            tsr::Dataset ds = tsr::generate_synthetic(gen_spec, rng);
            tsr::save_csv(ds, gen_out);
            std::cout << "wrote " << ds.size() << " rows (" << gen_spec.num_classes
                      << " classes) to " << gen_out << "\n";
            return kExitOk;
        }
        if (res->parsed()) {
            tsr::Dataset ds = tsr::load_csv(res_in);
            tsr::SeededRng rng(res_seed);
            tsr::Dataset out = tsr::apply_resampler(ds, tsr::parse_resampler(res_method, res_k),
                                                    rng);
            tsr::save_csv(out, res_out);
            std::cout << "wrote " << out.size() << " rows to " << res_out << "\n";
            return kExitOk;
        }
        if (desc->parsed()) {
            tsr::ExperimentConfig cfg = build_config(desc_args);
            if (desc_out.empty()) {
                tsr::describe_imbalance(cfg, std::cout);
            } else {
                std::ofstream out(desc_out, std::ios::binary);
                if (!out) throw tsr::DataError("cannot open '" + desc_out + "' for writing");
                tsr::describe_imbalance(cfg, out);
                std::cout << "wrote " << desc_out << "\n";
            }
            return kExitOk;
        }
        if (tr->parsed())
            return run_train_command(tr_args, tr_train, tr_test, tr_strategy, tr_save, tr_init);
        if (run->parsed()) {
            tsr::GridOutcome g = tsr::run_grid(build_config(run_args));
            std::cout << "grid complete: " << (g.cells_total - g.cells_failed) << "/"
                      << g.cells_total << " cells ok, results in " << g.results_path << "\n";
            return g.cells_failed == 0 ? kExitOk : kExitPartial;
        }
        if (study->parsed()) {
            tsr::GridOutcome g = tsr::baseline_ir_study(build_config(study_args));
            std::cout << "curves written to " << g.results_path << "\n";
            return g.cells_failed == 0 ? kExitOk : kExitPartial;
        }
        if (sum->parsed()) {
            std::string out_dir = sum_out;
            if (out_dir.empty()) {
                auto slash = sum_results.find_last_of('/');
                out_dir = slash == std::string::npos ? "." : sum_results.substr(0, slash);
            }
            tsr::summarize_results(sum_results, out_dir, std::cout);
            return kExitOk;
        }
    } catch (const tsr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const tsr::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
