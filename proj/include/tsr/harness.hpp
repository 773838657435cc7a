#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsr/imbalance.hpp"
#include "tsr/model.hpp"
#include "tsr/synthetic.hpp"

namespace tsr {

/// Full experiment grid description: folds x scenarios x IR levels x
/// strategies, all seeded from one master seed.
struct ExperimentConfig {
    std::string dataset_csv;  // empty -> generate from `synthetic`
    SyntheticSpec synthetic;

    int num_folds = 10;
    std::vector<Scenario> scenarios = all_scenarios();
    std::vector<double> ir_levels = {2.0, 5.0, 10.0};
    std::vector<std::string> strategies = default_strategies();
    int smote_k = 5;

    std::vector<int> body_dims = {32, 16};
    int head_hidden = 16;
    TrainConfig stage1; // per-cell seed/scope overridden by the pipeline
    TrainConfig stage2;

    std::uint64_t master_seed = 0;
    RatioMode ratio_mode = RatioMode::RatioLinear;
    std::string output_dir = "results";
    int workers = 1; // 1 = serial reference mode
    bool strict = false;

    static std::vector<std::string> default_strategies();
};

// JSON config file; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

// The configured dataset: loaded from CSV, or blobs drawn from the
// "data" substream of the master seed.
Dataset experiment_dataset(const ExperimentConfig& cfg);

struct ResultRow {
    std::string scenario;
    std::string ir_text; // canonical "%g" spelling, doubles as the cell key part
    double ir = 0.0;
    int fold = 0;
    std::string strategy;
    std::string metric; // acc | avacc | cba | mavg | error
    double value = 0.0;
};

std::vector<ResultRow> read_results_csv(const std::string& path);
std::string format_ir(double ir);

struct GridOutcome {
    std::size_t cells_total = 0;
    std::size_t cells_failed = 0;
    std::string results_path;
};

// Runs the grid, writing <output_dir>/results.csv incrementally (one cell =
// 4 metric rows, or 1 error row in non-strict mode). Cells already complete
// in an existing results file are reused verbatim, so an interrupted run can
// be resumed and still end byte-identical to an uninterrupted one.
//
// Substreams of the master seed, so any cell is reproducible in isolation:
//   "data"                          synthetic dataset draw
//   "cv"                            fold assignment
//   "order/fold=F"                  per-fold class ordering
//   "induce/fold=F/scenario=S"      per-class induction shuffles
//   "cell/fold=F/scenario=S/ir=R/strategy=T"   everything inside one cell
GridOutcome run_grid(const ExperimentConfig& cfg);

// Baseline-only sweep over the configured levels (1.0 prepended when absent)
// aggregated to <output_dir>/ir_curves.csv: scenario,metric,ir,mean,std.
GridOutcome baseline_ir_study(const ExperimentConfig& cfg);

// Per-(scenario, IR, metric) means with the best strategy marked, plus
// overall means and average ranks. Writes summary_table.csv and
// summary_overall.csv next to the results and prints a readable report.
// Errors if the results are not a complete factorial.
void summarize_results(const std::string& results_csv, const std::string& output_dir,
                       std::ostream& report);

// The per-class target counts behind each (scenario, IR) pair:
// scenario,ir,position,count,total.
void describe_imbalance(const ExperimentConfig& cfg, std::ostream& out);

} // namespace tsr
