#include "tsr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tsr/errors.hpp"
#include "tsr/pipeline.hpp"

namespace tsr {

namespace {

const char* kResultsHeader = "scenario,ir,fold,strategy,metric,value";
const char* kMetricNames[] = {"acc", "avacc", "cba", "mavg"};

} // namespace

std::vector<std::string> ExperimentConfig::default_strategies() {
    return {"baseline", "is:rus",  "is:ros",         "is:smote",    "fs:rus",
            "fs:ros",   "fs:smote", "ts:smote+smote", "ts:smote+rus"};
}

std::string format_ir(double ir) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", ir);
    return buf;
}

// ---------------------------------------------------------------------------
// Config

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

TrainConfig train_from_json(const nlohmann::json& j, TrainConfig base, const std::string& where) {
    check_keys(j, {"epochs", "batch_size", "learning_rate", "rho", "epsilon"}, where);
    base.epochs = j.value("epochs", base.epochs);
    base.batch_size = j.value("batch_size", base.batch_size);
    base.learning_rate = j.value("learning_rate", base.learning_rate);
    base.rho = j.value("rho", base.rho);
    base.epsilon = j.value("epsilon", base.epsilon);
    return base;
}

void validate_config(ExperimentConfig& cfg) {
    if (cfg.num_folds < 2) throw ConfigError("config: num_folds must be >= 2");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    if (cfg.scenarios.empty()) throw ConfigError("config: no scenarios");
    if (cfg.ir_levels.empty()) throw ConfigError("config: no ir_levels");
    if (cfg.strategies.empty()) throw ConfigError("config: no strategies");

    std::set<Scenario> seen_s(cfg.scenarios.begin(), cfg.scenarios.end());
    if (seen_s.size() != cfg.scenarios.size())
        throw ConfigError("config: duplicate scenarios");
    std::set<std::string> seen_t(cfg.strategies.begin(), cfg.strategies.end());
    if (seen_t.size() != cfg.strategies.size())
        throw ConfigError("config: duplicate strategies");

    std::sort(cfg.ir_levels.begin(), cfg.ir_levels.end());
    for (std::size_t i = 0; i < cfg.ir_levels.size(); ++i) {
        if (cfg.ir_levels[i] < 1.0)
            throw ConfigError("config: ir level " + format_ir(cfg.ir_levels[i]) + " is below 1");
        if (i > 0 && cfg.ir_levels[i] == cfg.ir_levels[i - 1])
            throw ConfigError("config: duplicate ir level " + format_ir(cfg.ir_levels[i]));
    }
    for (const auto& name : cfg.strategies) parse_strategy(name, cfg.smote_k); // validate now
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }

    ExperimentConfig cfg;
    try {
        check_keys(j,
                   {"dataset", "synthetic", "num_folds", "scenarios", "ir_levels", "strategies",
                    "smote_k", "net", "train", "train_stage2", "master_seed", "ratio_mode",
                    "output_dir", "workers", "strict"},
                   "top level");
        cfg.dataset_csv = j.value("dataset", cfg.dataset_csv);
        if (j.contains("synthetic")) {
            const auto& s = j["synthetic"];
            check_keys(s,
                       {"num_classes", "samples_per_class", "dims", "cluster_spread",
                        "class_separation"},
                       "synthetic");
            cfg.synthetic.num_classes = s.value("num_classes", cfg.synthetic.num_classes);
            cfg.synthetic.samples_per_class =
                s.value("samples_per_class", cfg.synthetic.samples_per_class);
            cfg.synthetic.dims = s.value("dims", cfg.synthetic.dims);
            cfg.synthetic.cluster_spread = s.value("cluster_spread", cfg.synthetic.cluster_spread);
            cfg.synthetic.class_separation =
                s.value("class_separation", cfg.synthetic.class_separation);
        }
        cfg.num_folds = j.value("num_folds", cfg.num_folds);
        if (j.contains("scenarios")) {
            cfg.scenarios.clear();
            for (const auto& s : j["scenarios"])
                cfg.scenarios.push_back(parse_scenario(s.get<std::string>()));
        }
        if (j.contains("ir_levels"))
            cfg.ir_levels = j["ir_levels"].get<std::vector<double>>();
        if (j.contains("strategies"))
            cfg.strategies = j["strategies"].get<std::vector<std::string>>();
        cfg.smote_k = j.value("smote_k", cfg.smote_k);
        if (j.contains("net")) {
            const auto& n = j["net"];
            check_keys(n, {"body_dims", "head_hidden"}, "net");
            if (n.contains("body_dims")) cfg.body_dims = n["body_dims"].get<std::vector<int>>();
            cfg.head_hidden = n.value("head_hidden", cfg.head_hidden);
        }
        if (j.contains("train"))
            cfg.stage1 = train_from_json(j["train"], cfg.stage1, "train");
        cfg.stage2 = cfg.stage1;
        if (j.contains("train_stage2"))
            cfg.stage2 = train_from_json(j["train_stage2"], cfg.stage2, "train_stage2");
        cfg.master_seed = j.value("master_seed", cfg.master_seed);
        if (j.contains("ratio_mode"))
            cfg.ratio_mode = parse_ratio_mode(j["ratio_mode"].get<std::string>());
        cfg.output_dir = j.value("output_dir", cfg.output_dir);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.strict = j.value("strict", cfg.strict);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    validate_config(cfg);
    return cfg;
}

Dataset experiment_dataset(const ExperimentConfig& cfg) {
    if (!cfg.dataset_csv.empty()) return load_csv(cfg.dataset_csv);
    SeededRng rng = SeededRng(cfg.master_seed).substream("data");
    return generate_synthetic(cfg.synthetic, rng);
}

// ---------------------------------------------------------------------------
// Results file

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open results '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsHeader)
        throw DataError(path + ": unexpected header '" + line + "'");

    std::vector<ResultRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        ResultRow row;
        std::string fold_text, value_text;
        if (!std::getline(ss, row.scenario, ',') || !std::getline(ss, row.ir_text, ',') ||
            !std::getline(ss, fold_text, ',') || !std::getline(ss, row.strategy, ',') ||
            !std::getline(ss, row.metric, ',') || !std::getline(ss, value_text))
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected 6 fields");
        try {
            row.ir = std::stod(row.ir_text);
            row.fold = std::stoi(fold_text);
            row.value = std::stod(value_text);
        } catch (const std::exception&) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": bad numeric field");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Grid runner

namespace {

struct CellSpec {
    int fold = 0;
    std::string scenario;
    std::string ir_text;
    std::string strategy;
    const Dataset* train = nullptr; // null if induction failed
    const Dataset* test = nullptr;
    std::string induce_error;

    std::string key() const {
        return scenario + "," + ir_text + "," + std::to_string(fold) + "," + strategy;
    }
    std::string rng_label() const {
        return "cell/fold=" + std::to_string(fold) + "/scenario=" + scenario +
               "/ir=" + ir_text + "/strategy=" + strategy;
    }
};

// Lines already present in a partial results file, grouped per complete cell.
std::map<std::string, std::vector<std::string>> load_complete_cells(const std::string& path) {
    std::map<std::string, std::vector<std::string>> cells;
    if (!std::filesystem::exists(path)) return cells;

    std::vector<ResultRow> rows;
    try {
        rows = read_results_csv(path);
    } catch (const DataError&) {
        return cells; // unreadable partial file: recompute everything
    }
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> grouped;
    for (const auto& r : rows) {
        std::string key = r.scenario + "," + r.ir_text + "," + std::to_string(r.fold) + "," +
                          r.strategy;
        std::string line = key + "," + r.metric + "," +
                           (r.metric == "error" ? "nan" : format_double(r.value));
        grouped[key].emplace_back(r.metric, std::move(line));
    }
    for (auto& [key, entries] : grouped) {
        bool complete = false;
        if (entries.size() == 1 && entries[0].first == "error") complete = true;
        if (entries.size() == 4) {
            complete = true;
            for (int m = 0; m < 4; ++m)
                if (entries[m].first != kMetricNames[m]) complete = false;
        }
        if (!complete) continue;
        auto& lines = cells[key];
        for (auto& [metric, line] : entries) lines.push_back(std::move(line));
    }
    return cells;
}

std::vector<std::string> compute_cell(const ExperimentConfig& cfg, const Dataset& full,
                                      const CellSpec& cell) {
    if (!cell.train) throw DataError(cell.induce_error);

    SeededRng cell_rng = SeededRng(cfg.master_seed).substream(cell.rng_label());
    StrategySpec spec = parse_strategy(cell.strategy, cfg.smote_k);
    NetConfig net_cfg;
    net_cfg.input_dim = static_cast<int>(full.dim());
    net_cfg.body_dims = cfg.body_dims;
    net_cfg.head_hidden = cfg.head_hidden;
    net_cfg.num_classes = full.num_classes;

    Network net = run_strategy(*cell.train, spec, net_cfg, cfg.stage1, cfg.stage2, cell_rng);
    EvalResult res = evaluate(net, *cell.test);

    const double values[] = {res.acc, res.avacc, res.cba, res.mavg};
    std::vector<std::string> lines;
    for (int m = 0; m < 4; ++m)
        lines.push_back(cell.key() + "," + kMetricNames[m] + "," + format_double(values[m]));
    return lines;
}

// All the per-fold data a grid needs, precomputed so cells are independent.
struct GridData {
    Dataset full;
    std::vector<Dataset> train_sets, test_sets;                  // per fold
    std::vector<std::vector<std::vector<Dataset>>> induced;      // [fold][scenario][level]
    std::vector<std::vector<std::string>> induce_errors;         // [fold][scenario]
};

GridData prepare_grid(const ExperimentConfig& cfg) {
    GridData gd;
    gd.full = experiment_dataset(cfg);
    SeededRng master(cfg.master_seed);

    SeededRng cv_rng = master.substream("cv");
    FoldAssignment fa = stratified_kfold(gd.full, cfg.num_folds, cv_rng);

    for (int f = 0; f < cfg.num_folds; ++f) {
        gd.test_sets.push_back(take_subset(gd.full, fold_test_indices(fa, f)));
        const Dataset& train = gd.train_sets.emplace_back(
            take_subset(gd.full, fold_train_indices(fa, f)));

        SeededRng order_rng = master.substream("order/fold=" + std::to_string(f));
        std::vector<int> class_order(gd.full.num_classes);
        for (int c = 0; c < gd.full.num_classes; ++c) class_order[c] = c;
        order_rng.shuffle(class_order);

        auto counts = class_counts(train);
        std::size_t n = *std::max_element(counts.begin(), counts.end());

        auto& per_scenario = gd.induced.emplace_back();
        auto& per_errors = gd.induce_errors.emplace_back();
        for (Scenario s : cfg.scenarios) {
            ImbalancePlan plan;
            plan.scenario = s;
            plan.class_order = class_order;
            plan.levels = cfg.ir_levels;
            plan.n_per_class = n;
            plan.ratio_mode = cfg.ratio_mode;
            SeededRng induce_rng = master.substream("induce/fold=" + std::to_string(f) +
                                                    "/scenario=" + to_string(s));
            try {
                per_scenario.push_back(induce(train, plan, induce_rng));
                per_errors.emplace_back();
            } catch (const std::exception& e) {
                if (cfg.strict) throw;
                per_scenario.emplace_back();
                per_errors.emplace_back(e.what());
            }
        }
    }
    return gd;
}

std::vector<CellSpec> grid_cells(const ExperimentConfig& cfg, const GridData& gd) {
    std::vector<CellSpec> cells;
    for (int f = 0; f < cfg.num_folds; ++f) {
        for (std::size_t si = 0; si < cfg.scenarios.size(); ++si) {
            for (std::size_t li = 0; li < cfg.ir_levels.size(); ++li) {
                for (const auto& strategy : cfg.strategies) {
                    CellSpec cell;
                    cell.fold = f;
                    cell.scenario = to_string(cfg.scenarios[si]);
                    cell.ir_text = format_ir(cfg.ir_levels[li]);
                    cell.strategy = strategy;
                    if (gd.induce_errors[f][si].empty())
                        cell.train = &gd.induced[f][si][li];
                    else
                        cell.induce_error = gd.induce_errors[f][si];
                    cell.test = &gd.test_sets[f];
                    cells.push_back(std::move(cell));
                }
            }
        }
    }
    return cells;
}

} // namespace

GridOutcome run_grid(const ExperimentConfig& cfg) {
    ExperimentConfig checked = cfg;
    validate_config(checked);

    std::filesystem::create_directories(checked.output_dir);
    const std::string results_path = checked.output_dir + "/results.csv";

    auto stored = load_complete_cells(results_path);
    GridData gd = prepare_grid(checked);
    auto cells = grid_cells(checked, gd);

    std::ofstream out(results_path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + results_path + "' for writing");
    out << kResultsHeader << "\n";

    GridOutcome outcome;
    outcome.cells_total = cells.size();
    outcome.results_path = results_path;

    auto write_block = [&out](const std::vector<std::string>& lines) {
        for (const auto& line : lines) out << line << "\n";
        out.flush();
    };
    auto error_block = [](const CellSpec& cell, const std::string& what) {
        std::cerr << "[tsr] cell " << cell.key() << " failed: " << what << "\n";
        return std::vector<std::string>{cell.key() + ",error,nan"};
    };
    auto is_error_block = [](const std::vector<std::string>& lines) {
        return lines.size() == 1 && lines[0].find(",error,") != std::string::npos;
    };

    if (checked.workers <= 1) {
        for (const auto& cell : cells) {
            std::vector<std::string> lines;
            if (auto it = stored.find(cell.key()); it != stored.end()) {
                lines = it->second;
            } else {
                try {
                    lines = compute_cell(checked, gd.full, cell);
                } catch (const std::exception& e) {
                    if (checked.strict) throw;
                    lines = error_block(cell, e.what());
                }
            }
            if (is_error_block(lines)) outcome.cells_failed++;
            write_block(lines);
        }
        return outcome;
    }

    // Parallel: reused cells first, then computed blocks in completion order.
    std::vector<const CellSpec*> todo;
    for (const auto& cell : cells) {
        if (auto it = stored.find(cell.key()); it != stored.end()) {
            if (is_error_block(it->second)) outcome.cells_failed++;
            write_block(it->second);
        } else {
            todo.push_back(&cell);
        }
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{0};
    std::atomic<bool> stop{false};
    std::mutex io_mutex;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            if (stop.load()) return;
            std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const CellSpec& cell = *todo[i];
            std::vector<std::string> lines;
            try {
                lines = compute_cell(checked, gd.full, cell);
            } catch (const std::exception& e) {
                if (checked.strict) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    stop.store(true);
                    return;
                }
                lines = error_block(cell, e.what());
                failed.fetch_add(1);
            }
            std::lock_guard<std::mutex> lock(io_mutex);
            write_block(lines);
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < checked.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    outcome.cells_failed += failed.load();
    return outcome;
}

// ---------------------------------------------------------------------------
// IR study

GridOutcome baseline_ir_study(const ExperimentConfig& cfg) {
    ExperimentConfig study = cfg;
    study.strategies = {"baseline"};
    if (std::find(study.ir_levels.begin(), study.ir_levels.end(), 1.0) == study.ir_levels.end())
        study.ir_levels.insert(study.ir_levels.begin(), 1.0);

    GridOutcome outcome = run_grid(study);
    auto rows = read_results_csv(outcome.results_path);

    // mean/std across folds per (scenario, metric, ir)
    std::map<std::string, std::vector<double>> groups; // key -> fold values
    for (const auto& r : rows) {
        if (r.metric == "error")
            throw DataError("ir study: cell " + r.scenario + "," + r.ir_text + ",fold " +
                            std::to_string(r.fold) + " failed; curves need a complete grid");
        groups[r.scenario + "," + r.metric + "," + r.ir_text].push_back(r.value);
    }

    const std::string curve_path = study.output_dir + "/ir_curves.csv";
    std::ofstream out(curve_path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + curve_path + "' for writing");
    out << "scenario,metric,ir,mean,std\n";
    std::sort(study.ir_levels.begin(), study.ir_levels.end());
    for (Scenario s : study.scenarios) {
        for (const char* metric : kMetricNames) {
            for (double ir : study.ir_levels) {
                auto key = to_string(s) + "," + metric + "," + format_ir(ir);
                auto it = groups.find(key);
                if (it == groups.end())
                    throw DataError("ir study: no results for " + key);
                const auto& v = it->second;
                double mean = 0.0;
                for (double x : v) mean += x;
                mean /= static_cast<double>(v.size());
                double var = 0.0;
                for (double x : v) var += (x - mean) * (x - mean);
                double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
                out << key << "," << format_double(mean) << "," << format_double(sd) << "\n";
            }
        }
    }
    if (!out) throw DataError("write failure on '" + curve_path + "'");
    outcome.results_path = curve_path;
    return outcome;
}

// ---------------------------------------------------------------------------
// Summaries

namespace {

template <class T>
std::vector<T> unique_in_order(const std::vector<T>& xs) {
    std::vector<T> out;
    for (const auto& x : xs)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    return out;
}

} // namespace

void summarize_results(const std::string& results_csv, const std::string& output_dir,
                       std::ostream& report) {
    auto rows = read_results_csv(results_csv);
    if (rows.empty()) throw DataError("summarize: no result rows in '" + results_csv + "'");

    std::vector<std::string> scenarios, ir_texts, strategies;
    std::vector<int> folds;
    for (const auto& r : rows) {
        scenarios.push_back(r.scenario);
        ir_texts.push_back(r.ir_text);
        strategies.push_back(r.strategy);
        folds.push_back(r.fold);
    }
    scenarios = unique_in_order(scenarios);
    ir_texts = unique_in_order(ir_texts);
    strategies = unique_in_order(strategies);
    folds = unique_in_order(folds);
    std::sort(folds.begin(), folds.end());

    std::map<std::string, double> value_of; // scenario,ir,fold,strategy,metric -> value
    std::vector<std::string> failed;
    for (const auto& r : rows) {
        if (r.metric == "error") {
            failed.push_back(r.scenario + "," + r.ir_text + "," + std::to_string(r.fold) + "," +
                             r.strategy);
            continue;
        }
        value_of[r.scenario + "," + r.ir_text + "," + std::to_string(r.fold) + "," + r.strategy +
                 "," + r.metric] = r.value;
    }

    std::vector<std::string> missing = failed;
    for (const auto& s : scenarios)
        for (const auto& ir : ir_texts)
            for (int f : folds)
                for (const auto& t : strategies)
                    for (const char* m : kMetricNames) {
                        auto key = s + "," + ir + "," + std::to_string(f) + "," + t + "," + m;
                        if (!value_of.contains(key)) {
                            missing.push_back(s + "," + ir + "," + std::to_string(f) + "," + t);
                            break;
                        }
                    }
    missing = unique_in_order(missing);
    if (!missing.empty()) {
        std::string msg = "summarize: incomplete factorial, missing cells:";
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += "\n  " + missing[i];
        if (missing.size() > 20)
            msg += "\n  ... (" + std::to_string(missing.size() - 20) + " more)";
        throw DataError(msg);
    }

    std::filesystem::create_directories(output_dir);
    auto value = [&](const std::string& s, const std::string& ir, int f, const std::string& t,
                     const std::string& m) {
        return value_of.at(s + "," + ir + "," + std::to_string(f) + "," + t + "," + m);
    };

    // Per-(scenario, IR, metric) means across folds, best strategy marked.
    std::ofstream table(output_dir + "/summary_table.csv", std::ios::binary);
    if (!table) throw DataError("cannot write summary_table.csv");
    table << "scenario,ir,metric,strategy,mean,is_best\n";
    for (const auto& s : scenarios) {
        for (const auto& ir : ir_texts) {
            report << "--- scenario " << s << ", IR " << ir << " ---\n";
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%-8s", "metric");
            report << buf;
            for (const auto& t : strategies) {
                std::snprintf(buf, sizeof(buf), " %14s", t.c_str());
                report << buf;
            }
            report << "\n";
            for (const char* m : kMetricNames) {
                std::vector<double> means;
                for (const auto& t : strategies) {
                    double sum = 0.0;
                    for (int f : folds) sum += value(s, ir, f, t, m);
                    means.push_back(sum / static_cast<double>(folds.size()));
                }
                double best = *std::max_element(means.begin(), means.end());
                std::snprintf(buf, sizeof(buf), "%-8s", m);
                report << buf;
                for (std::size_t i = 0; i < strategies.size(); ++i) {
                    std::snprintf(buf, sizeof(buf), " %13.4f%c", means[i],
                                  means[i] == best ? '*' : ' ');
                    report << buf;
                    table << s << "," << ir << "," << m << "," << strategies[i] << ","
                          << format_double(means[i]) << "," << (means[i] == best ? 1 : 0) << "\n";
                }
                report << "\n";
            }
            report << "\n";
        }
    }

    // Overall means and average ranks across every (scenario, IR, fold) cell.
    std::ofstream overall(output_dir + "/summary_overall.csv", std::ios::binary);
    if (!overall) throw DataError("cannot write summary_overall.csv");
    overall << "metric,strategy,mean,avg_rank\n";
    report << "=== overall (mean over all cells, average rank in parentheses) ===\n";
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-8s", "metric");
        report << buf;
        for (const auto& t : strategies) {
            std::snprintf(buf, sizeof(buf), " %16s", t.c_str());
            report << buf;
        }
        report << "\n";
    }
    const std::size_t cell_count = scenarios.size() * ir_texts.size() * folds.size();
    for (const char* m : kMetricNames) {
        Matrix scores(cell_count, strategies.size());
        std::size_t cell = 0;
        for (const auto& s : scenarios)
            for (const auto& ir : ir_texts)
                for (int f : folds) {
                    for (std::size_t i = 0; i < strategies.size(); ++i)
                        scores(cell, i) = value(s, ir, f, strategies[i], m);
                    ++cell;
                }
        auto ranks = average_ranks(scores, true);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-8s", m);
        report << buf;
        for (std::size_t i = 0; i < strategies.size(); ++i) {
            double mean = 0.0;
            for (std::size_t c = 0; c < cell_count; ++c) mean += scores(c, i);
            mean /= static_cast<double>(cell_count);
            std::snprintf(buf, sizeof(buf), " %9.4f (%4.2f)", mean, ranks[i]);
            report << buf;
            overall << m << "," << strategies[i] << "," << format_double(mean) << ","
                    << format_double(ranks[i]) << "\n";
        }
        report << "\n";
    }
}

void describe_imbalance(const ExperimentConfig& cfg, std::ostream& out) {
    int m;
    std::size_t n;
    if (!cfg.dataset_csv.empty()) {
        Dataset ds = load_csv(cfg.dataset_csv);
        m = ds.num_classes;
        auto counts = class_counts(ds);
        n = *std::max_element(counts.begin(), counts.end());
    } else {
        m = cfg.synthetic.num_classes;
        n = cfg.synthetic.samples_per_class;
    }

    std::vector<int> identity_order(m);
    for (int c = 0; c < m; ++c) identity_order[c] = c;

    out << "scenario,ir,position,count,total\n";
    for (Scenario s : cfg.scenarios) {
        for (double ir : cfg.ir_levels) {
            auto ratios = class_ratios(s, ir, m, identity_order, cfg.ratio_mode);
            auto counts = target_counts(ratios, n);
            std::size_t total = 0;
            for (auto c : counts) total += c;
            for (int p = 0; p < m; ++p)
                out << to_string(s) << "," << format_ir(ir) << "," << p + 1 << "," << counts[p]
                    << "," << total << "\n";
        }
    }
}

} // namespace tsr
