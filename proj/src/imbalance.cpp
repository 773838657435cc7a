#include "tsr/imbalance.hpp"

#include <algorithm>
#include <cmath>

#include "tsr/errors.hpp"

namespace tsr {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Linear: return "linear";
        case Scenario::SingleMajority: return "single-majority";
        case Scenario::SingleMinority: return "single-minority";
        case Scenario::HalfMinority: return "half-minority";
    }
    return "?";
}

Scenario parse_scenario(std::string_view name) {
    if (name == "linear") return Scenario::Linear;
    if (name == "single-majority") return Scenario::SingleMajority;
    if (name == "single-minority") return Scenario::SingleMinority;
    if (name == "half-minority") return Scenario::HalfMinority;
    throw ConfigError("unknown scenario '" + std::string(name) +
                      "' (expected linear|single-majority|single-minority|half-minority)");
}

std::string to_string(RatioMode m) {
    return m == RatioMode::RatioLinear ? "ratio-linear" : "count-linear";
}

RatioMode parse_ratio_mode(std::string_view name) {
    if (name == "ratio-linear") return RatioMode::RatioLinear;
    if (name == "count-linear") return RatioMode::CountLinear;
    throw ConfigError("unknown ratio mode '" + std::string(name) +
                      "' (expected ratio-linear|count-linear)");
}

const std::vector<Scenario>& all_scenarios() {
    static const std::vector<Scenario> all = {
        Scenario::Linear, Scenario::SingleMajority,
        Scenario::SingleMinority, Scenario::HalfMinority};
    return all;
}

namespace {

void check_permutation(const std::vector<int>& order, int num_classes) {
    if (static_cast<int>(order.size()) != num_classes)
        throw ConfigError("class order has " + std::to_string(order.size()) +
                          " entries, expected " + std::to_string(num_classes));
    std::vector<bool> seen(num_classes, false);
    for (int c : order) {
        if (c < 0 || c >= num_classes || seen[c])
            throw ConfigError("class order is not a permutation of [0, " +
                              std::to_string(num_classes) + ")");
        seen[c] = true;
    }
}

void check_plan(const ImbalancePlan& plan, int num_classes) {
    check_permutation(plan.class_order, num_classes);
    if (plan.levels.empty())
        throw ConfigError("imbalance plan has no levels");
    double prev = 0.0;
    for (double ir : plan.levels) {
        if (ir < 1.0)
            throw ConfigError("imbalance level " + std::to_string(ir) + " is below 1");
        if (ir <= prev)
            throw ConfigError("imbalance levels must be strictly ascending");
        prev = ir;
    }
    if (plan.n_per_class == 0)
        throw ConfigError("imbalance plan: n_per_class must be positive");
}

} // namespace

std::vector<bool> minority_mask(Scenario scenario, const std::vector<int>& class_order,
                                int num_classes) {
    check_permutation(class_order, num_classes);
    std::vector<bool> mask(num_classes, false);
    switch (scenario) {
        case Scenario::Linear:
            break; // graded ratios, no binary roles
        case Scenario::SingleMajority:
            std::fill(mask.begin() + 1, mask.end(), true);
            break;
        case Scenario::SingleMinority:
            mask[0] = true;
            break;
        case Scenario::HalfMinority:
            std::fill(mask.begin(), mask.begin() + num_classes / 2, true);
            break;
    }
    return mask;
}

std::vector<double> class_ratios(Scenario scenario, double ir, int num_classes,
                                 const std::vector<int>& class_order, RatioMode mode) {
    check_permutation(class_order, num_classes);
    if (ir < 1.0)
        throw ConfigError("imbalance ratio must be >= 1, got " + std::to_string(ir));
    if (num_classes < 2)
        throw ConfigError("need at least 2 classes");

    const int m = num_classes;
    std::vector<double> ratios(m, 1.0);
    if (scenario == Scenario::Linear) {
        for (int i = 0; i < m; ++i) {
            if (mode == RatioMode::RatioLinear) {
                // Single-division form keeps integer IR cases exact in doubles.
                ratios[i] = ((m - 1) + (ir - 1.0) * i) / (m - 1);
            } else {
                // Count interpolation between n and n/IR, expressed as a ratio.
                ratios[i] = ((m - 1) * ir) / ((m - 1) * ir + (1.0 - ir) * i);
            }
        }
    } else {
        auto mask = minority_mask(scenario, class_order, m);
        for (int i = 0; i < m; ++i)
            if (mask[i]) ratios[i] = ir;
    }
    return ratios;
}

std::vector<std::size_t> target_counts(const std::vector<double>& ratios, std::size_t n) {
    if (n == 0)
        throw ConfigError("target_counts: n must be positive");
    std::vector<std::size_t> counts;
    counts.reserve(ratios.size());
    for (double r : ratios) {
        if (r < 1.0)
            throw ConfigError("target_counts: ratio " + std::to_string(r) + " below 1");
        double q = static_cast<double>(n) / r;
        // Nudge before flooring: ratios like 25/7 round in doubles, and the
        // computed quotient may sit one ulp below the integer the exact
        // rational value equals.
        auto c = static_cast<std::size_t>(std::floor(q + 1e-9 * std::max(1.0, q)));
        if (c == 0)
            throw ConfigError("target_counts: ratio " + std::to_string(r) +
                              " leaves no observations of a class (n=" + std::to_string(n) + ")");
        counts.push_back(c);
    }
    return counts;
}

std::vector<Dataset> induce(const Dataset& ds, const ImbalancePlan& plan, SeededRng& rng) {
    validate(ds);
    check_plan(plan, ds.num_classes);

    const auto counts = class_counts(ds);
    for (int c = 0; c < ds.num_classes; ++c) {
        auto lo = plan.n_per_class - 1, hi = plan.n_per_class + 1;
        if (counts[c] < lo || counts[c] > hi)
            throw DataError("induce: class " + std::to_string(c) + " has " +
                            std::to_string(counts[c]) + " rows, expected " +
                            std::to_string(plan.n_per_class) + " +- 1");
    }

    // Position of each class along the plan's ordering.
    std::vector<int> position_of(ds.num_classes);
    for (int p = 0; p < ds.num_classes; ++p)
        position_of[plan.class_order[p]] = p;

    // One shuffle per class, shared by all levels: the nesting invariant.
    std::vector<std::vector<std::size_t>> shuffled(ds.num_classes);
    for (std::size_t i = 0; i < ds.size(); ++i)
        shuffled[ds.labels[i]].push_back(i);
    for (int c = 0; c < ds.num_classes; ++c)
        rng.shuffle(shuffled[c]);

    std::vector<Dataset> out;
    out.reserve(plan.levels.size());
    for (double ir : plan.levels) {
        auto ratios = class_ratios(plan.scenario, ir, ds.num_classes, plan.class_order,
                                   plan.ratio_mode);
        std::vector<std::size_t> keep;
        for (int c = 0; c < ds.num_classes; ++c) {
            auto want = target_counts({ratios[position_of[c]]}, counts[c])[0];
            keep.insert(keep.end(), shuffled[c].begin(), shuffled[c].begin() + want);
        }
        std::sort(keep.begin(), keep.end());
        out.push_back(take_subset(ds, keep));
    }
    return out;
}

std::size_t total_observations(const ImbalancePlan& plan, double level) {
    const int m = static_cast<int>(plan.class_order.size());
    auto ratios = class_ratios(plan.scenario, level, m, plan.class_order, plan.ratio_mode);
    auto counts = target_counts(ratios, plan.n_per_class);
    std::size_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

} // namespace tsr
