#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tsr/dataset.hpp"

namespace tsr {

/// How minority roles are distributed over the class positions.
///   Linear         - graded ratios from 1 up to IR along the class order
///   SingleMajority - first position keeps full size, all others reduced
///   SingleMinority - only the first position is reduced
///   HalfMinority   - the first floor(M/2) positions are reduced
enum class Scenario { Linear, SingleMajority, SingleMinority, HalfMinority };

// RatioLinear interpolates the per-class *ratio* linearly (the default);
// CountLinear interpolates the per-class *count* linearly between n and n/IR.
// The two coincide for the non-linear scenarios and differ for Linear.
enum class RatioMode { RatioLinear, CountLinear };

std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view name);
std::string to_string(RatioMode m);
RatioMode parse_ratio_mode(std::string_view name);

const std::vector<Scenario>& all_scenarios();

/// Recipe for inducing nested imbalance into a balanced dataset.
struct ImbalancePlan {
    Scenario scenario = Scenario::Linear;
    std::vector<int> class_order; // permutation of [0, M); position p holds class class_order[p]
    std::vector<double> levels;   // strictly ascending imbalance ratios, all >= 1
    std::size_t n_per_class = 0;  // nominal per-class count of the balanced source
    RatioMode ratio_mode = RatioMode::RatioLinear;
};

// Positional minority mask along the class order (index 0 = first position).
// Meaningful for the three non-linear scenarios; Linear grades ratios
// continuously and returns all-false.
std::vector<bool> minority_mask(Scenario scenario, const std::vector<int>& class_order,
                                int num_classes);

// Per-position ratios r_1..r_M (returned 0-indexed). Linear mode RatioLinear:
// r_i = 1 + (ir-1)/(M-1) * (i-1). Non-linear scenarios: r_i = ir on minority
// positions, 1 elsewhere.
std::vector<double> class_ratios(Scenario scenario, double ir, int num_classes,
                                 const std::vector<int>& class_order, RatioMode mode);

// n_i = floor(n / r_i). Errors if any count would reach 0.
std::vector<std::size_t> target_counts(const std::vector<double>& ratios, std::size_t n);

// One dataset per level. Per class the row indices are shuffled once; the
// level-l dataset keeps the first n_i(l) of that shuffle, so higher-IR
// datasets are subsets of lower-IR ones. Kept rows stay in original order.
// The per-class n is re-derived from ds (plan.n_per_class +- 1 tolerated).
std::vector<Dataset> induce(const Dataset& ds, const ImbalancePlan& plan, SeededRng& rng);

// Sum of target counts at one level, using plan.n_per_class for every class.
std::size_t total_observations(const ImbalancePlan& plan, double level);

} // namespace tsr
