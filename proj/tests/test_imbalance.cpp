#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tsr/errors.hpp"
#include "tsr/imbalance.hpp"
#include "test_util.hpp"

using namespace tsr;
using tsr::test::balanced_labels;
using tsr::test::tagged_dataset;

namespace {

std::vector<int> identity_order(int m) {
    std::vector<int> order(m);
    for (int c = 0; c < m; ++c) order[c] = c;
    return order;
}

// Row identities survive subsetting via the row-index feature column.
std::set<double> row_ids(const Dataset& ds) {
    std::set<double> ids;
    for (std::size_t i = 0; i < ds.size(); ++i) ids.insert(ds.features(i, 0));
    return ids;
}

} // namespace

TEST_CASE("scenario and ratio mode names round-trip") {
    for (Scenario s : all_scenarios()) CHECK(parse_scenario(to_string(s)) == s);
    CHECK(parse_ratio_mode("ratio-linear") == RatioMode::RatioLinear);
    CHECK(parse_ratio_mode("count-linear") == RatioMode::CountLinear);
    CHECK_THROWS_AS(parse_scenario("zigzag"), ConfigError);
    CHECK_THROWS_AS(parse_ratio_mode("log"), ConfigError);
}

TEST_CASE("minority_mask positions") {
    auto order = identity_order(8);
    auto count_true = [](const std::vector<bool>& mask) {
        return std::count(mask.begin(), mask.end(), true);
    };

    auto maj = minority_mask(Scenario::SingleMajority, order, 8);
    CHECK(count_true(maj) == 7);
    CHECK_FALSE(maj[0]);

    auto min = minority_mask(Scenario::SingleMinority, order, 8);
    CHECK(count_true(min) == 1);
    CHECK(min[0]);

    auto half = minority_mask(Scenario::HalfMinority, order, 8);
    CHECK(count_true(half) == 4);
    CHECK(half[0]);
    CHECK(half[3]);
    CHECK_FALSE(half[4]);

    CHECK(count_true(minority_mask(Scenario::Linear, order, 8)) == 0);

    auto order7 = identity_order(7);
    CHECK(count_true(minority_mask(Scenario::HalfMinority, order7, 7)) == 3);

    std::vector<int> not_perm = {0, 0, 1};
    CHECK_THROWS_AS(minority_mask(Scenario::Linear, not_perm, 3), ConfigError);
}

TEST_CASE("class_ratios: linear formula") {
    auto order = identity_order(8);
    auto flat = class_ratios(Scenario::Linear, 1.0, 8, order, RatioMode::RatioLinear);
    CHECK(flat == std::vector<double>(8, 1.0));

    auto graded = class_ratios(Scenario::Linear, 10.0, 8, order, RatioMode::RatioLinear);
    CHECK(graded[0] == 1.0);
    CHECK(graded[3] == doctest::Approx(34.0 / 7.0).epsilon(1e-12));
    CHECK(graded[7] == 10.0);

    auto maj = class_ratios(Scenario::SingleMajority, 5.0, 8, order, RatioMode::RatioLinear);
    CHECK(maj == std::vector<double>{1, 5, 5, 5, 5, 5, 5, 5});

    CHECK_THROWS_AS(class_ratios(Scenario::Linear, 0.5, 8, order, RatioMode::RatioLinear),
                    ConfigError);
}

TEST_CASE("class_ratios: count-linear interpolates counts") {
    auto order = identity_order(8);
    auto r = class_ratios(Scenario::Linear, 10.0, 8, order, RatioMode::CountLinear);
    // counts n/r interpolate linearly between n and n/10
    for (int i = 0; i < 8; ++i)
        CHECK(625.0 / r[i] == doctest::Approx(625.0 + (62.5 - 625.0) * i / 7.0).epsilon(1e-12));
    // non-linear scenarios are unchanged by the mode
    CHECK(class_ratios(Scenario::HalfMinority, 10.0, 8, order, RatioMode::CountLinear) ==
          class_ratios(Scenario::HalfMinority, 10.0, 8, order, RatioMode::RatioLinear));
}

TEST_CASE("target_counts: frozen vectors for n=625, M=8") {
    auto order = identity_order(8);
    auto lin = target_counts(class_ratios(Scenario::Linear, 10.0, 8, order,
                                          RatioMode::RatioLinear), 625);
    CHECK(lin == std::vector<std::size_t>{625, 273, 175, 128, 101, 84, 71, 62});

    auto maj = target_counts(class_ratios(Scenario::SingleMajority, 10.0, 8, order,
                                          RatioMode::RatioLinear), 625);
    CHECK(maj == std::vector<std::size_t>{625, 62, 62, 62, 62, 62, 62, 62});

    auto flat = target_counts(std::vector<double>(8, 1.0), 625);
    CHECK(flat == std::vector<std::size_t>(8, 625));

    auto cl = target_counts(class_ratios(Scenario::Linear, 10.0, 8, order,
                                         RatioMode::CountLinear), 625);
    CHECK(cl == std::vector<std::size_t>{625, 544, 464, 383, 303, 223, 142, 62});
}

TEST_CASE("target_counts: rejects a vanishing class") {
    CHECK_THROWS_AS(target_counts({20.0}, 10), ConfigError);
    CHECK_THROWS_AS(target_counts({0.9}, 10), ConfigError);
    CHECK(target_counts({10.0}, 10) == std::vector<std::size_t>{1});
}

TEST_CASE("total_observations: scenario ordering at IR=10") {
    ImbalancePlan plan;
    plan.class_order = identity_order(8);
    plan.levels = {10.0};
    plan.n_per_class = 625;

    plan.scenario = Scenario::SingleMajority;
    CHECK(total_observations(plan, 10.0) == 1059);
    plan.scenario = Scenario::Linear;
    CHECK(total_observations(plan, 10.0) == 1519);
    plan.scenario = Scenario::HalfMinority;
    CHECK(total_observations(plan, 10.0) == 2748);
    plan.scenario = Scenario::SingleMinority;
    CHECK(total_observations(plan, 10.0) == 4437);

    plan.scenario = Scenario::Linear;
    CHECK(total_observations(plan, 1.0) == 8 * 625);

    // count-linear: linear and half-minority totals match up to rounding
    plan.ratio_mode = RatioMode::CountLinear;
    CHECK(total_observations(plan, 10.0) == 2746);
    std::size_t lin = total_observations(plan, 10.0);
    plan.scenario = Scenario::HalfMinority;
    std::size_t half = total_observations(plan, 10.0);
    CHECK(std::llabs(static_cast<long long>(lin) - static_cast<long long>(half)) <= 4);
}

TEST_CASE("total_observations: non-increasing in IR for every scenario") {
    for (Scenario s : all_scenarios()) {
        for (int m : {2, 5, 8}) {
            ImbalancePlan plan;
            plan.scenario = s;
            plan.class_order = identity_order(m);
            plan.levels = {10.0};
            plan.n_per_class = 625;
            std::size_t prev = std::size_t(-1);
            for (double ir = 1.0; ir <= 10.0; ir += 0.5) {
                std::size_t total = total_observations(plan, ir);
                CHECK(total <= prev);
                prev = total;
            }
        }
    }
}

TEST_CASE("induce: IR=1 level is the identity") {
    auto ds = tagged_dataset(balanced_labels(4, 20));
    ImbalancePlan plan;
    plan.scenario = Scenario::HalfMinority;
    plan.class_order = identity_order(4);
    plan.levels = {1.0};
    plan.n_per_class = 20;
    SeededRng rng(8);
    auto out = induce(ds, plan, rng);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == ds);
}

TEST_CASE("induce: single-majority IR=10 with n=625 totals 1059") {
    auto ds = tagged_dataset(balanced_labels(8, 625), 1);
    ImbalancePlan plan;
    plan.scenario = Scenario::SingleMajority;
    plan.class_order = identity_order(8);
    plan.levels = {10.0};
    plan.n_per_class = 625;
    SeededRng rng(13);
    auto out = induce(ds, plan, rng);
    CHECK(out[0].size() == 1059);
    auto counts = class_counts(out[0]);
    CHECK(counts[0] == 625);
    for (int c = 1; c < 8; ++c) CHECK(counts[c] == 62);
}

TEST_CASE("induce: nesting and role stability across random plans") {
    SeededRng gen(99);
    const std::vector<double> menu = {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0};
    for (int trial = 0; trial < 50; ++trial) {
        int m = 2 + int(gen.next_below(7));
        auto ds = tagged_dataset(balanced_labels(m, 120), 1);

        ImbalancePlan plan;
        plan.scenario = all_scenarios()[gen.next_below(4)];
        plan.class_order = identity_order(m);
        gen.shuffle(plan.class_order);
        for (double ir : menu)
            if (gen.next_below(2) == 0) plan.levels.push_back(ir);
        if (plan.levels.size() < 2) plan.levels = {2.0, 10.0};
        plan.n_per_class = 120;

        SeededRng rng(1000 + trial);
        auto out = induce(ds, plan, rng);
        REQUIRE(out.size() == plan.levels.size());

        for (std::size_t l = 1; l < out.size(); ++l) {
            auto lower = row_ids(out[l - 1]);
            auto higher = row_ids(out[l]);
            CHECK(higher.size() < lower.size()); // strict with these levels
            CHECK(std::includes(lower.begin(), lower.end(), higher.begin(), higher.end()));
        }

        // counts realize the targets exactly, in class-order positions
        for (std::size_t l = 0; l < out.size(); ++l) {
            auto ratios = class_ratios(plan.scenario, plan.levels[l], m, plan.class_order,
                                       plan.ratio_mode);
            auto counts = class_counts(out[l]);
            for (int pos = 0; pos < m; ++pos) {
                auto expect = target_counts({ratios[pos]}, 120)[0];
                CHECK(counts[plan.class_order[pos]] == expect);
            }
        }
    }
}

TEST_CASE("induce: deterministic and tolerant of +-1 class counts") {
    std::vector<int> labels = balanced_labels(3, 40);
    labels.push_back(1); // 40, 41, 40
    auto ds = tagged_dataset(labels, 1);

    ImbalancePlan plan;
    plan.scenario = Scenario::SingleMajority;
    plan.class_order = identity_order(3);
    plan.levels = {2.0, 5.0};
    plan.n_per_class = 40;

    SeededRng a(4), b(4);
    auto out1 = induce(ds, plan, a);
    auto out2 = induce(ds, plan, b);
    CHECK(out1[0] == out2[0]);
    CHECK(out1[1] == out2[1]);
    // per-class n: class 1 had 41 rows, so its IR=2 target is floor(41/2)
    CHECK(class_counts(out1[0])[1] == 20);

    plan.n_per_class = 44; // out of tolerance now
    SeededRng c(4);
    CHECK_THROWS_AS(induce(ds, plan, c), DataError);
}

TEST_CASE("induce: rejects bad plans") {
    auto ds = tagged_dataset(balanced_labels(3, 10));
    SeededRng rng(1);

    ImbalancePlan plan;
    plan.class_order = identity_order(3);
    plan.levels = {5.0, 2.0}; // not ascending
    plan.n_per_class = 10;
    CHECK_THROWS_AS(induce(ds, plan, rng), ConfigError);

    plan.levels = {2.0, 2.0};
    CHECK_THROWS_AS(induce(ds, plan, rng), ConfigError);

    plan.levels = {0.5};
    CHECK_THROWS_AS(induce(ds, plan, rng), ConfigError);

    plan.levels = {2.0};
    plan.class_order = {0, 1}; // wrong length
    CHECK_THROWS_AS(induce(ds, plan, rng), ConfigError);
}
