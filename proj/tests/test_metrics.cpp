#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsr/errors.hpp"
#include "tsr/metrics.hpp"
#include "tsr/rng.hpp"

using namespace tsr;

namespace {

ConfusionMatrix make_cm(int m, const std::vector<std::int64_t>& counts) {
    ConfusionMatrix cm(m);
    cm.counts = counts;
    return cm;
}

// Random label pair with every class present in y_true.
std::pair<std::vector<int>, std::vector<int>> random_labels(SeededRng& rng, int m, int n) {
    std::vector<int> y_true, y_pred;
    for (int c = 0; c < m; ++c) y_true.push_back(c);
    while (static_cast<int>(y_true.size()) < n) y_true.push_back(int(rng.next_below(m)));
    rng.shuffle(y_true);
    for (int i = 0; i < n; ++i) y_pred.push_back(int(rng.next_below(m)));
    return {y_true, y_pred};
}

} // namespace

TEST_CASE("confusion: identity and hand tally") {
    std::vector<int> same = {0, 1, 2, 1, 0};
    auto cm = confusion(same, same, 3);
    CHECK(cm.at(0, 0) == 2);
    CHECK(cm.at(1, 1) == 2);
    CHECK(cm.at(2, 2) == 1);
    CHECK(cm.total() == 5);

    std::vector<int> y_true = {0, 0, 1, 1};
    std::vector<int> y_pred = {0, 1, 1, 1};
    auto cm2 = confusion(y_true, y_pred, 2);
    CHECK(cm2.counts == std::vector<std::int64_t>{1, 1, 0, 2});
}

TEST_CASE("confusion: guards") {
    std::vector<int> a = {0, 1}, b = {0};
    CHECK_THROWS_AS(confusion(a, b, 2), DataError);
    std::vector<int> c = {0, 2};
    CHECK_THROWS_AS(confusion(a, c, 2), DataError);
    std::vector<int> empty;
    CHECK_THROWS_AS(confusion(empty, empty, 2), DataError);
}

TEST_CASE("confusion: matches a per-sample recount on random vectors") {
    SeededRng rng(44);
    auto [y_true, y_pred] = random_labels(rng, 7, 1000);
    auto cm = confusion(y_true, y_pred, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            std::int64_t n = 0;
            for (int s = 0; s < 1000; ++s)
                if (y_true[s] == i && y_pred[s] == j) ++n;
            CHECK(cm.at(i, j) == n);
        }
}

TEST_CASE("accuracy") {
    CHECK(accuracy(make_cm(2, {3, 0, 0, 2})) == 1.0);
    CHECK(accuracy(make_cm(2, {1, 1, 0, 2})) == 0.75);
    CHECK(accuracy(make_cm(2, {0, 5, 5, 0})) == 0.0);
    CHECK_THROWS_AS(accuracy(ConfusionMatrix(2)), DataError);
}

TEST_CASE("avacc: worked cases") {
    CHECK(avacc(make_cm(2, {3, 0, 0, 2})) == 1.0);
    CHECK(avacc(make_cm(2, {8, 2, 4, 6})) == doctest::Approx(0.7).epsilon(1e-12));
    // all predictions class 0 on a balanced test set
    CHECK(avacc(make_cm(2, {5, 0, 5, 0})) == doctest::Approx(0.5).epsilon(1e-12));
    // absent class is an error, never a silent zero
    CHECK_THROWS_AS(avacc(make_cm(2, {3, 1, 0, 0})), DataError);
}

TEST_CASE("cba: worked case and guards") {
    CHECK(cba(make_cm(2, {3, 0, 0, 2})) == 1.0);
    double expect = (8.0 / 12.0 + 6.0 / 10.0) / 2.0;
    CHECK(cba(make_cm(2, {8, 2, 4, 6})) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(cba(make_cm(2, {8, 2, 4, 6})) == doctest::Approx(0.633333).epsilon(1e-6));
    // class 1 absent from rows AND columns
    CHECK_THROWS_AS(cba(make_cm(2, {3, 0, 0, 0})), DataError);
}

TEST_CASE("mavg: worked case and the zero rule") {
    CHECK(mavg(make_cm(2, {3, 0, 0, 2})) == 1.0);
    CHECK(mavg(make_cm(2, {8, 2, 4, 6})) == doctest::Approx(std::sqrt(0.48)).epsilon(1e-12));
    CHECK(mavg(make_cm(2, {8, 2, 4, 6})) == doctest::Approx(0.692820).epsilon(1e-6));
    CHECK(mavg(make_cm(2, {5, 0, 5, 0})) == 0.0);
    CHECK_THROWS_AS(mavg(make_cm(2, {3, 1, 0, 0})), DataError);
}

TEST_CASE("metric dominance and recall decomposition on random matrices") {
    SeededRng rng(321);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + int(rng.next_below(9));
        int n = m + 20 + int(rng.next_below(100));
        auto [y_true, y_pred] = random_labels(rng, m, n);
        auto cm = confusion(y_true, y_pred, m);

        double av = avacc(cm), cb = cba(cm), mg = mavg(cm), acc = accuracy(cm);
        CHECK(mg <= av + 1e-12);
        CHECK(cb <= av + 1e-12);
        CHECK(av <= 1.0);
        CHECK(mg >= 0.0);
        CHECK(cb >= 0.0);

        // accuracy = sum_i w_i * recall_i with w_i = row_i / total
        double weighted = 0.0;
        for (int i = 0; i < m; ++i)
            weighted += double(cm.at(i, i)) / double(cm.total());
        CHECK(acc == doctest::Approx(weighted).epsilon(1e-12));

        // relabeling invariance: reverse the class ids
        ConfusionMatrix rev(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) rev.at(m - 1 - i, m - 1 - j) = cm.at(i, j);
        CHECK(avacc(rev) == doctest::Approx(av).epsilon(1e-12));
        CHECK(cba(rev) == doctest::Approx(cb).epsilon(1e-12));
        CHECK(mavg(rev) == doctest::Approx(mg).epsilon(1e-12));
    }
}

TEST_CASE("average_ranks: simple orderings") {
    Matrix one(1, 3);
    one(0, 0) = 0.9; one(0, 1) = 0.8; one(0, 2) = 0.7;
    CHECK(average_ranks(one, true) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(average_ranks(one, false) == std::vector<double>{3.0, 2.0, 1.0});

    Matrix tie(1, 3);
    tie(0, 0) = 0.9; tie(0, 1) = 0.9; tie(0, 2) = 0.7;
    CHECK(average_ranks(tie, true) == std::vector<double>{1.5, 1.5, 3.0});
}

TEST_CASE("average_ranks: mean over cells") {
    Matrix scores(2, 2);
    scores(0, 0) = 1.0; scores(0, 1) = 0.0; // method 0 wins
    scores(1, 0) = 0.0; scores(1, 1) = 1.0; // method 1 wins
    CHECK(average_ranks(scores, true) == std::vector<double>{1.5, 1.5});
}

TEST_CASE("average_ranks: matches a per-cell sort oracle") {
    SeededRng rng(77);
    Matrix scores(120, 9);
    for (double& v : scores.data) v = rng.next_below(20) / 20.0; // coarse grid forces ties
    auto ranks = average_ranks(scores, true);

    std::vector<double> oracle(9, 0.0);
    for (std::size_t cell = 0; cell < scores.rows; ++cell) {
        for (std::size_t i = 0; i < 9; ++i) {
            double better = 0, equal = 0;
            for (std::size_t j = 0; j < 9; ++j) {
                if (scores(cell, j) > scores(cell, i)) better++;
                if (scores(cell, j) == scores(cell, i)) equal++;
            }
            // rank = #better + (tied group's mean position among itself)
            oracle[i] += better + (equal + 1.0) / 2.0;
        }
    }
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(ranks[i] == doctest::Approx(oracle[i] / 120.0).epsilon(1e-12));
}

TEST_CASE("average_ranks: ties-free rows sum to m(m+1)/2") {
    SeededRng rng(88);
    Matrix scores(1, 6);
    for (double& v : scores.data) v = rng.next_double(); // distinct w.p. 1
    auto ranks = average_ranks(scores, true);
    CHECK(std::accumulate(ranks.begin(), ranks.end(), 0.0) ==
          doctest::Approx(6 * 7 / 2.0).epsilon(1e-12));
}

TEST_CASE("average_ranks: NaN rejected") {
    Matrix scores(1, 2);
    scores(0, 0) = std::nan("");
    CHECK_THROWS_AS(average_ranks(scores, true), DataError);
    CHECK_THROWS_AS(average_ranks(Matrix(0, 0), true), DataError);
}
