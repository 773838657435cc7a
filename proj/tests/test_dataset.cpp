#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "tsr/dataset.hpp"
#include "tsr/errors.hpp"
#include "test_util.hpp"

using namespace tsr;
using tsr::test::TempDir;
using tsr::test::tagged_dataset;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("rng: identical seeds give identical streams") {
    SeededRng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    SeededRng c(124);
    CHECK(a.next_u64() != c.next_u64());
}

TEST_CASE("rng: substreams are pure and label-separated") {
    SeededRng master(42);
    SeededRng s1 = master.substream("s1.train");
    master.next_u64(); // consuming the master must not affect derivation
    SeededRng s2 = master.substream("s1.train");
    CHECK(s1.seed() == s2.seed());
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(master.substream("s1.train").seed() != master.substream("s2.train").seed());
    // documented derivation
    CHECK(s1.seed() == mix64(42ull ^ fnv1a64("s1.train")));
}

TEST_CASE("rng: known fnv1a64 values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("rng: next_below stays in range and covers it") {
    SeededRng rng(7);
    std::set<std::size_t> seen;
    for (int i = 0; i < 1000; ++i) {
        std::size_t v = rng.next_below(5);
        CHECK(v < 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("rng: next_double in [0,1), next_normal roughly standard") {
    SeededRng rng(9);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double z = rng.next_normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.05);
}

TEST_CASE("load_csv parses a small file") {
    TempDir dir;
    auto path = dir.file("small.csv");
    write_file(path, "label,f0,f1\n0,1.5,2.5\n1,-1,0.25\n0,3,4\n");
    Dataset ds = load_csv(path);
    CHECK(ds.size() == 3);
    CHECK(ds.dim() == 2);
    CHECK(ds.num_classes == 2);
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.features(1, 1) == 0.25);
}

TEST_CASE("load_csv rejects bad input") {
    TempDir dir;
    CHECK_THROWS_AS(load_csv(dir.file("missing.csv")), DataError);

    auto header_only = dir.file("header_only.csv");
    write_file(header_only, "label,f0,f1\n");
    CHECK_THROWS_WITH_AS(load_csv(header_only), doctest::Contains("empty dataset"), DataError);

    auto negative = dir.file("negative.csv");
    write_file(negative, "label,f0\n0,1\n-1,2\n");
    CHECK_THROWS_WITH_AS(load_csv(negative), doctest::Contains("line 3"), DataError);

    auto ragged = dir.file("ragged.csv");
    write_file(ragged, "label,f0,f1\n0,1\n");
    CHECK_THROWS_WITH_AS(load_csv(ragged), doctest::Contains("line 2"), DataError);

    auto float_label = dir.file("float_label.csv");
    write_file(float_label, "label,f0\n0.5,1\n");
    CHECK_THROWS_AS(load_csv(float_label), DataError);

    auto inf_feature = dir.file("inf.csv");
    write_file(inf_feature, "label,f0\n0,inf\n");
    CHECK_THROWS_AS(load_csv(inf_feature), DataError);

    auto bad_header = dir.file("bad_header.csv");
    write_file(bad_header, "f0,label\n1,0\n");
    CHECK_THROWS_AS(load_csv(bad_header), DataError);
}

TEST_CASE("save/load round-trips exactly") {
    TempDir dir;
    SeededRng rng(11);
    Dataset ds;
    ds.num_classes = 3;
    ds.features = Matrix(20, 4);
    for (double& v : ds.features.data) v = rng.next_normal() * 1e3;
    for (int i = 0; i < 20; ++i) ds.labels.push_back(i % 3);

    auto path = dir.file("roundtrip.csv");
    save_csv(ds, path);
    CHECK(load_csv(path) == ds);
}

TEST_CASE("save_csv writes full-precision decimals") {
    TempDir dir;
    Dataset ds;
    ds.num_classes = 1;
    ds.features = Matrix(1, 1);
    ds.features(0, 0) = 0.1;
    ds.labels = {0};
    auto path = dir.file("precision.csv");
    save_csv(ds, path);
    CHECK(read_file(path) == "label,f0\n0,0.10000000000000001\n");
}

TEST_CASE("save_csv rejects the empty dataset") {
    TempDir dir;
    Dataset ds;
    ds.num_classes = 1;
    ds.features = Matrix(0, 2);
    CHECK_THROWS_AS(save_csv(ds, dir.file("empty.csv")), DataError);
}

TEST_CASE("class_counts") {
    auto ds = tagged_dataset({0, 0, 1, 2});
    CHECK(class_counts(ds) == std::vector<std::size_t>{2, 1, 1});

    auto balanced = tagged_dataset(tsr::test::balanced_labels(8, 625));
    CHECK(class_counts(balanced) == std::vector<std::size_t>(8, 625));

    Dataset all_zero = tagged_dataset({0, 0, 0});
    all_zero.num_classes = 2;
    CHECK(class_counts(all_zero) == std::vector<std::size_t>{3, 0});
}

TEST_CASE("take_subset keeps order and allows duplicates") {
    auto ds = tagged_dataset({0, 1, 0, 1, 0});

    std::vector<std::size_t> all = {0, 1, 2, 3, 4};
    CHECK(take_subset(ds, all) == ds);

    std::vector<std::size_t> dup = {2, 2};
    Dataset two = take_subset(ds, dup);
    CHECK(two.size() == 2);
    CHECK(two.features.row(0)[0] == 2.0);
    CHECK(two.features.row(1)[0] == 2.0);
    CHECK(two.labels == std::vector<int>{0, 0});

    Dataset empty = take_subset(ds, std::vector<std::size_t>{});
    CHECK(empty.size() == 0);

    std::vector<std::size_t> bad = {5};
    CHECK_THROWS_AS(take_subset(ds, bad), DataError);
}

TEST_CASE("stratified_kfold: even case gives one sample per class per fold") {
    auto ds = tagged_dataset(tsr::test::balanced_labels(8, 10));
    SeededRng rng(3);
    FoldAssignment fa = stratified_kfold(ds, 10, rng);
    for (int f = 0; f < 10; ++f) {
        std::vector<int> per_class(8, 0);
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (fa.fold_of[i] == f) per_class[ds.labels[i]]++;
        CHECK(per_class == std::vector<int>(8, 1));
    }
}

TEST_CASE("stratified_kfold: deterministic under the seed") {
    auto ds = tagged_dataset(tsr::test::balanced_labels(4, 25));
    SeededRng a(17), b(17);
    CHECK(stratified_kfold(ds, 5, a).fold_of == stratified_kfold(ds, 5, b).fold_of);
}

TEST_CASE("stratified_kfold: 625 samples over 10 folds -> five 63s then five 62s") {
    auto ds = tagged_dataset(std::vector<int>(625, 0));
    SeededRng rng(5);
    FoldAssignment fa = stratified_kfold(ds, 10, rng);
    std::vector<int> sizes(10, 0);
    for (int f : fa.fold_of) sizes[f]++;
    CHECK(sizes == std::vector<int>{63, 63, 63, 63, 63, 62, 62, 62, 62, 62});
}

TEST_CASE("stratified_kfold: per-class fold sizes differ by at most one") {
    SeededRng datagen(31);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 2 + int(datagen.next_below(5));
        int k = 2 + int(datagen.next_below(6));
        std::vector<int> labels;
        for (int c = 0; c < m; ++c) {
            int n = k + int(datagen.next_below(40));
            for (int i = 0; i < n; ++i) labels.push_back(c);
        }
        datagen.shuffle(labels);
        auto ds = tagged_dataset(labels);
        SeededRng rng(trial);
        FoldAssignment fa = stratified_kfold(ds, k, rng);
        for (int c = 0; c < m; ++c) {
            std::vector<int> per_fold(k, 0);
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (ds.labels[i] == c) per_fold[fa.fold_of[i]]++;
            int lo = *std::min_element(per_fold.begin(), per_fold.end());
            int hi = *std::max_element(per_fold.begin(), per_fold.end());
            CHECK(hi - lo <= 1);
        }
    }
}

TEST_CASE("stratified_kfold: class smaller than k rejected") {
    auto ds = tagged_dataset({0, 0, 0, 1});
    SeededRng rng(1);
    CHECK_THROWS_WITH_AS(stratified_kfold(ds, 3, rng), doctest::Contains("fewer than k"),
                         DataError);
    CHECK_THROWS_AS(stratified_kfold(ds, 1, rng), ConfigError);
}

TEST_CASE("fold index helpers partition the rows") {
    auto ds = tagged_dataset(tsr::test::balanced_labels(3, 9));
    SeededRng rng(2);
    FoldAssignment fa = stratified_kfold(ds, 3, rng);
    for (int f = 0; f < 3; ++f) {
        auto test_idx = fold_test_indices(fa, f);
        auto train_idx = fold_train_indices(fa, f);
        CHECK(test_idx.size() + train_idx.size() == ds.size());
        std::set<std::size_t> all(test_idx.begin(), test_idx.end());
        all.insert(train_idx.begin(), train_idx.end());
        CHECK(all.size() == ds.size());
    }
}
