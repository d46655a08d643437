#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "mocsfs/dataset.hpp"
#include "mocsfs/error.hpp"

using mocsfs::BitMask;
using mocsfs::Dataset;

namespace {

std::string error_of(std::string_view text) {
  try {
    mocsfs::parse_csv(text, "t.csv");
  } catch (const mocsfs::Error& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

Dataset balanced(std::size_t classes, std::size_t per_class, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Dataset ds;
  ds.name = "balanced";
  ds.n_instances = classes * per_class;
  ds.n_features = d;
  ds.n_classes = classes;
  for (std::size_t c = 0; c < classes; ++c) ds.class_names.push_back("c" + std::to_string(c));
  for (std::size_t i = 0; i < ds.n_instances; ++i) {
    for (std::size_t j = 0; j < d; ++j) ds.features.push_back(g(rng));
    ds.labels.push_back(static_cast<std::uint32_t>(i % classes));
  }
  return ds;
}

}  // namespace

TEST_CASE("parse a small CSV with string labels") {
  const auto ds = mocsfs::parse_csv("1,2,3,a\n4,5,6,b\n7,8,9,a\n0,0,0,b\n", "t.csv");
  CHECK(ds.n_features == 3);
  CHECK(ds.n_instances == 4);
  CHECK(ds.n_classes == 2);
  CHECK(ds.labels == std::vector<std::uint32_t>{0, 1, 0, 1});
  CHECK(ds.class_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.at(1, 2) == 6.0);
}

TEST_CASE("header row is detected and labels map in first-appearance order") {
  const auto ds = mocsfs::parse_csv("x,y,class\n1,2,7\n3,4,2\n5,6,7\n", "t.csv");
  CHECK(ds.n_instances == 3);
  CHECK(ds.n_features == 2);
  CHECK(ds.class_names == std::vector<std::string>{"7", "2"});
  CHECK(ds.labels == std::vector<std::uint32_t>{0, 1, 0});
}

TEST_CASE("CSV diagnostics name the row and column") {
  CHECK(contains(error_of("1,2,a\n1,nan,b\n"), "row 2, column 2"));
  CHECK(contains(error_of("1,2,a\n1,inf,b\n"), "non-finite"));
  CHECK(contains(error_of("1,2,a\n1,x,b\n"), "row 2, column 2"));
  CHECK(contains(error_of("1,2,a\n1,b\n"), "ragged"));
  CHECK(contains(error_of("1,2,a\n3,4,a\n"), "single class"));
  CHECK(contains(error_of("a\nb\n"), "zero feature"));
  CHECK(contains(error_of("1,\"2\",a\n"), "quoted"));
  CHECK(contains(error_of(""), "no data rows"));
}

TEST_CASE("missing file is an I/O error") {
  try {
    mocsfs::load_csv("/nonexistent/dir/data.csv");
    FAIL("expected an error");
  } catch (const mocsfs::Error& e) {
    CHECK(e.kind() == mocsfs::ErrorKind::Io);
  }
}

TEST_CASE("write then load round-trips exactly") {
  const auto ds = balanced(3, 4, 5, 1);
  const auto path = std::filesystem::temp_directory_path() / "mocsfs_roundtrip.csv";
  mocsfs::write_csv(ds, path);
  const auto back = mocsfs::load_csv(path);
  std::filesystem::remove(path);
  CHECK(back.features == ds.features);
  CHECK(back.labels == ds.labels);
  CHECK(back.class_names == ds.class_names);
}

TEST_CASE("warpAR10P-shaped CSV") {
  std::string text;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 130; ++i) {
    for (int j = 0; j < 2400; ++j) text += std::to_string(rng() % 256) + ",";
    text += std::to_string(i % 10 + 1) + "\n";
  }
  const auto ds = mocsfs::parse_csv(text, "warp.csv");
  CHECK(ds.n_features == 2400);
  CHECK(ds.n_instances == 130);
  CHECK(ds.n_classes == 10);
}

TEST_CASE("stratified split examples") {
  const auto ds = balanced(10, 10, 3, 4);
  const auto s = mocsfs::stratified_split(ds, 0.2, 9);
  CHECK(s.train.n_instances == 80);
  CHECK(s.test.n_instances == 20);
  for (auto c : s.test.class_counts()) CHECK(c == 2);

  const auto again = mocsfs::stratified_split(ds, 0.2, 9);
  CHECK(again.train_rows == s.train_rows);
  CHECK(again.test_rows == s.test_rows);

  const auto ds13 = balanced(10, 13, 3, 4);
  const auto s13 = mocsfs::stratified_split(ds13, 0.2, 9);
  CHECK(s13.train.n_instances == 100);
  CHECK(s13.test.n_instances == 30);
}

TEST_CASE("stratified split is a partition that keeps every class in train") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t classes = 2 + rng() % 5;
    Dataset ds = balanced(classes, 2 + rng() % 9, 2, rng());
    // Unbalance the classes a bit.
    for (std::size_t i = 0; i < ds.n_instances; ++i) {
      if (rng() % 4 == 0) ds.labels[i] = 0;
    }
    bool ok = true;
    for (auto c : ds.class_counts()) ok = ok && c >= 2;
    if (!ok) continue;
    const double frac = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto s = mocsfs::stratified_split(ds, frac, rng());
    CHECK(s.train_rows.size() + s.test_rows.size() == ds.n_instances);
    std::vector<std::size_t> all = s.train_rows;
    all.insert(all.end(), s.test_rows.begin(), s.test_rows.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(ds.n_instances);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    CHECK(all == expected);
    CHECK(std::is_sorted(s.train_rows.begin(), s.train_rows.end()));
    for (auto c : s.train.class_counts()) CHECK(c >= 1);
    CHECK(s.train.n_classes == ds.n_classes);
  }
}

TEST_CASE("stratified split errors") {
  Dataset ds = balanced(2, 3, 2, 1);
  CHECK_THROWS_AS(mocsfs::stratified_split(ds, 0.0, 1), mocsfs::Error);
  CHECK_THROWS_AS(mocsfs::stratified_split(ds, 1.0, 1), mocsfs::Error);
  ds.labels = {0, 0, 0, 0, 0, 1};
  CHECK_THROWS_AS(mocsfs::stratified_split(ds, 0.2, 1), mocsfs::Error);
}

TEST_CASE("normalizer examples") {
  Dataset train;
  train.name = "n";
  train.n_instances = 3;
  train.n_features = 2;
  train.n_classes = 2;
  train.class_names = {"a", "b"};
  train.features = {2, 5, 4, 5, 3, 5};
  train.labels = {0, 1, 0};
  const auto norm = mocsfs::Normalizer::fit(train);
  const auto t = norm.apply(train);
  CHECK(t.at(0, 0) == 0.0);
  CHECK(t.at(1, 0) == 1.0);
  CHECK(t.at(2, 0) == 0.5);
  for (std::size_t r = 0; r < 3; ++r) CHECK(t.at(r, 1) == 0.0);

  Dataset test = train;
  test.features = {6, 7, 1, 5, 3, 4};
  const auto tt = norm.apply(test);
  CHECK(tt.at(0, 0) == 1.0);
  CHECK(tt.at(1, 0) == 0.0);
  CHECK(tt.at(0, 1) == 0.0);
}

TEST_CASE("normalized training data lies in the unit interval") {
  const auto ds = balanced(3, 20, 7, 12);
  const auto t = mocsfs::Normalizer::fit(ds).apply(ds);
  for (double v : t.features) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("masked view examples") {
  const auto ds = balanced(2, 3, 4, 3);
  const auto all = mocsfs::masked_view(ds, BitMask(4, true));
  CHECK(all.n_columns() == 4);
  CHECK(all.gather() == ds.features);
  CHECK(mocsfs::masked_view(ds, BitMask(4)).n_columns() == 0);
  const auto v = mocsfs::masked_view(ds, BitMask::from_string("1010"));
  CHECK(std::vector<std::size_t>(v.columns().begin(), v.columns().end()) == std::vector<std::size_t>{0, 2});
  CHECK(v.at(1, 1) == ds.at(1, 2));
  CHECK_THROWS_AS(mocsfs::masked_view(ds, BitMask(3)), mocsfs::Error);
}

TEST_CASE("masked distances equal filtered-copy distances") {
  const auto ds = balanced(2, 8, 13, 21);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    BitMask mask(ds.n_features);
    for (std::size_t j = 0; j < ds.n_features; ++j) mask.set(j, rng() & 1u);
    const auto view = mocsfs::masked_view(ds, mask);
    std::vector<std::vector<double>> copy(ds.n_instances);
    for (std::size_t r = 0; r < ds.n_instances; ++r) {
      for (std::size_t c = 0; c < ds.n_features; ++c) {
        if (mask.test(c)) copy[r].push_back(ds.at(r, c));
      }
    }
    for (std::size_t a = 0; a < ds.n_instances; ++a) {
      for (std::size_t b = 0; b < ds.n_instances; ++b) {
        double dv = 0.0, dc = 0.0;
        for (std::size_t c = 0; c < view.n_columns(); ++c) dv += (view.at(a, c) - view.at(b, c)) * (view.at(a, c) - view.at(b, c));
        for (std::size_t c = 0; c < copy[a].size(); ++c) dc += (copy[a][c] - copy[b][c]) * (copy[a][c] - copy[b][c]);
        CHECK(dv == dc);
      }
    }
  }
}
