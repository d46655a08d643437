#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mocsfs/bitmask.hpp"

namespace mocsfs {

/// Dense labelled feature matrix, row-major. Immutable once built.
struct Dataset {
  std::string name;
  std::size_t n_instances = 0;
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  std::vector<double> features;         // n_instances * n_features
  std::vector<std::uint32_t> labels;    // values in [0, n_classes)
  std::vector<std::string> class_names;  // index -> original label text

  double at(std::size_t row, std::size_t col) const noexcept {
    return features[row * n_features + col];
  }
  std::span<const double> row(std::size_t r) const noexcept {
    return {features.data() + r * n_features, n_features};
  }
  std::vector<std::size_t> class_counts() const;

  /// Throws Error(Data) describing the first violated invariant.
  void validate() const;
};

/// Reads a comma-separated file: numeric feature columns, label last.
/// A first row whose feature cells are not all numeric is treated as a
/// header. Labels are mapped to dense indices in order of first appearance.
Dataset load_csv(const std::filesystem::path& path);

/// Parses CSV text; `source` is only used in diagnostics and as the name.
Dataset parse_csv(std::string_view text, const std::string& source);

/// Writes `f0,...,f{D-1},label` header and rows; values round-trip exactly.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Rows [rows] of `ds` in the given order, keeping the class index space.
Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows);

struct SplitDataset {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // source row indices, ascending
  std::vector<std::size_t> test_rows;
  std::uint64_t seed = 0;
  double test_fraction = 0.0;
};

/// Per class, round(count * test_fraction) rows (capped so one stays in
/// train) go to test, chosen by a shuffle seeded with `seed`.
SplitDataset stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Min-max statistics fitted on training data.
class Normalizer {
 public:
  static Normalizer fit(const Dataset& train);

  /// (x - min) / (max - min), clamped to [0, 1]; constant columns map to 0.
  Dataset apply(const Dataset& ds) const;

  std::span<const double> min() const noexcept { return min_; }
  std::span<const double> max() const noexcept { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

/// Column-restricted view over a dataset. Semantically identical to a copy
/// with the unselected columns deleted; the column order is ascending.
class DatasetView {
 public:
  DatasetView(const Dataset& ds, const BitMask& mask);

  const Dataset& source() const noexcept { return *ds_; }
  std::size_t n_instances() const noexcept { return ds_->n_instances; }
  std::size_t n_columns() const noexcept { return columns_.size(); }
  std::span<const std::size_t> columns() const noexcept { return columns_; }
  double at(std::size_t row, std::size_t col) const noexcept {
    return ds_->at(row, columns_[col]);
  }
  std::uint32_t label(std::size_t row) const noexcept { return ds_->labels[row]; }

  /// Row-major copy of the visible columns.
  std::vector<double> gather() const;

 private:
  const Dataset* ds_;
  std::vector<std::size_t> columns_;
};

DatasetView masked_view(const Dataset& ds, const BitMask& mask);

}  // namespace mocsfs
