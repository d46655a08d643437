#include "mocsfs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "mocsfs/error.hpp"

namespace mocsfs {

namespace {

[[noreturn]] void data_error(const std::string& what) { throw Error(ErrorKind::Data, what); }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(n_classes, 0);
  for (auto l : labels) ++counts[l];
  return counts;
}

void Dataset::validate() const {
  if (n_features == 0) data_error(name + ": dataset has zero feature columns");
  if (n_instances < 2) data_error(name + ": dataset needs at least 2 instances");
  if (n_classes < 2) data_error(name + ": dataset needs at least 2 classes, found " +
                                std::to_string(n_classes));
  if (features.size() != n_instances * n_features || labels.size() != n_instances) {
    data_error(name + ": feature matrix shape does not match instance/feature counts");
  }
  for (std::size_t r = 0; r < n_instances; ++r) {
    if (labels[r] >= n_classes) {
      data_error(name + ": label index out of range at instance " + std::to_string(r));
    }
    for (std::size_t c = 0; c < n_features; ++c) {
      if (!std::isfinite(at(r, c))) {
        data_error(name + ": non-finite value at instance " + std::to_string(r) +
                   ", feature " + std::to_string(c));
      }
    }
  }
}

Dataset parse_csv(std::string_view text, const std::string& source) {
  Dataset ds;
  ds.name = source;
  std::unordered_map<std::string, std::uint32_t> label_index;

  std::size_t line_no = 0;
  std::size_t expected_fields = 0;
  bool first_data_line = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.find('"') != std::string_view::npos || line.find('\'') != std::string_view::npos) {
      data_error(source + ": row " + std::to_string(line_no) +
                 ": quoted fields are not supported");
    }

    const auto fields = split_fields(line);
    const std::string where = source + ": row " + std::to_string(line_no);
    if (first_data_line) {
      if (fields.size() < 2) data_error(where + ": zero feature columns (need features plus a label)");
      expected_fields = fields.size();
      first_data_line = false;
      bool all_numeric = true;
      double ignored = 0.0;
      for (std::size_t c = 0; c + 1 < fields.size() && all_numeric; ++c) {
        all_numeric = parse_number(trim(fields[c]), ignored);
      }
      if (!all_numeric) continue;  // header row
      ds.n_features = expected_fields - 1;
    } else if (ds.n_features == 0) {
      // First data row after a header.
      ds.n_features = expected_fields - 1;
    }
    if (fields.size() != expected_fields) {
      data_error(where + ": ragged row has " + std::to_string(fields.size()) +
                 " columns, expected " + std::to_string(expected_fields));
    }

    for (std::size_t c = 0; c + 1 < fields.size(); ++c) {
      double value = 0.0;
      const auto cell = trim(fields[c]);
      if (!parse_number(cell, value)) {
        data_error(where + ", column " + std::to_string(c + 1) + ": non-numeric value '" +
                   std::string(cell) + "'");
      }
      if (!std::isfinite(value)) {
        data_error(where + ", column " + std::to_string(c + 1) + ": non-finite value '" +
                   std::string(cell) + "'");
      }
      ds.features.push_back(value);
    }
    const std::string label(trim(fields.back()));
    if (label.empty()) {
      data_error(where + ", column " + std::to_string(fields.size()) + ": empty label");
    }
    auto [it, inserted] = label_index.try_emplace(label, static_cast<std::uint32_t>(ds.class_names.size()));
    if (inserted) ds.class_names.push_back(label);
    ds.labels.push_back(it->second);
    ++ds.n_instances;
  }

  ds.n_classes = ds.class_names.size();
  if (ds.n_instances == 0) data_error(source + ": no data rows");
  if (ds.n_classes < 2) {
    data_error(source + ": single class '" + ds.class_names.front() +
               "' in label column; at least 2 classes are required");
  }
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Dataset ds = parse_csv(buffer.str(), path.string());
  ds.name = path.stem().string();
  return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  for (std::size_t c = 0; c < ds.n_features; ++c) out << 'f' << c << ',';
  out << "label\n";
  char buf[32];
  for (std::size_t r = 0; r < ds.n_instances; ++r) {
    for (std::size_t c = 0; c < ds.n_features; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ds.at(r, c));
      out << buf << ',';
    }
    out << ds.class_names[ds.labels[r]] << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "failed while writing '" + path.string() + "'");
}

Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  Dataset out;
  out.name = ds.name;
  out.n_features = ds.n_features;
  out.n_classes = ds.n_classes;
  out.class_names = ds.class_names;
  out.n_instances = rows.size();
  out.features.reserve(rows.size() * ds.n_features);
  out.labels.reserve(rows.size());
  for (auto r : rows) {
    const auto src = ds.row(r);
    out.features.insert(out.features.end(), src.begin(), src.end());
    out.labels.push_back(ds.labels[r]);
  }
  return out;
}

SplitDataset stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw_invalid("test fraction must lie strictly between 0 and 1");
  }
  std::vector<std::vector<std::size_t>> by_class(ds.n_classes);
  for (std::size_t r = 0; r < ds.n_instances; ++r) by_class[ds.labels[r]].push_back(r);

  SplitDataset split;
  split.seed = seed;
  split.test_fraction = test_fraction;
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < ds.n_classes; ++c) {
    auto& rows = by_class[c];
    if (rows.size() < 2) {
      throw_invalid("class '" + ds.class_names[c] + "' has " + std::to_string(rows.size()) +
                    " instance(s); stratified splitting needs at least 2 per class");
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto wanted = static_cast<std::size_t>(std::lround(static_cast<double>(rows.size()) * test_fraction));
    const std::size_t n_test = std::min(wanted, rows.size() - 1);
    split.test_rows.insert(split.test_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train_rows.insert(split.train_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = select_rows(ds, split.train_rows);
  split.test = select_rows(ds, split.test_rows);
  return split;
}

Normalizer Normalizer::fit(const Dataset& train) {
  if (train.n_instances == 0) throw_invalid("cannot fit a normalizer on an empty dataset");
  Normalizer norm;
  const auto first = train.row(0);
  norm.min_.assign(first.begin(), first.end());
  norm.max_.assign(first.begin(), first.end());
  for (std::size_t r = 1; r < train.n_instances; ++r) {
    const auto row = train.row(r);
    for (std::size_t c = 0; c < train.n_features; ++c) {
      norm.min_[c] = std::min(norm.min_[c], row[c]);
      norm.max_[c] = std::max(norm.max_[c], row[c]);
    }
  }
  return norm;
}

Dataset Normalizer::apply(const Dataset& ds) const {
  if (ds.n_features != min_.size()) {
    throw_invalid("normalizer was fitted on " + std::to_string(min_.size()) +
                  " features, dataset has " + std::to_string(ds.n_features));
  }
  Dataset out = ds;
  for (std::size_t r = 0; r < ds.n_instances; ++r) {
    for (std::size_t c = 0; c < ds.n_features; ++c) {
      double& v = out.features[r * ds.n_features + c];
      const double span = max_[c] - min_[c];
      v = span > 0.0 ? std::clamp((v - min_[c]) / span, 0.0, 1.0) : 0.0;
    }
  }
  return out;
}

DatasetView::DatasetView(const Dataset& ds, const BitMask& mask) : ds_(&ds) {
  if (mask.size() != ds.n_features) {
    throw_invalid("mask length " + std::to_string(mask.size()) + " does not match " +
                  std::to_string(ds.n_features) + " features");
  }
  columns_ = mask.ones();
}

std::vector<double> DatasetView::gather() const {
  std::vector<double> out;
  out.reserve(n_instances() * n_columns());
  for (std::size_t r = 0; r < n_instances(); ++r) {
    const double* row = ds_->features.data() + r * ds_->n_features;
    for (auto c : columns_) out.push_back(row[c]);
  }
  return out;
}

DatasetView masked_view(const Dataset& ds, const BitMask& mask) { return DatasetView(ds, mask); }

}  // namespace mocsfs
