#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mocsfs/bitmask.hpp"
#include "mocsfs/dataset.hpp"
#include "mocsfs/moo_core.hpp"

namespace mocsfs {

/// A genotype together with the objectives it was evaluated to.
struct Individual {
  BitMask genotype;
  ObjectivePair objectives;
  std::uint64_t eval_id = 0;  // NFC value that produced `objectives`
};

/// Bi-objective problem over bit strings, as seen by the optimizers.
///
/// `evaluate` costs one function call and must be safe to call concurrently
/// for distinct genotypes; `evaluate_on_test` is for reporting and is free.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual std::size_t dimension() const = 0;
  virtual ObjectivePair evaluate(const BitMask& genotype) = 0;
  virtual ObjectivePair evaluate_on_test(const BitMask& genotype) const = 0;
  virtual std::uint64_t nfc() const = 0;
};

/// Exact brute-force kNN over the visible columns of `train`.
///
/// With `loo` the queries must be the training rows themselves and each
/// query is excluded from its own neighbour pool. Neighbours are ranked by
/// squared Euclidean distance, ties by lower row index. The majority label
/// wins; vote ties go to the smaller summed Euclidean distance, then to the
/// smaller class index. Throws if k exceeds the pool size.
std::vector<std::uint32_t> knn_predict(const DatasetView& train, const DatasetView& queries,
                                       std::size_t k, bool loo);

struct EvaluatorOptions {
  std::size_t k = 5;
  bool leave_one_out = true;
  bool normalize = true;
  /// Memoize objectives per genotype. Each call still counts one NFC.
  bool cache = false;
};

/// Wrapper feature-selection fitness: f1 = kNN error, f2 = selected ratio.
class Evaluator final : public Problem {
 public:
  Evaluator(const SplitDataset& split, EvaluatorOptions options);

  std::size_t dimension() const override { return train_.n_features; }
  ObjectivePair evaluate(const BitMask& genotype) override;
  ObjectivePair evaluate_on_test(const BitMask& genotype) const override;
  std::uint64_t nfc() const override { return nfc_.load(std::memory_order_relaxed); }

  const Dataset& train() const noexcept { return train_; }
  const Dataset& test() const noexcept { return test_; }
  const EvaluatorOptions& options() const noexcept { return options_; }

 private:
  ObjectivePair compute_train(const BitMask& genotype) const;
  void check_length(const BitMask& genotype) const;

  Dataset train_;
  Dataset test_;
  EvaluatorOptions options_;
  std::atomic<std::uint64_t> nfc_{0};
  mutable std::mutex cache_mutex_;
  std::unordered_map<BitMask, ObjectivePair> cache_;
};

/// Error rate as (wrong / total), which is exact for e.g. 2/10.
double classification_error(std::size_t correct, std::size_t total);

/// Feature ratio of a genotype: ones / size.
inline double feature_ratio(const BitMask& genotype) {
  return static_cast<double>(genotype.count()) / static_cast<double>(genotype.size());
}

}  // namespace mocsfs
