#include "mocsfs/knn_eval.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mocsfs/error.hpp"

namespace mocsfs {

namespace {

using Neighbor = std::pair<double, std::uint32_t>;  // (squared distance, row)

double squared_distance(const double* a, const double* b, std::size_t m) noexcept {
  double sum = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    const double d = a[c] - b[c];
    sum += d * d;
  }
  return sum;
}

std::uint32_t vote(std::span<Neighbor> pool, std::size_t k, std::span<const std::uint32_t> labels,
                   std::size_t n_classes, std::vector<std::size_t>& counts,
                   std::vector<double>& summed) {
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end());
  std::fill(counts.begin(), counts.end(), 0);
  std::fill(summed.begin(), summed.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto label = labels[pool[i].second];
    ++counts[label];
    summed[label] += std::sqrt(pool[i].first);
  }
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < n_classes; ++c) {
    if (counts[c] > counts[best] || (counts[c] == counts[best] && summed[c] < summed[best])) {
      best = c;
    }
  }
  return best;
}

}  // namespace

std::vector<std::uint32_t> knn_predict(const DatasetView& train, const DatasetView& queries,
                                       std::size_t k, bool loo) {
  const std::size_t n = train.n_instances();
  const std::size_t m = train.n_columns();
  if (n == 0) throw_invalid("kNN training set is empty");
  if (m == 0) throw_invalid("kNN needs at least one visible feature");
  if (queries.n_columns() != m) throw_invalid("query and training views differ in width");
  if (loo && (&queries.source() != &train.source() ||
              !std::equal(queries.columns().begin(), queries.columns().end(),
                          train.columns().begin(), train.columns().end()))) {
    throw_invalid("leave-one-out prediction requires the queries to be the training rows");
  }
  const std::size_t pool_size = loo ? n - 1 : n;
  if (k == 0 || k > pool_size) {
    throw_invalid("k = " + std::to_string(k) + " must be at least 1 and at most the neighbour pool size " +
                  std::to_string(pool_size));
  }

  const auto& source = train.source();
  const std::vector<double> x = train.gather();
  std::vector<std::size_t> counts(source.n_classes);
  std::vector<double> summed(source.n_classes);
  std::vector<Neighbor> pool;
  pool.reserve(n);
  std::vector<std::uint32_t> predicted;

  if (loo) {
    // Symmetric distance matrix, each pair computed once.
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = squared_distance(&x[i * m], &x[j * m], m);
        dist[i * n + j] = d;
        dist[j * n + i] = d;
      }
    }
    predicted.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pool.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) pool.emplace_back(dist[i * n + j], static_cast<std::uint32_t>(j));
      }
      predicted.push_back(vote(pool, k, source.labels, source.n_classes, counts, summed));
    }
    return predicted;
  }

  const std::vector<double> q = queries.gather();
  const std::size_t nq = queries.n_instances();
  predicted.reserve(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    pool.clear();
    for (std::size_t j = 0; j < n; ++j) {
      pool.emplace_back(squared_distance(&q[i * m], &x[j * m], m), static_cast<std::uint32_t>(j));
    }
    predicted.push_back(vote(pool, k, source.labels, source.n_classes, counts, summed));
  }
  return predicted;
}

double classification_error(std::size_t correct, std::size_t total) {
  return static_cast<double>(total - correct) / static_cast<double>(total);
}

namespace {

ObjectivePair score(const Dataset& train, const Dataset& queries, const BitMask& genotype,
                    std::size_t k, bool loo) {
  const double f2 = feature_ratio(genotype);
  if (genotype.none()) return {1.0, f2};
  const DatasetView train_view(train, genotype);
  const DatasetView query_view(queries, genotype);
  const auto predicted = knn_predict(train_view, query_view, k, loo);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == queries.labels[i]) ++correct;
  }
  return {classification_error(correct, predicted.size()), f2};
}

}  // namespace

Evaluator::Evaluator(const SplitDataset& split, EvaluatorOptions options) : options_(options) {
  if (options_.normalize) {
    const auto norm = Normalizer::fit(split.train);
    train_ = norm.apply(split.train);
    test_ = norm.apply(split.test);
  } else {
    train_ = split.train;
    test_ = split.test;
  }
  if (options_.k == 0 || options_.k >= train_.n_instances) {
    throw_invalid("k = " + std::to_string(options_.k) + " must be at least 1 and below the " +
                  std::to_string(train_.n_instances) + " training instances");
  }
}

void Evaluator::check_length(const BitMask& genotype) const {
  if (genotype.size() != train_.n_features) {
    throw_invalid("genotype length " + std::to_string(genotype.size()) + " does not match " +
                  std::to_string(train_.n_features) + " features");
  }
}

ObjectivePair Evaluator::compute_train(const BitMask& genotype) const {
  return score(train_, train_, genotype, options_.k, options_.leave_one_out);
}

ObjectivePair Evaluator::evaluate(const BitMask& genotype) {
  check_length(genotype);
  nfc_.fetch_add(1, std::memory_order_relaxed);
  if (!options_.cache) return compute_train(genotype);

  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(genotype); it != cache_.end()) return it->second;
  }
  const auto result = compute_train(genotype);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(genotype, result);
  return result;
}

ObjectivePair Evaluator::evaluate_on_test(const BitMask& genotype) const {
  check_length(genotype);
  return score(train_, test_, genotype, options_.k, false);
}

}  // namespace mocsfs
