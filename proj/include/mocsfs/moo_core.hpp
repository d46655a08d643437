#pragma once

// Selection and quality-indicator machinery for bi-objective minimization:
// Pareto dominance, non-dominated sorting, crowding distance and the exact
// two-dimensional hypervolume. Every function here is pure.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace mocsfs {

/// Objective vector of one candidate: f1 = classification error,
/// f2 = ratio of selected features. Both are minimized and lie in [0, 1].
struct ObjectivePair {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();
inline constexpr ObjectivePair kDefaultReference{1.0, 1.0};

/// True iff `a` is no worse than `b` in both objectives and strictly better
/// in at least one.
constexpr bool dominates(const ObjectivePair& a, const ObjectivePair& b) noexcept {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

/// Fronts in increasing rank order. `rank[i]` is the front index of
/// individual i. Indices inside a front are ascending (input order).
struct RankedPopulation {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> rank;
};

/// Fast non-dominated sorting. Throws on an empty population.
RankedPopulation non_dominated_sort(std::span<const ObjectivePair> pop);

/// Indices of the first front only, ascending.
std::vector<std::size_t> first_front(std::span<const ObjectivePair> pop);

/// Crowding distance of each member of a mutually non-dominated front.
///
/// Per objective the front is ordered by value (ties by index); members that
/// attain the minimum or maximum receive `kInfiniteCrowding`, interior members
/// accumulate (next - prev) / (max - min). An objective with max == min adds
/// nothing. Fronts of size 1 or 2 are all infinite. Throws on an empty front.
std::vector<double> crowding_distance(std::span<const ObjectivePair> front);

/// Indices (ascending) of the `n` members with the largest crowding distance;
/// ties keep the earlier index. Identity when front.size() <= n.
std::vector<std::size_t> select_by_crowding(std::span<const ObjectivePair> front,
                                            std::size_t n);

/// Subset of `front` chosen by `select_by_crowding`, in input order.
template <typename T, typename Objectives>
std::vector<T> truncate_by_crowding(const std::vector<T>& front, std::size_t n,
                                    Objectives&& objectives_of) {
  std::vector<ObjectivePair> objs;
  objs.reserve(front.size());
  for (const auto& member : front) objs.push_back(objectives_of(member));
  std::vector<T> out;
  for (auto idx : select_by_crowding(objs, n)) out.push_back(front[idx]);
  return out;
}

/// Exact area dominated by `front` inside the box bounded by `ref`.
/// Points with f1 >= ref.f1 or f2 >= ref.f2 contribute nothing; an empty front
/// yields 0.
double hypervolume_2d(std::span<const ObjectivePair> front,
                      ObjectivePair ref = kDefaultReference);

}  // namespace mocsfs
