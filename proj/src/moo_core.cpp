#include "mocsfs/moo_core.hpp"

#include <algorithm>
#include <numeric>

#include "mocsfs/error.hpp"

namespace mocsfs {

RankedPopulation non_dominated_sort(std::span<const ObjectivePair> pop) {
  if (pop.empty()) throw_invalid("empty population");

  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(pop[i], pop[j])) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(pop[j], pop[i])) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  RankedPopulation ranked;
  ranked.rank.assign(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto i : current) {
      ranked.rank[i] = ranked.fronts.size();
      for (auto j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    ranked.fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return ranked;
}

std::vector<std::size_t> first_front(std::span<const ObjectivePair> pop) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pop.size() && !dominated; ++j) {
      dominated = dominates(pop[j], pop[i]);
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

std::vector<double> crowding_distance(std::span<const ObjectivePair> front) {
  if (front.empty()) throw_invalid("crowding distance of an empty front");

  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInfiniteCrowding);
    return distance;
  }

  std::vector<std::size_t> order(n);
  for (double ObjectivePair::*field : {&ObjectivePair::f1, &ObjectivePair::f2}) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a].*field < front[b].*field;
    });
    const double lo = front[order.front()].*field;
    const double hi = front[order.back()].*field;
    if (hi == lo) continue;

    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t i = order[pos];
      const double v = front[i].*field;
      if (v == lo || v == hi) {
        distance[i] = kInfiniteCrowding;
      } else if (distance[i] != kInfiniteCrowding) {
        distance[i] += (front[order[pos + 1]].*field - front[order[pos - 1]].*field) / (hi - lo);
      }
    }
  }
  return distance;
}

std::vector<std::size_t> select_by_crowding(std::span<const ObjectivePair> front,
                                            std::size_t n) {
  if (n == 0) throw_invalid("truncation size must be at least 1");
  std::vector<std::size_t> order(front.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (front.size() <= n) return order;

  const auto distance = crowding_distance(front);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distance[a] > distance[b];
  });
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

double hypervolume_2d(std::span<const ObjectivePair> front, ObjectivePair ref) {
  std::vector<ObjectivePair> inside;
  inside.reserve(front.size());
  for (const auto& p : front) {
    if (p.f1 < ref.f1 && p.f2 < ref.f2) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
    return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
  });

  // Sweep in f1 order; each point that lowers the running f2 minimum adds the
  // strip between the old and new minimum, extending to ref.f1.
  double area = 0.0;
  double lowest_f2 = ref.f2;
  for (const auto& p : inside) {
    if (p.f2 < lowest_f2) {
      area += (ref.f1 - p.f1) * (lowest_f2 - p.f2);
      lowest_f2 = p.f2;
    }
  }
  return area;
}

}  // namespace mocsfs
