#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "../oracles.hpp"
#include "mocsfs/error.hpp"
#include "mocsfs/moo_core.hpp"

using mocsfs::ObjectivePair;
using Pop = std::vector<ObjectivePair>;

namespace {

Pop random_pop(std::mt19937_64& rng, std::size_t n, bool grid) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Pop pop(n);
  for (auto& p : pop) {
    p = {u(rng), u(rng)};
    if (grid) p = {std::round(p.f1 * 4) / 4, std::round(p.f2 * 4) / 4};
  }
  return pop;
}

}  // namespace

TEST_CASE("dominance examples") {
  using mocsfs::dominates;
  CHECK(dominates({0.2, 0.3}, {0.4, 0.3}));
  CHECK_FALSE(dominates({0.2, 0.3}, {0.2, 0.3}));
  CHECK_FALSE(dominates({0.1, 0.9}, {0.9, 0.1}));
  CHECK_FALSE(dominates({0.9, 0.1}, {0.1, 0.9}));
}

TEST_CASE("dominance is irreflexive and antisymmetric") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto pop = random_pop(rng, 8, t % 2 == 1);
    for (const auto& a : pop) {
      CHECK_FALSE(mocsfs::dominates(a, a));
      for (const auto& b : pop) {
        CHECK(mocsfs::dominates(a, b) == oracle::dominates_ref(a, b));
        if (mocsfs::dominates(a, b)) CHECK_FALSE(mocsfs::dominates(b, a));
      }
    }
  }
}

TEST_CASE("non-dominated sort examples") {
  using mocsfs::non_dominated_sort;
  using Fronts = std::vector<std::vector<std::size_t>>;
  CHECK(non_dominated_sort(Pop{{0.1, 0.9}, {0.9, 0.1}, {0.5, 0.5}}).fronts == Fronts{{0, 1, 2}});
  CHECK(non_dominated_sort(Pop{{0.1, 0.1}, {0.5, 0.5}}).fronts == Fronts{{0}, {1}});
  const auto r = non_dominated_sort(Pop{{0.2, 0.4}, {0.4, 0.2}, {0.5, 0.5}, {0.9, 0.9}});
  CHECK(r.fronts == Fronts{{0, 1}, {2}, {3}});
  CHECK(r.rank == std::vector<std::size_t>{0, 0, 1, 2});
  CHECK_THROWS_AS(non_dominated_sort(Pop{}), mocsfs::Error);
}

TEST_CASE("equal objective pairs share a front") {
  const auto r = mocsfs::non_dominated_sort(Pop{{0.5, 0.5}, {0.5, 0.5}, {0.6, 0.6}});
  CHECK(r.fronts.front() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("non-dominated sort matches peeling on random populations") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  for (int t = 0; t < 500; ++t) {
    const auto pop = random_pop(rng, size(rng), t % 3 == 0);
    const auto r = mocsfs::non_dominated_sort(pop);
    REQUIRE(r.fronts == oracle::peel_fronts(pop));
    CHECK(mocsfs::first_front(pop) == r.fronts.front());
    for (std::size_t f = 0; f < r.fronts.size(); ++f) {
      for (auto i : r.fronts[f]) CHECK(r.rank[i] == f);
    }
  }
}

TEST_CASE("crowding distance examples") {
  using mocsfs::crowding_distance;
  const auto inf = mocsfs::kInfiniteCrowding;
  CHECK(crowding_distance(Pop{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}}) == std::vector<double>{inf, 2.0, inf});
  CHECK(crowding_distance(Pop{{0.0, 1.0}, {1.0, 0.0}}) == std::vector<double>{inf, inf});
  CHECK(crowding_distance(Pop{{0.3, 0.3}}) == std::vector<double>{inf});
  CHECK_THROWS_AS(crowding_distance(Pop{}), mocsfs::Error);
}

TEST_CASE("crowding distance with a degenerate objective") {
  // f2 is constant, so it contributes nothing and only f1 gaps count.
  const auto inf = mocsfs::kInfiniteCrowding;
  CHECK(mocsfs::crowding_distance(Pop{{0.0, 0.5}, {0.5, 0.5}, {1.0, 0.5}}) ==
        std::vector<double>{inf, 1.0, inf});
  CHECK(mocsfs::crowding_distance(Pop{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}) ==
        std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("crowding distance gives every per-objective extreme the sentinel") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const auto pop = random_pop(rng, 3 + t % 20, t % 2 == 0);
    Pop front;
    for (auto i : mocsfs::first_front(pop)) front.push_back(pop[i]);
    const auto cd = mocsfs::crowding_distance(front);
    double lo1 = 2, hi1 = -1, lo2 = 2, hi2 = -1;
    for (const auto& p : front) {
      lo1 = std::min(lo1, p.f1), hi1 = std::max(hi1, p.f1);
      lo2 = std::min(lo2, p.f2), hi2 = std::max(hi2, p.f2);
    }
    for (std::size_t i = 0; i < front.size(); ++i) {
      const auto& p = front[i];
      const bool extreme1 = lo1 < hi1 && (p.f1 == lo1 || p.f1 == hi1);
      const bool extreme2 = lo2 < hi2 && (p.f2 == lo2 || p.f2 == hi2);
      if (extreme1 || extreme2 || front.size() <= 2) {
        CHECK(std::isinf(cd[i]));
      } else {
        CHECK(cd[i] >= 0.0);
        CHECK(std::isfinite(cd[i]));
      }
    }
  }
}

TEST_CASE("select by crowding") {
  using mocsfs::select_by_crowding;
  CHECK(select_by_crowding(Pop{{0.0, 1.0}, {0.4, 0.6}, {0.5, 0.5}, {1.0, 0.0}}, 3) ==
        std::vector<std::size_t>{0, 2, 3});
  CHECK(select_by_crowding(Pop{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}}, 3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(select_by_crowding(Pop{{0.0, 1.0}, {1.0, 0.0}}, 1) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(select_by_crowding(Pop{{0.0, 1.0}}, 0), mocsfs::Error);
}

TEST_CASE("truncate by crowding returns a subset of size min(n, |front|)") {
  struct Item {
    int id;
    ObjectivePair obj;
  };
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto pop = random_pop(rng, 1 + t % 30, false);
    std::vector<Item> front;
    for (auto i : mocsfs::first_front(pop)) front.push_back({static_cast<int>(i), pop[i]});
    const std::size_t n = 1 + static_cast<std::size_t>(t % 7);
    const auto kept = mocsfs::truncate_by_crowding(front, n, [](const Item& it) { return it.obj; });
    CHECK(kept.size() == std::min(n, front.size()));
    std::set<int> ids;
    for (const auto& it : front) ids.insert(it.id);
    int last = -1;
    for (const auto& it : kept) {
      CHECK(ids.contains(it.id));
      CHECK(it.id > last);  // input order preserved
      last = it.id;
    }
  }
}

TEST_CASE("hypervolume examples") {
  using mocsfs::hypervolume_2d;
  CHECK(hypervolume_2d(Pop{{0.0, 0.0}}) == 1.0);
  CHECK(hypervolume_2d(Pop{{0.25, 0.75}, {0.75, 0.25}}) == 0.3125);
  CHECK(hypervolume_2d(Pop{{1.0, 0.5}}) == 0.0);
  CHECK(hypervolume_2d(Pop{}) == 0.0);
  CHECK(hypervolume_2d(Pop{{1.5, -0.2}, {0.5, 0.5}}) == doctest::Approx(0.25));
  CHECK(hypervolume_2d(Pop{{0.5, 0.5}}, {2.0, 2.0}) == doctest::Approx(2.25));
}

TEST_CASE("hypervolume is monotone under insertion") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    auto pop = random_pop(rng, 1 + t % 32, t % 2 == 0);
    const double before = mocsfs::hypervolume_2d(pop);
    const ObjectivePair extra{u(rng), u(rng)};
    pop.push_back(extra);
    CHECK(mocsfs::hypervolume_2d(pop) >= before);

    // A point dominated by an existing member adds nothing.
    pop.pop_back();
    const auto& anchor = pop[t % pop.size()];
    pop.push_back({anchor.f1 + (1.0 - anchor.f1) * u(rng), anchor.f2 + (1.0 - anchor.f2) * u(rng)});
    CHECK(mocsfs::hypervolume_2d(pop) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("hypervolume agrees with Monte-Carlo area") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> size(1, 32);
  int beyond = 0;
  for (int t = 0; t < 20; ++t) {
    const auto pop = random_pop(rng, size(rng), false);
    const auto [estimate, se] = oracle::monte_carlo_hv(pop, 200'000, 1000 + t);
    const double z = std::abs(mocsfs::hypervolume_2d(pop) - estimate) / std::max(se, 1e-12);
    CHECK(z < 5.0);
    if (z > 3.0) ++beyond;
  }
  CHECK(beyond <= 1);
}
