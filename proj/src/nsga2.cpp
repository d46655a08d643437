#include "mocsfs/nsga2.hpp"

#include <chrono>
#include <deque>
#include <unordered_set>

#include "mocsfs/error.hpp"
#include "mocsfs/mocs.hpp"
#include "mocsfs/parallel.hpp"

namespace mocsfs {

std::size_t tournament_winner(std::span<const std::size_t> entrants,
                              std::span<const std::size_t> rank, std::span<const double> crowding) {
  std::size_t best = entrants.front();
  for (auto e : entrants.subspan(1)) {
    if (rank[e] < rank[best] || (rank[e] == rank[best] && crowding[e] > crowding[best])) best = e;
  }
  return best;
}

std::size_t tournament_select(std::span<const std::size_t> rank, std::span<const double> crowding,
                              std::size_t tournament_size, std::mt19937_64& rng) {
  if (tournament_size == 0) throw_invalid("tournament size must be at least 1");
  std::uniform_int_distribution<std::size_t> pick(0, rank.size() - 1);
  std::vector<std::size_t> entrants(tournament_size);
  for (auto& e : entrants) e = pick(rng);
  return tournament_winner(entrants, rank, crowding);
}

std::pair<BitMask, BitMask> spx_at(const BitMask& a, const BitMask& b, std::size_t cut) {
  if (a.size() != b.size()) throw_invalid("crossover parents differ in length");
  BitMask c1 = a;
  BitMask c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    c1.set(i, b.test(i));
    c2.set(i, a.test(i));
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<BitMask, BitMask> spx_crossover(const BitMask& a, const BitMask& b,
                                          double crossover_prob, std::mt19937_64& rng) {
  if (a.size() != b.size()) throw_invalid("crossover parents differ in length");
  std::bernoulli_distribution apply(crossover_prob);
  if (!apply(rng) || a.size() < 2) return {a, b};
  std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
  return spx_at(a, b, cut(rng));
}

BitMask bitflip_mutate(const BitMask& g, double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw_invalid("mutation probability must lie in [0, 1]");
  BitMask out = g;
  std::bernoulli_distribution flip(p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (flip(rng)) out.flip(i);
  }
  return out;
}

RankAndCrowding rank_and_crowd(std::span<const ObjectivePair> pop) {
  const auto ranked = non_dominated_sort(pop);
  RankAndCrowding out;
  out.rank = ranked.rank;
  out.crowding.assign(pop.size(), 0.0);
  for (const auto& front : ranked.fronts) {
    std::vector<ObjectivePair> objs;
    for (auto i : front) objs.push_back(pop[i]);
    const auto dist = crowding_distance(objs);
    for (std::size_t k = 0; k < front.size(); ++k) out.crowding[front[k]] = dist[k];
  }
  out.first_front = ranked.fronts.front();
  return out;
}

std::vector<std::size_t> environmental_selection(std::span<const ObjectivePair> pop, std::size_t n) {
  const auto ranked = non_dominated_sort(pop);
  std::vector<std::size_t> selected;
  for (const auto& front : ranked.fronts) {
    if (selected.size() + front.size() <= n) {
      selected.insert(selected.end(), front.begin(), front.end());
      if (selected.size() == n) break;
      continue;
    }
    std::vector<ObjectivePair> objs;
    for (auto i : front) objs.push_back(pop[i]);
    for (auto k : select_by_crowding(objs, n - selected.size())) selected.push_back(front[k]);
    break;
  }
  return selected;
}

RunRecord run_nsga2(const Nsga2Config& cfg, Problem& problem, const TraceSink& sink) {
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = cfg.pop_size;
  const std::size_t d = problem.dimension();
  if (n < 2 || n % 2 != 0) throw_invalid("NSGA-II population size must be even and at least 2");
  if (cfg.max_nfc < n) {
    throw_invalid("evaluation budget " + std::to_string(cfg.max_nfc) +
                  " is below the population size " + std::to_string(n));
  }
  if (!(cfg.crossover_prob >= 0.0 && cfg.crossover_prob <= 1.0)) {
    throw_invalid("crossover probability must lie in [0, 1]");
  }
  if (cfg.tournament_size == 0) throw_invalid("tournament size must be at least 1");
  const double mutation_p = cfg.mutation_prob < 0.0 ? 1.0 / static_cast<double>(d) : cfg.mutation_prob;
  if (mutation_p > 1.0) throw_invalid("mutation probability must lie in [0, 1]");

  std::mt19937_64 rng(cfg.seed);
  RunRecord record;
  record.seed = cfg.seed;

  auto evaluate_all = [&](std::vector<Individual>& members, std::uint64_t first_id) {
    parallel_for(members.size(), cfg.threads, [&](std::size_t i) {
      members[i].objectives = problem.evaluate(members[i].genotype);
      members[i].eval_id = first_id + i + 1;
    });
  };

  std::vector<Individual> population;
  for (auto& g : distinct_random_genotypes(n, d, rng)) population.push_back({std::move(g), {}, 0});
  evaluate_all(population, 0);
  std::uint64_t nfc = n;

  auto objs = objectives_of(population);
  auto ranking = rank_and_crowd(objs);
  auto emit = [&] {
    std::vector<ObjectivePair> front;
    for (auto i : ranking.first_front) front.push_back(objs[i]);
    const TracePoint point{nfc, hypervolume_2d(front), population.size()};
    record.trace.push_back(point);
    if (sink) sink(point);
  };
  emit();

  while (nfc < cfg.max_nfc) {
    std::unordered_set<BitMask> taken;
    for (const auto& m : population) taken.insert(m.genotype);

    std::vector<Individual> offspring;
    offspring.reserve(n);
    std::deque<BitMask> pending;
    while (offspring.size() < n) {
      for (std::size_t attempt = 0;; ++attempt) {
        if (pending.empty()) {
          const auto& a = population[tournament_select(ranking.rank, ranking.crowding, cfg.tournament_size, rng)];
          const auto& b = population[tournament_select(ranking.rank, ranking.crowding, cfg.tournament_size, rng)];
          auto [c1, c2] = spx_crossover(a.genotype, b.genotype, cfg.crossover_prob, rng);
          pending.push_back(bitflip_mutate(c1, mutation_p, rng));
          pending.push_back(bitflip_mutate(c2, mutation_p, rng));
        }
        BitMask child = std::move(pending.front());
        pending.pop_front();
        if (!taken.contains(child) || attempt >= cfg.duplicate_retries) {
          taken.insert(child);
          offspring.push_back({std::move(child), {}, 0});
          break;
        }
      }
    }
    evaluate_all(offspring, nfc);
    nfc += offspring.size();

    std::vector<Individual> combined = std::move(population);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    population.clear();
    for (auto i : environmental_selection(objectives_of(combined), n)) {
      population.push_back(std::move(combined[i]));
    }

    objs = objectives_of(population);
    ranking = rank_and_crowd(objs);
    ++record.iterations;
    emit();
  }
  record.termination = Termination::Budget;

  // Report the first front with duplicate genotypes removed.
  std::unordered_set<BitMask> seen;
  for (auto i : ranking.first_front) {
    if (seen.insert(population[i].genotype).second) record.train_front.push_back(population[i]);
  }
  score_on_test(problem, record, cfg.threads);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace mocsfs
