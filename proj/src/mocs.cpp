#include "mocsfs/mocs.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_set>

#include "mocsfs/error.hpp"
#include "mocsfs/parallel.hpp"

namespace mocsfs {

namespace {

std::vector<std::size_t> new_permutation(std::size_t d, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

std::unordered_set<BitMask> genotype_set(const std::vector<Individual>& members) {
  std::unordered_set<BitMask> set;
  for (const auto& m : members) set.insert(m.genotype);
  return set;
}

}  // namespace

BitMask random_genotype(std::size_t d, std::mt19937_64& rng) {
  BitMask g(d);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i % 64 == 0) bits = rng();
    g.set(i, (bits >> (i % 64)) & 1u);
  }
  return g;
}

std::vector<BitMask> distinct_random_genotypes(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  if (d < 64 && n > (std::uint64_t{1} << d)) {
    throw_invalid("population of " + std::to_string(n) + " exceeds the " +
                  std::to_string(std::uint64_t{1} << d) + " distinct genotypes of length " +
                  std::to_string(d));
  }
  std::vector<BitMask> out;
  std::unordered_set<BitMask> seen;
  out.reserve(n);
  while (out.size() < n) {
    auto g = random_genotype(d, rng);
    if (seen.insert(g).second) out.push_back(std::move(g));
  }
  return out;
}

MocsState mocs_initialize(const MocsConfig& cfg, Problem& problem) {
  if (cfg.pop_size == 0) throw_invalid("population size must be at least 1");
  if (cfg.max_nfc < cfg.pop_size) {
    throw_invalid("evaluation budget " + std::to_string(cfg.max_nfc) +
                  " is below the population size " + std::to_string(cfg.pop_size));
  }
  const std::size_t d = problem.dimension();
  if (d == 0) throw_invalid("problem has no variables");

  MocsState state;
  state.rng.seed(cfg.seed);
  state.dimension = d;
  state.front_cap = cfg.effective_cap();

  auto genotypes = distinct_random_genotypes(cfg.pop_size, d, state.rng);
  std::vector<Individual> initial(genotypes.size());
  parallel_for(genotypes.size(), cfg.threads, [&](std::size_t i) {
    initial[i].genotype = std::move(genotypes[i]);
    initial[i].objectives = problem.evaluate(initial[i].genotype);
    initial[i].eval_id = i + 1;
  });
  state.nfc = cfg.pop_size;

  for (auto idx : first_front(objectives_of(initial))) {
    state.population.push_back(std::move(initial[idx]));
  }
  state.permutation = new_permutation(d, state.rng);
  return state;
}

void mocs_iteration(MocsState& state, Problem& problem, std::size_t threads) {
  const std::size_t index = state.permutation[state.cursor];
  const std::size_t p = state.population.size();

  std::vector<Individual> children(p);
  parallel_for(p, threads, [&](std::size_t j) {
    children[j].genotype = state.population[j].genotype.flipped(index);
    children[j].objectives = problem.evaluate(children[j].genotype);
    children[j].eval_id = state.nfc + j + 1;
  });
  state.nfc += p;

  // Admission and survival run sequentially in population order.
  auto before = genotype_set(state.population);
  std::vector<Individual> merged = state.population;
  std::unordered_set<BitMask> present = before;
  for (std::size_t j = 0; j < p; ++j) {
    if (dominates(state.population[j].objectives, children[j].objectives)) continue;
    if (!present.insert(children[j].genotype).second) continue;  // duplicate genotype
    merged.push_back(std::move(children[j]));
  }

  std::vector<Individual> survivors;
  for (auto idx : first_front(objectives_of(merged))) survivors.push_back(std::move(merged[idx]));
  if (survivors.size() > state.front_cap) {
    survivors = truncate_by_crowding(survivors, state.front_cap,
                                     [](const Individual& m) { return m.objectives; });
  }

  const bool unchanged = survivors.size() == before.size() &&
                         std::all_of(survivors.begin(), survivors.end(), [&](const Individual& m) {
                           return before.contains(m.genotype);
                         });
  state.unchanged_iters = unchanged ? state.unchanged_iters + 1 : 0;
  state.population = std::move(survivors);

  ++state.iterations;
  if (++state.cursor == state.dimension) {
    state.permutation = new_permutation(state.dimension, state.rng);
    state.cursor = 0;
  }
}

RunRecord run_mocs(const MocsConfig& cfg, Problem& problem, const TraceSink& sink) {
  const auto started = std::chrono::steady_clock::now();
  RunRecord record;
  record.seed = cfg.seed;

  auto emit = [&](const MocsState& state) {
    const TracePoint point{state.nfc, hypervolume_2d(objectives_of(state.population)),
                           state.population.size()};
    record.trace.push_back(point);
    if (sink) sink(point);
  };

  MocsState state = mocs_initialize(cfg, problem);
  emit(state);

  const std::size_t patience = 2 * state.dimension;
  if (state.nfc >= cfg.max_nfc) {
    record.termination = Termination::Budget;
  } else {
    while (true) {
      mocs_iteration(state, problem, cfg.threads);
      emit(state);
      if (state.nfc > cfg.max_nfc) {
        record.termination = Termination::Budget;
        break;
      }
      if (state.unchanged_iters >= patience) {
        record.termination = Termination::Converged;
        break;
      }
    }
  }

  record.iterations = state.iterations;
  record.train_front = std::move(state.population);
  score_on_test(problem, record, cfg.threads);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace mocsfs
