#pragma once

// Binary multi-objective coordinate search.
//
// The population is always a mutually non-dominated set. One iteration picks
// the next variable from a per-sweep random permutation, flips that bit in a
// copy of every member, evaluates the copies, admits each copy its parent
// does not dominate, and keeps the first non-dominated front of the union.
// Fronts larger than the cap are thinned by crowding distance. The search
// stops once the budget is exceeded or the front has not changed for 2*D
// consecutive iterations.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "mocsfs/knn_eval.hpp"
#include "mocsfs/run_record.hpp"

namespace mocsfs {

inline constexpr std::size_t kUnboundedFront = std::numeric_limits<std::size_t>::max();

struct MocsConfig {
  std::size_t pop_size = 100;
  std::uint64_t max_nfc = 50'000;
  std::uint64_t seed = 1;
  /// Maximum front size after survival; 0 means `pop_size`.
  std::size_t front_cap = 0;
  std::size_t threads = 1;

  std::size_t effective_cap() const { return front_cap == 0 ? pop_size : front_cap; }
};

struct MocsState {
  std::vector<Individual> population;
  std::vector<std::size_t> permutation;
  std::size_t cursor = 0;
  std::uint64_t nfc = 0;
  std::size_t unchanged_iters = 0;
  std::size_t front_cap = 0;
  std::size_t dimension = 0;
  std::uint64_t iterations = 0;
  std::mt19937_64 rng;
};

/// Samples `pop_size` distinct random genotypes (each bit 1 with p = 0.5),
/// evaluates them and keeps the first front. Throws if the budget is below
/// the population size or there are fewer than `pop_size` genotypes.
MocsState mocs_initialize(const MocsConfig& cfg, Problem& problem);

/// One variable-iteration; costs exactly |population| evaluations.
void mocs_iteration(MocsState& state, Problem& problem, std::size_t threads = 1);

RunRecord run_mocs(const MocsConfig& cfg, Problem& problem, const TraceSink& sink = {});

/// Uniform random genotype of length `d`.
BitMask random_genotype(std::size_t d, std::mt19937_64& rng);

/// `n` pairwise-distinct random genotypes.
std::vector<BitMask> distinct_random_genotypes(std::size_t n, std::size_t d, std::mt19937_64& rng);

}  // namespace mocsfs
