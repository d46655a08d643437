#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "mocsfs/bitmask.hpp"
#include "mocsfs/knn_eval.hpp"
#include "mocsfs/run_record.hpp"

namespace mocsfs {

struct Nsga2Config {
  std::size_t pop_size = 100;
  std::uint64_t max_nfc = 50'000;
  double crossover_prob = 0.9;
  /// Per-bit flip probability; negative means 1/D.
  double mutation_prob = -1.0;
  std::size_t tournament_size = 2;
  std::uint64_t seed = 1;
  /// Regeneration attempts for an offspring that duplicates a parent or
  /// sibling before the duplicate is accepted.
  std::size_t duplicate_retries = 8;
  std::size_t threads = 1;
};

/// Index of the tournament winner among `tournament_size` uniformly drawn
/// entrants: lower rank, then larger crowding, then earlier draw.
std::size_t tournament_select(std::span<const std::size_t> rank, std::span<const double> crowding,
                              std::size_t tournament_size, std::mt19937_64& rng);

/// Winner among the given entrants (in draw order); same ordering rule.
std::size_t tournament_winner(std::span<const std::size_t> entrants,
                              std::span<const std::size_t> rank, std::span<const double> crowding);

/// Single-point crossover at a fixed cut in [1, D-1]: children swap suffixes.
std::pair<BitMask, BitMask> spx_at(const BitMask& a, const BitMask& b, std::size_t cut);

/// With probability `crossover_prob`, crossover at a uniform cut in
/// [1, D-1]; otherwise (or when D == 1) copies of the parents.
std::pair<BitMask, BitMask> spx_crossover(const BitMask& a, const BitMask& b,
                                          double crossover_prob, std::mt19937_64& rng);

/// Flips each bit independently with probability `p`.
BitMask bitflip_mutate(const BitMask& g, double p, std::mt19937_64& rng);

/// Rank of every member plus its crowding distance within its own front.
struct RankAndCrowding {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
  std::vector<std::size_t> first_front;
};
RankAndCrowding rank_and_crowd(std::span<const ObjectivePair> pop);

/// Indices of `n` survivors from `pop`: whole fronts in rank order, the last
/// partially filled front thinned by crowding distance.
std::vector<std::size_t> environmental_selection(std::span<const ObjectivePair> pop, std::size_t n);

RunRecord run_nsga2(const Nsga2Config& cfg, Problem& problem, const TraceSink& sink = {});

}  // namespace mocsfs
