#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mocsfs/dataset.hpp"
#include "mocsfs/run_record.hpp"

namespace mocsfs {

inline constexpr std::string_view kVersion = "0.1.0";

// --- synthetic data --------------------------------------------------------

struct SyntheticSpec {
  std::size_t d_total = 20;
  std::size_t d_informative = 4;
  std::size_t n_instances = 100;
  std::size_t n_classes = 2;
  double noise = 1.0;       // per-coordinate Gaussian standard deviation
  double separation = 4.0;  // minimum centroid distance, in units of `noise`
  std::uint64_t seed = 0;
};

/// Parses `key=value` pairs separated by commas, e.g.
/// "d_total=200,d_informative=10,n=150,classes=3,noise=1,seed=7".
/// Accepted keys: d_total|d, d_informative|informative, n_instances|n,
/// n_classes|classes|c, noise, separation, seed.
SyntheticSpec parse_synthetic_spec(std::string_view text);
std::string to_string(const SyntheticSpec& spec);

/// Class centroids on the first `d_informative` coordinates, pairwise at
/// least `separation * noise` apart; the remaining columns are pure noise.
/// Labels are assigned round-robin so every class has n / C or more rows.
Dataset make_synthetic(const SyntheticSpec& spec);

// --- experiments -----------------------------------------------------------

enum class Algorithm { Mocs, Nsga2 };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Mocs;
  std::size_t runs = 10;
  std::uint64_t base_seed = 1;
  std::size_t k = 5;
  double test_fraction = 0.2;
  std::uint64_t max_nfc = 50'000;
  std::size_t pop_size = 100;
  bool normalize = true;
  bool leave_one_out = true;
  double crossover_prob = 0.9;
  double mutation_prob = -1.0;  // negative: 1/D
  std::size_t tournament_size = 2;
  std::size_t threads = 1;      // never echoed into outputs
  std::string dataset_source;   // path or synthetic spec, echoed into summary.json
};

/// Seed of run `r`.
inline std::uint64_t run_seed(const ExperimentConfig& cfg, std::size_t r) {
  return cfg.base_seed + r;
}

/// One run: seeded stratified split, evaluator, optimizer, test scoring.
RunRecord run_single(const Dataset& ds, const ExperimentConfig& cfg, std::size_t r);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single run
};

/// Per-run numbers behind the summary table.
struct RunMetrics {
  double initial_hv = 0.0;
  double final_train_hv = 0.0;
  double final_test_hv = 0.0;
  double n_solutions = 0.0;       // genotype-distinct front members
  double min_error = 0.0;         // over the train front
  double avg_feature_ratio = 0.0;  // mean f2 over the train front
};

RunMetrics metrics_of(double initial_hv, std::span<const ObjectivePair> train,
                      std::span<const BitMask> genotypes, std::span<const ObjectivePair> test);
RunMetrics metrics_of(const RunRecord& record);

struct SummaryStats {
  std::size_t runs = 0;
  Stat initial_hv;
  Stat final_train_hv;
  Stat final_test_hv;
  Stat n_solutions;
  Stat min_error;
  Stat avg_feature_ratio;
};

Stat mean_and_std(std::span<const double> values);
SummaryStats summarize(std::span<const RunMetrics> runs);

using LogFn = std::function<void(const std::string&)>;

struct ExperimentResult {
  std::vector<RunRecord> records;
  SummaryStats stats;
};

/// Runs every seed, writing per-run files as each run completes and
/// summary.json once all runs are done.
ExperimentResult run_experiment(const Dataset& ds, const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir, const LogFn& log = {});

/// Writes hv_trace_<r>.csv, pareto_train_<r>.csv and pareto_test_<r>.csv.
void emit_run_files(const RunRecord& record, std::size_t r, const std::filesystem::path& dir);

/// Writes summary.json.
void emit_summary(const Dataset& ds, const ExperimentConfig& cfg,
                  std::span<const RunRecord> records, const std::filesystem::path& dir);

/// Rebuilds summary.json from the per-run CSVs in `dir` (plus the config and
/// run metadata in the existing summary) and returns the JSON text.
std::string recompute_summary(const std::filesystem::path& dir);

/// Whole file as a string.
std::string read_text(const std::filesystem::path& path);

}  // namespace mocsfs
