// mocsfs command-line front end. Links only the C interface.
//
//   mocsfs bench (--dataset <csv> | --synthetic <spec>) --algo mocs|nsga2 --out <dir> [...]
//   mocsfs gen-synth --spec <spec> --out <csv>
//   mocsfs verify
//
// Exit codes: 0 success, 1 usage, 2 data error (or a failed verification).
// The only environment input is MOCSFS_THREADS (evaluation workers).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mocsfs/mocsfs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DatasetDeleter {
  void operator()(mocsfs_dataset* ds) const { mocsfs_dataset_free(ds); }
};
using DatasetPtr = std::unique_ptr<mocsfs_dataset, DatasetDeleter>;

int report(mocsfs_status status) {
  std::fprintf(stderr, "error: %s\n", mocsfs_last_error());
  return status == MOCSFS_ERR_INVALID_ARGUMENT ? kExitUsage : kExitData;
}

std::size_t threads_from_env() {
  const char* value = std::getenv("MOCSFS_THREADS");
  if (!value || !*value) return 1;
  char* end = nullptr;
  const unsigned long n = std::strtoul(value, &end, 10);
  return (end && *end == '\0' && n > 0) ? static_cast<std::size_t>(n) : 1;
}

void log_line(void* /*user*/, const char* message) { std::fprintf(stderr, "%s\n", message); }

void print_check(void* /*user*/, const char* name, int passed, const char* detail) {
  std::printf("[%s] %s%s%s\n", passed ? "PASS" : "FAIL", name, *detail ? " - " : "", detail);
  std::fflush(stdout);
}

void print_stat(const char* name, mocsfs_stat s) {
  std::printf("  %-20s %.4f +- %.4f\n", name, s.mean, s.std);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective wrapper feature selection: coordinate search and NSGA-II"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mocsfs_version());

  // bench
  auto* bench = app.add_subcommand("bench", "Run a multi-seed benchmark and write traces and fronts");
  std::string dataset_path, synthetic_text, algo = "mocs", out_dir;
  mocsfs_experiment_config cfg;
  mocsfs_experiment_config_default(&cfg);
  bool no_normalize = false, no_loo = false;
  auto* dataset_opt = bench->add_option("--dataset", dataset_path, "CSV file, label in the last column");
  auto* synth_opt = bench->add_option("--synthetic", synthetic_text, "Synthetic spec, e.g. d=200,informative=10,n=150,classes=3");
  dataset_opt->excludes(synth_opt);
  bench->add_option("--algo", algo, "Optimizer")->check(CLI::IsMember({"mocs", "nsga2"}));
  bench->add_option("--runs", cfg.runs, "Independent runs")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.base_seed, "Base seed; run r uses seed + r");
  bench->add_option("--k", cfg.k, "Neighbours for kNN")->check(CLI::PositiveNumber);
  bench->add_option("--test-fraction", cfg.test_fraction, "Fraction of each class held out for testing")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--max-nfc", cfg.max_nfc, "Evaluation budget");
  bench->add_option("--pop", cfg.pop_size, "Population size (MOCS front cap)")->check(CLI::PositiveNumber);
  bench->add_flag("--no-normalize", no_normalize, "Disable min-max feature scaling");
  bench->add_flag("--no-loo", no_loo, "Score training accuracy with self-matches included");
  bench->add_option("--crossover-prob", cfg.crossover_prob, "NSGA-II crossover probability")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--mutation-prob", cfg.mutation_prob, "NSGA-II per-bit flip probability (default 1/D)");
  bench->add_option("--tournament-size", cfg.tournament_size, "NSGA-II tournament size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", out_dir, "Output directory")->required();

  // gen-synth
  auto* gen = app.add_subcommand("gen-synth", "Write a synthetic classification dataset as CSV");
  std::string gen_spec, gen_out;
  gen->add_option("--spec", gen_spec, "Synthetic spec (key=value list)");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "Run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (bench->parsed()) {
    if (dataset_path.empty() == synthetic_text.empty()) {
      std::fprintf(stderr, "error: bench needs exactly one of --dataset or --synthetic\n");
      return kExitUsage;
    }
    mocsfs_dataset* raw = nullptr;
    std::string source;
    if (!dataset_path.empty()) {
      if (auto st = mocsfs_dataset_load_csv(dataset_path.c_str(), &raw); st != MOCSFS_OK) {
        std::fprintf(stderr, "error: %s\n", mocsfs_last_error());
        return kExitData;
      }
      source = dataset_path;
    } else {
      mocsfs_synthetic_spec spec;
      mocsfs_synthetic_spec_default(&spec);
      if (auto st = mocsfs_synthetic_spec_parse(synthetic_text.c_str(), &spec); st != MOCSFS_OK) {
        return report(st);
      }
      if (auto st = mocsfs_dataset_make_synthetic(&spec, &raw); st != MOCSFS_OK) return report(st);
      source = "synthetic:" + synthetic_text;
    }
    DatasetPtr ds(raw);

    cfg.algorithm = algo == "nsga2" ? MOCSFS_ALGO_NSGA2 : MOCSFS_ALGO_MOCS;
    cfg.normalize = no_normalize ? 0 : 1;
    cfg.leave_one_out = no_loo ? 0 : 1;
    cfg.threads = threads_from_env();
    cfg.dataset_source = source.c_str();

    mocsfs_summary summary{};
    if (auto st = mocsfs_run_experiment(ds.get(), &cfg, out_dir.c_str(), log_line, nullptr, &summary);
        st != MOCSFS_OK) {
      return report(st);
    }
    std::printf("%s over %zu run(s), results in %s\n", algo.c_str(), summary.runs, out_dir.c_str());
    print_stat("initial HV", summary.initial_hv);
    print_stat("final train HV", summary.final_train_hv);
    print_stat("final test HV", summary.final_test_hv);
    print_stat("#solutions", summary.n_solutions);
    print_stat("min error", summary.min_error);
    print_stat("avg feature ratio", summary.avg_feature_ratio);
    return kExitOk;
  }

  if (gen->parsed()) {
    mocsfs_synthetic_spec spec;
    mocsfs_synthetic_spec_default(&spec);
    if (auto st = mocsfs_synthetic_spec_parse(gen_spec.c_str(), &spec); st != MOCSFS_OK) return report(st);
    mocsfs_dataset* raw = nullptr;
    if (auto st = mocsfs_dataset_make_synthetic(&spec, &raw); st != MOCSFS_OK) return report(st);
    DatasetPtr ds(raw);
    if (auto st = mocsfs_dataset_write_csv(ds.get(), gen_out.c_str()); st != MOCSFS_OK) return report(st);
    std::printf("wrote %s: %zu instances, %zu features, %zu classes\n", gen_out.c_str(),
                mocsfs_dataset_n_instances(ds.get()), mocsfs_dataset_n_features(ds.get()),
                mocsfs_dataset_n_classes(ds.get()));
    return kExitOk;
  }

  if (verify->parsed()) {
    std::size_t failed = 0;
    if (auto st = mocsfs_verify(print_check, nullptr, &failed); st != MOCSFS_OK) return report(st);
    std::printf("%zu check(s) failed\n", failed);
    return failed == 0 ? kExitOk : kExitData;
  }
  return kExitUsage;
}
