#include "mocsfs/mocsfs.h"

#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "mocsfs/dataset.hpp"
#include "mocsfs/error.hpp"
#include "mocsfs/harness.hpp"
#include "mocsfs/verify.hpp"

struct mocsfs_dataset {
  mocsfs::Dataset data;
};

struct mocsfs_run {
  mocsfs::RunRecord record;
  std::vector<std::string> genotype_hex;
};

namespace {

thread_local std::string g_last_error;

mocsfs_status fail(mocsfs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Translates exceptions escaping `body` into status codes.
template <typename Fn>
mocsfs_status guarded(Fn&& body) {
  try {
    body();
    return MOCSFS_OK;
  } catch (const mocsfs::Error& e) {
    switch (e.kind()) {
      case mocsfs::ErrorKind::InvalidArgument: return fail(MOCSFS_ERR_INVALID_ARGUMENT, e.what());
      case mocsfs::ErrorKind::Io: return fail(MOCSFS_ERR_IO, e.what());
      case mocsfs::ErrorKind::Data: return fail(MOCSFS_ERR_DATA, e.what());
    }
    return fail(MOCSFS_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MOCSFS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MOCSFS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MOCSFS_ERR_INTERNAL, "unknown error");
  }
}

mocsfs::SyntheticSpec to_cpp(const mocsfs_synthetic_spec& s) {
  return {s.d_total, s.d_informative, s.n_instances, s.n_classes, s.noise, s.separation, s.seed};
}

mocsfs_synthetic_spec to_c(const mocsfs::SyntheticSpec& s) {
  return {s.d_total, s.d_informative, s.n_instances, s.n_classes, s.noise, s.separation, s.seed};
}

mocsfs::ExperimentConfig to_cpp(const mocsfs_experiment_config& c) {
  mocsfs::ExperimentConfig cfg;
  switch (c.algorithm) {
    case MOCSFS_ALGO_MOCS: cfg.algorithm = mocsfs::Algorithm::Mocs; break;
    case MOCSFS_ALGO_NSGA2: cfg.algorithm = mocsfs::Algorithm::Nsga2; break;
    default: mocsfs::throw_invalid("unknown algorithm id " + std::to_string(c.algorithm));
  }
  cfg.runs = c.runs;
  cfg.base_seed = c.base_seed;
  cfg.k = c.k;
  cfg.test_fraction = c.test_fraction;
  cfg.max_nfc = c.max_nfc;
  cfg.pop_size = c.pop_size;
  cfg.normalize = c.normalize != 0;
  cfg.leave_one_out = c.leave_one_out != 0;
  cfg.crossover_prob = c.crossover_prob;
  cfg.mutation_prob = c.mutation_prob;
  cfg.tournament_size = c.tournament_size;
  cfg.threads = c.threads == 0 ? 1 : c.threads;
  cfg.dataset_source = c.dataset_source ? c.dataset_source : "";
  return cfg;
}

mocsfs_stat to_c(const mocsfs::Stat& s) { return {s.mean, s.std}; }

#define REQUIRE_ARG(cond, msg) \
  if (!(cond)) return fail(MOCSFS_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* mocsfs_version(void) { return mocsfs::kVersion.data(); }

const char* mocsfs_last_error(void) { return g_last_error.c_str(); }

const char* mocsfs_status_string(mocsfs_status status) {
  switch (status) {
    case MOCSFS_OK: return "ok";
    case MOCSFS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MOCSFS_ERR_IO: return "i/o error";
    case MOCSFS_ERR_DATA: return "data error";
    case MOCSFS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

mocsfs_status mocsfs_dataset_load_csv(const char* path, mocsfs_dataset** out) {
  REQUIRE_ARG(path && out, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new mocsfs_dataset{mocsfs::load_csv(path)}; });
}

void mocsfs_synthetic_spec_default(mocsfs_synthetic_spec* spec) {
  if (spec) *spec = to_c(mocsfs::SyntheticSpec{});
}

mocsfs_status mocsfs_synthetic_spec_parse(const char* text, mocsfs_synthetic_spec* spec) {
  REQUIRE_ARG(text && spec, "text and spec must not be NULL");
  return guarded([&] { *spec = to_c(mocsfs::parse_synthetic_spec(text)); });
}

mocsfs_status mocsfs_dataset_make_synthetic(const mocsfs_synthetic_spec* spec, mocsfs_dataset** out) {
  REQUIRE_ARG(spec && out, "spec and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new mocsfs_dataset{mocsfs::make_synthetic(to_cpp(*spec))}; });
}

mocsfs_status mocsfs_dataset_write_csv(const mocsfs_dataset* ds, const char* path) {
  REQUIRE_ARG(ds && path, "dataset and path must not be NULL");
  return guarded([&] { mocsfs::write_csv(ds->data, path); });
}

size_t mocsfs_dataset_n_features(const mocsfs_dataset* ds) { return ds ? ds->data.n_features : 0; }
size_t mocsfs_dataset_n_instances(const mocsfs_dataset* ds) { return ds ? ds->data.n_instances : 0; }
size_t mocsfs_dataset_n_classes(const mocsfs_dataset* ds) { return ds ? ds->data.n_classes : 0; }

void mocsfs_dataset_free(mocsfs_dataset* ds) { delete ds; }

void mocsfs_experiment_config_default(mocsfs_experiment_config* cfg) {
  if (!cfg) return;
  const mocsfs::ExperimentConfig d;
  cfg->algorithm = MOCSFS_ALGO_MOCS;
  cfg->runs = d.runs;
  cfg->base_seed = d.base_seed;
  cfg->k = d.k;
  cfg->test_fraction = d.test_fraction;
  cfg->max_nfc = d.max_nfc;
  cfg->pop_size = d.pop_size;
  cfg->normalize = d.normalize ? 1 : 0;
  cfg->leave_one_out = d.leave_one_out ? 1 : 0;
  cfg->crossover_prob = d.crossover_prob;
  cfg->mutation_prob = d.mutation_prob;
  cfg->tournament_size = d.tournament_size;
  cfg->threads = d.threads;
  cfg->dataset_source = nullptr;
}

mocsfs_status mocsfs_run_experiment(const mocsfs_dataset* ds, const mocsfs_experiment_config* cfg,
                                    const char* out_dir, mocsfs_log_fn log, void* user,
                                    mocsfs_summary* summary) {
  REQUIRE_ARG(ds && cfg && out_dir, "dataset, config and out_dir must not be NULL");
  return guarded([&] {
    mocsfs::LogFn sink;
    if (log) sink = [log, user](const std::string& msg) { log(user, msg.c_str()); };
    const auto result = mocsfs::run_experiment(ds->data, to_cpp(*cfg), out_dir, sink);
    if (summary) {
      const auto& s = result.stats;
      *summary = {s.runs,
                  to_c(s.initial_hv),
                  to_c(s.final_train_hv),
                  to_c(s.final_test_hv),
                  to_c(s.n_solutions),
                  to_c(s.min_error),
                  to_c(s.avg_feature_ratio)};
    }
  });
}

mocsfs_status mocsfs_check_summary(const char* out_dir, int* matches) {
  REQUIRE_ARG(out_dir && matches, "out_dir and matches must not be NULL");
  return guarded([&] {
    const std::filesystem::path dir(out_dir);
    *matches = mocsfs::recompute_summary(dir) == mocsfs::read_text(dir / "summary.json") ? 1 : 0;
  });
}

mocsfs_status mocsfs_run_once(const mocsfs_dataset* ds, const mocsfs_experiment_config* cfg,
                              size_t run_index, mocsfs_run** out) {
  REQUIRE_ARG(ds && cfg && out, "dataset, config and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto run = std::make_unique<mocsfs_run>();
    run->record = mocsfs::run_single(ds->data, to_cpp(*cfg), run_index);
    for (const auto& m : run->record.train_front) run->genotype_hex.push_back(m.genotype.to_hex());
    *out = run.release();
  });
}

uint64_t mocsfs_run_seed(const mocsfs_run* run) { return run ? run->record.seed : 0; }

mocsfs_termination mocsfs_run_termination(const mocsfs_run* run) {
  return run && run->record.termination == mocsfs::Termination::Converged
             ? MOCSFS_TERMINATION_CONVERGED
             : MOCSFS_TERMINATION_BUDGET;
}

uint64_t mocsfs_run_final_nfc(const mocsfs_run* run) { return run ? run->record.final_nfc() : 0; }

size_t mocsfs_run_trace_size(const mocsfs_run* run) { return run ? run->record.trace.size() : 0; }

mocsfs_status mocsfs_run_trace_point(const mocsfs_run* run, size_t i, uint64_t* nfc, double* train_hv) {
  REQUIRE_ARG(run, "run must not be NULL");
  REQUIRE_ARG(i < run->record.trace.size(), "trace index out of range");
  if (nfc) *nfc = run->record.trace[i].nfc;
  if (train_hv) *train_hv = run->record.trace[i].train_hv;
  return MOCSFS_OK;
}

size_t mocsfs_run_front_size(const mocsfs_run* run) { return run ? run->record.train_front.size() : 0; }

mocsfs_status mocsfs_run_front_member(const mocsfs_run* run, size_t i, double* f1, double* f2,
                                      double* test_f1, double* test_f2) {
  REQUIRE_ARG(run, "run must not be NULL");
  REQUIRE_ARG(i < run->record.train_front.size(), "front index out of range");
  const auto& train = run->record.train_front[i].objectives;
  const auto& test = run->record.test_objectives[i];
  if (f1) *f1 = train.f1;
  if (f2) *f2 = train.f2;
  if (test_f1) *test_f1 = test.f1;
  if (test_f2) *test_f2 = test.f2;
  return MOCSFS_OK;
}

const char* mocsfs_run_front_genotype_hex(const mocsfs_run* run, size_t i) {
  if (!run || i >= run->genotype_hex.size()) return nullptr;
  return run->genotype_hex[i].c_str();
}

void mocsfs_run_free(mocsfs_run* run) { delete run; }

double mocsfs_hypervolume_2d(const double* f1, const double* f2, size_t n, double ref_f1, double ref_f2) {
  if (n == 0 || !f1 || !f2) return 0.0;
  std::vector<mocsfs::ObjectivePair> pts(n);
  for (size_t i = 0; i < n; ++i) pts[i] = {f1[i], f2[i]};
  return mocsfs::hypervolume_2d(pts, {ref_f1, ref_f2});
}

mocsfs_status mocsfs_verify(mocsfs_check_fn on_check, void* user, size_t* n_failed) {
  REQUIRE_ARG(n_failed, "n_failed must not be NULL");
  return guarded([&] {
    std::size_t failed = 0;
    mocsfs::run_verification([&](const mocsfs::CheckResult& r) {
      if (!r.passed) ++failed;
      if (on_check) on_check(user, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str());
    });
    *n_failed = failed;
  });
}

}  // extern "C"
