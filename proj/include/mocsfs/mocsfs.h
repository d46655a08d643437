/*
 * mocsfs.h
 *
 * C interface to the multi-objective feature-selection library: dataset
 * loading and synthesis, single optimizer runs, whole experiments with file
 * output, and the built-in verification suite.
 *
 * Conventions:
 *   - Every fallible call returns a mocsfs_status; MOCSFS_OK is zero.
 *   - On failure, mocsfs_last_error() returns a message for the calling
 *     thread, valid until that thread's next failing call.
 *   - Objects are opaque handles released with the matching *_free call.
 *     Passing NULL to a *_free call is a no-op.
 *   - Strings returned from accessors are owned by the handle.
 */

#ifndef MOCSFS_H
#define MOCSFS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MOCSFS_BUILDING)
#    define MOCSFS_API __declspec(dllexport)
#  else
#    define MOCSFS_API __declspec(dllimport)
#  endif
#else
#  define MOCSFS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mocsfs_status {
  MOCSFS_OK = 0,
  MOCSFS_ERR_INVALID_ARGUMENT = 1,
  MOCSFS_ERR_IO = 2,
  MOCSFS_ERR_DATA = 3,
  MOCSFS_ERR_INTERNAL = 4
} mocsfs_status;

typedef enum mocsfs_algorithm {
  MOCSFS_ALGO_MOCS = 0,
  MOCSFS_ALGO_NSGA2 = 1
} mocsfs_algorithm;

typedef enum mocsfs_termination {
  MOCSFS_TERMINATION_BUDGET = 0,
  MOCSFS_TERMINATION_CONVERGED = 1
} mocsfs_termination;

typedef struct mocsfs_dataset mocsfs_dataset;
typedef struct mocsfs_run mocsfs_run;

typedef struct mocsfs_synthetic_spec {
  size_t d_total;
  size_t d_informative;
  size_t n_instances;
  size_t n_classes;
  double noise;       /* Gaussian standard deviation per coordinate */
  double separation;  /* minimum centroid distance in units of noise, >= 4 */
  uint64_t seed;
} mocsfs_synthetic_spec;

typedef struct mocsfs_experiment_config {
  mocsfs_algorithm algorithm;
  size_t runs;
  uint64_t base_seed;       /* run r uses base_seed + r */
  size_t k;
  double test_fraction;
  uint64_t max_nfc;
  size_t pop_size;
  int normalize;            /* min-max scaling fitted on the train split */
  int leave_one_out;        /* exclude each query from its own neighbours */
  double crossover_prob;    /* NSGA-II only */
  double mutation_prob;     /* NSGA-II only; negative selects 1/D */
  size_t tournament_size;   /* NSGA-II only */
  size_t threads;           /* evaluation workers; does not affect results */
  const char* dataset_source; /* echoed into summary.json; may be NULL */
} mocsfs_experiment_config;

typedef struct mocsfs_stat {
  double mean;
  double std;
} mocsfs_stat;

typedef struct mocsfs_summary {
  size_t runs;
  mocsfs_stat initial_hv;
  mocsfs_stat final_train_hv;
  mocsfs_stat final_test_hv;
  mocsfs_stat n_solutions;
  mocsfs_stat min_error;
  mocsfs_stat avg_feature_ratio;
} mocsfs_summary;

typedef void (*mocsfs_log_fn)(void* user, const char* message);

/* Called once per verification check. */
typedef void (*mocsfs_check_fn)(void* user, const char* name, int passed, const char* detail);

MOCSFS_API const char* mocsfs_version(void);
MOCSFS_API const char* mocsfs_last_error(void);
MOCSFS_API const char* mocsfs_status_string(mocsfs_status status);

/* Datasets */
MOCSFS_API mocsfs_status mocsfs_dataset_load_csv(const char* path, mocsfs_dataset** out);
MOCSFS_API void mocsfs_synthetic_spec_default(mocsfs_synthetic_spec* spec);
MOCSFS_API mocsfs_status mocsfs_synthetic_spec_parse(const char* text, mocsfs_synthetic_spec* spec);
MOCSFS_API mocsfs_status mocsfs_dataset_make_synthetic(const mocsfs_synthetic_spec* spec,
                                                       mocsfs_dataset** out);
MOCSFS_API mocsfs_status mocsfs_dataset_write_csv(const mocsfs_dataset* ds, const char* path);
MOCSFS_API size_t mocsfs_dataset_n_features(const mocsfs_dataset* ds);
MOCSFS_API size_t mocsfs_dataset_n_instances(const mocsfs_dataset* ds);
MOCSFS_API size_t mocsfs_dataset_n_classes(const mocsfs_dataset* ds);
MOCSFS_API void mocsfs_dataset_free(mocsfs_dataset* ds);

/* Experiments */
MOCSFS_API void mocsfs_experiment_config_default(mocsfs_experiment_config* cfg);

/* Runs all seeds, writing per-run CSVs and summary.json into out_dir.
   `log` may be NULL; `summary` may be NULL. */
MOCSFS_API mocsfs_status mocsfs_run_experiment(const mocsfs_dataset* ds,
                                               const mocsfs_experiment_config* cfg,
                                               const char* out_dir, mocsfs_log_fn log,
                                               void* user, mocsfs_summary* summary);

/* Recomputes summary.json from the CSVs in out_dir; *matches is set to 1 when
   the result is byte-identical to the file on disk. */
MOCSFS_API mocsfs_status mocsfs_check_summary(const char* out_dir, int* matches);

/* Single run r of an experiment config, kept in memory. */
MOCSFS_API mocsfs_status mocsfs_run_once(const mocsfs_dataset* ds,
                                         const mocsfs_experiment_config* cfg, size_t run_index,
                                         mocsfs_run** out);
MOCSFS_API uint64_t mocsfs_run_seed(const mocsfs_run* run);
MOCSFS_API mocsfs_termination mocsfs_run_termination(const mocsfs_run* run);
MOCSFS_API uint64_t mocsfs_run_final_nfc(const mocsfs_run* run);
MOCSFS_API size_t mocsfs_run_trace_size(const mocsfs_run* run);
MOCSFS_API mocsfs_status mocsfs_run_trace_point(const mocsfs_run* run, size_t i, uint64_t* nfc,
                                                double* train_hv);
MOCSFS_API size_t mocsfs_run_front_size(const mocsfs_run* run);
/* Train and test objectives of front member i; any output pointer may be NULL. */
MOCSFS_API mocsfs_status mocsfs_run_front_member(const mocsfs_run* run, size_t i, double* f1,
                                                 double* f2, double* test_f1, double* test_f2);
/* Packed hex genotype of front member i, or NULL when out of range. */
MOCSFS_API const char* mocsfs_run_front_genotype_hex(const mocsfs_run* run, size_t i);
MOCSFS_API void mocsfs_run_free(mocsfs_run* run);

/* Objective helpers */
MOCSFS_API double mocsfs_hypervolume_2d(const double* f1, const double* f2, size_t n,
                                        double ref_f1, double ref_f2);

/* Runs the built-in verification suite; *n_failed receives the failure count. */
MOCSFS_API mocsfs_status mocsfs_verify(mocsfs_check_fn on_check, void* user, size_t* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* MOCSFS_H */
