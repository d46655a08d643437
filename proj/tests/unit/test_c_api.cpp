#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "mocsfs/mocsfs.h"

namespace fs = std::filesystem;

TEST_CASE("version and status strings") {
  CHECK(std::string(mocsfs_version()) == "0.1.0");
  CHECK(std::string(mocsfs_status_string(MOCSFS_OK)) == "ok");
  CHECK(std::string(mocsfs_status_string(MOCSFS_ERR_DATA)) == "data error");
}

TEST_CASE("null arguments are rejected with a message") {
  mocsfs_dataset* ds = nullptr;
  CHECK(mocsfs_dataset_load_csv(nullptr, &ds) == MOCSFS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(mocsfs_last_error()) > 0);
  CHECK(mocsfs_run_experiment(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr) ==
        MOCSFS_ERR_INVALID_ARGUMENT);
  mocsfs_dataset_free(nullptr);
  mocsfs_run_free(nullptr);
  CHECK(mocsfs_run_front_genotype_hex(nullptr, 0) == nullptr);
}

TEST_CASE("load errors map to status codes") {
  mocsfs_dataset* ds = nullptr;
  CHECK(mocsfs_dataset_load_csv("/nonexistent/x.csv", &ds) == MOCSFS_ERR_IO);
  CHECK(ds == nullptr);
  CHECK(std::string(mocsfs_last_error()).find("/nonexistent/x.csv") != std::string::npos);

  const auto path = fs::temp_directory_path() / "mocsfs_capi_bad.csv";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("1,2,a\n1,nan,b\n", f);
    std::fclose(f);
  }
  CHECK(mocsfs_dataset_load_csv(path.c_str(), &ds) == MOCSFS_ERR_DATA);
  CHECK(std::string(mocsfs_last_error()).find("row 2, column 2") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("synthetic data through the C interface") {
  mocsfs_synthetic_spec spec;
  mocsfs_synthetic_spec_default(&spec);
  REQUIRE(mocsfs_synthetic_spec_parse("d=12,informative=2,n=40,classes=2,seed=3", &spec) == MOCSFS_OK);
  CHECK(mocsfs_synthetic_spec_parse("bogus=1", &spec) == MOCSFS_ERR_INVALID_ARGUMENT);
  mocsfs_dataset* ds = nullptr;
  REQUIRE(mocsfs_dataset_make_synthetic(&spec, &ds) == MOCSFS_OK);
  CHECK(mocsfs_dataset_n_features(ds) == 12);
  CHECK(mocsfs_dataset_n_instances(ds) == 40);
  CHECK(mocsfs_dataset_n_classes(ds) == 2);

  const auto path = fs::temp_directory_path() / "mocsfs_capi_synth.csv";
  REQUIRE(mocsfs_dataset_write_csv(ds, path.c_str()) == MOCSFS_OK);
  mocsfs_dataset* back = nullptr;
  REQUIRE(mocsfs_dataset_load_csv(path.c_str(), &back) == MOCSFS_OK);
  CHECK(mocsfs_dataset_n_features(back) == 12);
  mocsfs_dataset_free(back);
  fs::remove(path);
  mocsfs_dataset_free(ds);
}

TEST_CASE("single runs and experiments") {
  mocsfs_synthetic_spec spec;
  mocsfs_synthetic_spec_default(&spec);
  REQUIRE(mocsfs_synthetic_spec_parse("d=10,informative=2,n=40,classes=2,seed=5", &spec) == MOCSFS_OK);
  mocsfs_dataset* ds = nullptr;
  REQUIRE(mocsfs_dataset_make_synthetic(&spec, &ds) == MOCSFS_OK);

  mocsfs_experiment_config cfg;
  mocsfs_experiment_config_default(&cfg);
  CHECK(cfg.runs == 10);
  CHECK(cfg.max_nfc == 50000);
  CHECK(cfg.pop_size == 100);
  CHECK(cfg.k == 5);
  cfg.runs = 2;
  cfg.pop_size = 10;
  cfg.max_nfc = 200;
  cfg.base_seed = 3;

  mocsfs_run* run = nullptr;
  REQUIRE(mocsfs_run_once(ds, &cfg, 1, &run) == MOCSFS_OK);
  CHECK(mocsfs_run_seed(run) == 4);
  const size_t n_trace = mocsfs_run_trace_size(run);
  REQUIRE(n_trace >= 1);
  uint64_t nfc = 0;
  double hv = 0.0;
  REQUIRE(mocsfs_run_trace_point(run, 0, &nfc, &hv) == MOCSFS_OK);
  CHECK(nfc == 10);
  CHECK(mocsfs_run_trace_point(run, n_trace, &nfc, &hv) == MOCSFS_ERR_INVALID_ARGUMENT);
  REQUIRE(mocsfs_run_trace_point(run, n_trace - 1, &nfc, &hv) == MOCSFS_OK);
  CHECK(nfc == mocsfs_run_final_nfc(run));

  const size_t n_front = mocsfs_run_front_size(run);
  REQUIRE(n_front >= 1);
  std::vector<double> f1(n_front), f2(n_front);
  for (size_t i = 0; i < n_front; ++i) {
    double t1 = -1, t2 = -1;
    REQUIRE(mocsfs_run_front_member(run, i, &f1[i], &f2[i], &t1, &t2) == MOCSFS_OK);
    CHECK(t2 == f2[i]);
    CHECK(std::strlen(mocsfs_run_front_genotype_hex(run, i)) == 3);
  }
  CHECK(mocsfs_hypervolume_2d(f1.data(), f2.data(), n_front, 1.0, 1.0) == hv);
  CHECK(mocsfs_run_front_genotype_hex(run, n_front) == nullptr);
  mocsfs_run_free(run);

  const auto dir = fs::temp_directory_path() / "mocsfs_capi_exp";
  fs::remove_all(dir);
  mocsfs_summary summary{};
  REQUIRE(mocsfs_run_experiment(ds, &cfg, dir.c_str(), nullptr, nullptr, &summary) == MOCSFS_OK);
  CHECK(summary.runs == 2);
  CHECK(summary.final_train_hv.mean >= summary.initial_hv.mean);
  int matches = 0;
  REQUIRE(mocsfs_check_summary(dir.c_str(), &matches) == MOCSFS_OK);
  CHECK(matches == 1);

  cfg.algorithm = static_cast<mocsfs_algorithm>(7);
  CHECK(mocsfs_run_experiment(ds, &cfg, dir.c_str(), nullptr, nullptr, nullptr) ==
        MOCSFS_ERR_INVALID_ARGUMENT);
  cfg.algorithm = MOCSFS_ALGO_NSGA2;
  cfg.pop_size = 9;
  CHECK(mocsfs_run_experiment(ds, &cfg, dir.c_str(), nullptr, nullptr, nullptr) ==
        MOCSFS_ERR_INVALID_ARGUMENT);
  mocsfs_dataset_free(ds);
}

TEST_CASE("hypervolume helper") {
  const double f1[] = {0.25, 0.75}, f2[] = {0.75, 0.25};
  CHECK(mocsfs_hypervolume_2d(f1, f2, 2, 1.0, 1.0) == 0.3125);
  CHECK(mocsfs_hypervolume_2d(f1, f2, 0, 1.0, 1.0) == 0.0);
}
