#include "mocsfs/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "mocsfs/error.hpp"
#include "mocsfs/knn_eval.hpp"
#include "mocsfs/mocs.hpp"
#include "mocsfs/nsga2.hpp"

namespace mocsfs {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kNsgaDuplicateRetries = 8;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_field(std::string_view s, const std::string& what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Data, "cannot parse " + what + " from '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// Write to a sibling temp file then rename, so an interrupted run never
// leaves a truncated file in place of a completed one.
void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw Error(ErrorKind::Io, "failed while writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot move '" + tmp.string() + "' into place: " + ec.message());
}

std::string trace_file(std::size_t r) { return "hv_trace_" + std::to_string(r) + ".csv"; }
std::string train_file(std::size_t r) { return "pareto_train_" + std::to_string(r) + ".csv"; }
std::string test_file(std::size_t r) { return "pareto_test_" + std::to_string(r) + ".csv"; }

Json stat_json(const Stat& s) { return Json{{"mean", s.mean}, {"std", s.std}}; }

Json metrics_json(const RunMetrics& m) {
  return Json{{"initial_hv", m.initial_hv},       {"final_train_hv", m.final_train_hv},
              {"final_test_hv", m.final_test_hv}, {"n_solutions", m.n_solutions},
              {"min_error", m.min_error},         {"avg_feature_ratio", m.avg_feature_ratio}};
}

struct RunMeta {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::string termination;
  std::uint64_t final_nfc = 0;
  std::uint64_t iterations = 0;
};

std::string summary_text(const Json& config, std::span<const RunMeta> meta,
                         std::span<const RunMetrics> metrics) {
  const auto stats = summarize(metrics);
  Json doc;
  doc["artifact_version"] = std::string(kVersion);
  doc["config"] = config;
  Json runs = Json::array();
  for (std::size_t i = 0; i < meta.size(); ++i) {
    Json r{{"run", meta[i].run},
           {"seed", meta[i].seed},
           {"termination", meta[i].termination},
           {"final_nfc", meta[i].final_nfc},
           {"iterations", meta[i].iterations}};
    r["metrics"] = metrics_json(metrics[i]);
    runs.push_back(std::move(r));
  }
  doc["runs"] = std::move(runs);
  doc["stats"] = Json{{"runs", stats.runs},
                      {"initial_hv", stat_json(stats.initial_hv)},
                      {"final_train_hv", stat_json(stats.final_train_hv)},
                      {"final_test_hv", stat_json(stats.final_test_hv)},
                      {"n_solutions", stat_json(stats.n_solutions)},
                      {"min_error", stat_json(stats.min_error)},
                      {"avg_feature_ratio", stat_json(stats.avg_feature_ratio)}};
  return doc.dump(2) + "\n";
}

Json config_json(const Dataset& ds, const ExperimentConfig& cfg) {
  Json mutation = cfg.mutation_prob < 0.0 ? Json("1/D") : Json(cfg.mutation_prob);
  return Json{
      {"algorithm", std::string(to_string(cfg.algorithm))},
      {"runs", cfg.runs},
      {"base_seed", cfg.base_seed},
      {"k", cfg.k},
      {"test_fraction", cfg.test_fraction},
      {"split", "stratified"},
      {"max_nfc", cfg.max_nfc},
      {"pop_size", cfg.pop_size},
      {"normalize", cfg.normalize},
      {"leave_one_out", cfg.leave_one_out},
      {"reference_point", Json::array({1.0, 1.0})},
      {"nsga2",
       Json{{"crossover", "single-point"},
            {"crossover_prob", cfg.crossover_prob},
            {"mutation_prob", mutation},
            {"tournament_size", cfg.tournament_size},
            {"duplicate_retries", kNsgaDuplicateRetries}}},
      {"dataset",
       Json{{"source", cfg.dataset_source},
            {"name", ds.name},
            {"n_features", ds.n_features},
            {"n_instances", ds.n_instances},
            {"n_classes", ds.n_classes}}},
  };
}

RunMeta meta_of(const RunRecord& record, std::size_t r) {
  return {r, record.seed, std::string(to_string(record.termination)), record.final_nfc(),
          record.trace.empty() ? 0 : record.trace.size() - 1};
}

}  // namespace

// --- synthetic data --------------------------------------------------------

SyntheticSpec parse_synthetic_spec(std::string_view text) {
  SyntheticSpec spec;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw_invalid("synthetic spec item '" + std::string(item) + "' is not key=value");
    }
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    const std::string what = "synthetic spec value for '" + key + "'";
    try {
      if (key == "d_total" || key == "d") {
        spec.d_total = parse_field<std::size_t>(value, what);
      } else if (key == "d_informative" || key == "informative") {
        spec.d_informative = parse_field<std::size_t>(value, what);
      } else if (key == "n_instances" || key == "n") {
        spec.n_instances = parse_field<std::size_t>(value, what);
      } else if (key == "n_classes" || key == "classes" || key == "c") {
        spec.n_classes = parse_field<std::size_t>(value, what);
      } else if (key == "noise") {
        spec.noise = parse_field<double>(value, what);
      } else if (key == "separation") {
        spec.separation = parse_field<double>(value, what);
      } else if (key == "seed") {
        spec.seed = parse_field<std::uint64_t>(value, what);
      } else {
        throw_invalid("unknown synthetic spec key '" + key + "'");
      }
    } catch (const Error& e) {
      throw_invalid(e.what());
    }
  }
  return spec;
}

std::string to_string(const SyntheticSpec& spec) {
  return "d_total=" + std::to_string(spec.d_total) +
         ",d_informative=" + std::to_string(spec.d_informative) +
         ",n_instances=" + std::to_string(spec.n_instances) +
         ",n_classes=" + std::to_string(spec.n_classes) + ",noise=" + format_double(spec.noise) +
         ",separation=" + format_double(spec.separation) + ",seed=" + std::to_string(spec.seed);
}

Dataset make_synthetic(const SyntheticSpec& spec) {
  if (spec.d_total == 0) throw_invalid("synthetic spec: d_total must be at least 1");
  if (spec.d_informative == 0 || spec.d_informative > spec.d_total) {
    throw_invalid("synthetic spec: d_informative must lie in [1, d_total]");
  }
  if (spec.n_classes < 2) throw_invalid("synthetic spec: at least 2 classes are required");
  if (spec.n_instances < 2 * spec.n_classes) {
    throw_invalid("synthetic spec: n_instances must be at least 2 * n_classes");
  }
  if (!(spec.noise > 0.0) || !std::isfinite(spec.noise)) {
    throw_invalid("synthetic spec: noise must be a positive finite standard deviation");
  }
  if (!(spec.separation >= 4.0) || !std::isfinite(spec.separation)) {
    throw_invalid("synthetic spec: separation must be at least 4 (noise standard deviations)");
  }

  std::mt19937_64 rng(spec.seed);
  const std::size_t c_count = spec.n_classes;
  const std::size_t di = spec.d_informative;
  const double min_gap = spec.separation * spec.noise;

  // Rejection-sample centroids in a cube, widening it until the pairwise gap
  // requirement is met.
  std::vector<std::vector<double>> centroids(c_count, std::vector<double>(di));
  double half_width = min_gap / std::sqrt(static_cast<double>(di));
  for (bool placed = false; !placed; half_width *= 1.25) {
    std::uniform_real_distribution<double> coord(-half_width, half_width);
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      for (auto& c : centroids) {
        for (auto& v : c) v = coord(rng);
      }
      placed = true;
      for (std::size_t a = 0; a < c_count && placed; ++a) {
        for (std::size_t b = a + 1; b < c_count && placed; ++b) {
          double sq = 0.0;
          for (std::size_t j = 0; j < di; ++j) {
            const double diff = centroids[a][j] - centroids[b][j];
            sq += diff * diff;
          }
          placed = std::sqrt(sq) >= min_gap;
        }
      }
    }
  }

  Dataset ds;
  ds.name = "synthetic";
  ds.n_instances = spec.n_instances;
  ds.n_features = spec.d_total;
  ds.n_classes = c_count;
  for (std::size_t c = 0; c < c_count; ++c) ds.class_names.push_back(std::to_string(c));
  ds.features.reserve(spec.n_instances * spec.d_total);
  std::normal_distribution<double> noise(0.0, spec.noise);
  for (std::size_t i = 0; i < spec.n_instances; ++i) {
    const auto label = static_cast<std::uint32_t>(i % c_count);
    ds.labels.push_back(label);
    for (std::size_t j = 0; j < spec.d_total; ++j) {
      const double centre = j < di ? centroids[label][j] : 0.0;
      ds.features.push_back(centre + noise(rng));
    }
  }
  ds.validate();
  return ds;
}

// --- experiments -----------------------------------------------------------

std::string_view to_string(Algorithm a) { return a == Algorithm::Mocs ? "mocs" : "nsga2"; }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "mocs") return Algorithm::Mocs;
  if (name == "nsga2") return Algorithm::Nsga2;
  throw_invalid("unknown algorithm '" + std::string(name) + "' (expected mocs or nsga2)");
}

RunRecord run_single(const Dataset& ds, const ExperimentConfig& cfg, std::size_t r) {
  const std::uint64_t seed = run_seed(cfg, r);
  const auto split = stratified_split(ds, cfg.test_fraction, seed);
  Evaluator evaluator(split, EvaluatorOptions{.k = cfg.k,
                                              .leave_one_out = cfg.leave_one_out,
                                              .normalize = cfg.normalize,
                                              .cache = false});
  if (cfg.algorithm == Algorithm::Mocs) {
    MocsConfig mc;
    mc.pop_size = cfg.pop_size;
    mc.max_nfc = cfg.max_nfc;
    mc.seed = seed;
    mc.threads = cfg.threads;
    return run_mocs(mc, evaluator);
  }
  Nsga2Config nc;
  nc.pop_size = cfg.pop_size;
  nc.max_nfc = cfg.max_nfc;
  nc.crossover_prob = cfg.crossover_prob;
  nc.mutation_prob = cfg.mutation_prob;
  nc.tournament_size = cfg.tournament_size;
  nc.duplicate_retries = kNsgaDuplicateRetries;
  nc.seed = seed;
  nc.threads = cfg.threads;
  return run_nsga2(nc, evaluator);
}

RunMetrics metrics_of(double initial_hv, std::span<const ObjectivePair> train,
                      std::span<const BitMask> genotypes, std::span<const ObjectivePair> test) {
  if (train.empty()) throw_invalid("final front is empty");
  RunMetrics m;
  m.initial_hv = initial_hv;
  m.final_train_hv = hypervolume_2d(train);
  m.final_test_hv = hypervolume_2d(test);
  m.n_solutions = static_cast<double>(std::unordered_set<BitMask>(genotypes.begin(), genotypes.end()).size());
  m.min_error = train.front().f1;
  double ratio_sum = 0.0;
  for (const auto& p : train) {
    m.min_error = std::min(m.min_error, p.f1);
    ratio_sum += p.f2;
  }
  m.avg_feature_ratio = ratio_sum / static_cast<double>(train.size());
  return m;
}

RunMetrics metrics_of(const RunRecord& record) {
  std::vector<BitMask> genotypes;
  for (const auto& m : record.train_front) genotypes.push_back(m.genotype);
  return metrics_of(record.initial_hv(), objectives_of(record.train_front), genotypes,
                    record.test_objectives);
}

Stat mean_and_std(std::span<const double> values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (auto v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (auto v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

SummaryStats summarize(std::span<const RunMetrics> runs) {
  SummaryStats stats;
  stats.runs = runs.size();
  auto column = [&](double RunMetrics::*field) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.*field);
    return mean_and_std(v);
  };
  stats.initial_hv = column(&RunMetrics::initial_hv);
  stats.final_train_hv = column(&RunMetrics::final_train_hv);
  stats.final_test_hv = column(&RunMetrics::final_test_hv);
  stats.n_solutions = column(&RunMetrics::n_solutions);
  stats.min_error = column(&RunMetrics::min_error);
  stats.avg_feature_ratio = column(&RunMetrics::avg_feature_ratio);
  return stats;
}

void emit_run_files(const RunRecord& record, std::size_t r, const std::filesystem::path& dir) {
  if (record.train_front.empty()) {
    throw_invalid("run " + std::to_string(r) + " has an empty final front; refusing to write it");
  }
  std::string trace = "nfc,train_hv\n";
  for (const auto& p : record.trace) {
    trace += std::to_string(p.nfc) + ',' + format_double(p.train_hv) + '\n';
  }
  auto front_csv = [&](bool test) {
    std::string out = "f1,f2,genotype_hex\n";
    for (std::size_t i = 0; i < record.train_front.size(); ++i) {
      const auto& obj = test ? record.test_objectives[i] : record.train_front[i].objectives;
      out += format_double(obj.f1) + ',' + format_double(obj.f2) + ',' +
             record.train_front[i].genotype.to_hex() + '\n';
    }
    return out;
  };
  write_atomically(dir / trace_file(r), trace);
  write_atomically(dir / train_file(r), front_csv(false));
  write_atomically(dir / test_file(r), front_csv(true));
}

void emit_summary(const Dataset& ds, const ExperimentConfig& cfg,
                  std::span<const RunRecord> records, const std::filesystem::path& dir) {
  std::vector<RunMeta> meta;
  std::vector<RunMetrics> metrics;
  for (std::size_t r = 0; r < records.size(); ++r) {
    meta.push_back(meta_of(records[r], r));
    metrics.push_back(metrics_of(records[r]));
  }
  write_atomically(dir / "summary.json", summary_text(config_json(ds, cfg), meta, metrics));
}

ExperimentResult run_experiment(const Dataset& ds, const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir, const LogFn& log) {
  if (cfg.runs == 0) throw_invalid("runs must be at least 1");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" + out_dir.string() + "'");
  }

  ExperimentResult result;
  std::vector<RunMetrics> metrics;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    auto record = run_single(ds, cfg, r);
    emit_run_files(record, r, out_dir);
    metrics.push_back(metrics_of(record));
    if (log) {
      std::ostringstream msg;
      msg << to_string(cfg.algorithm) << " run " << r << " seed " << record.seed << ": nfc "
          << record.final_nfc() << ", " << to_string(record.termination) << ", train HV "
          << metrics.back().final_train_hv << ", test HV " << metrics.back().final_test_hv
          << ", front " << record.train_front.size() << ", " << record.wall_seconds << " s";
      log(msg.str());
    }
    result.records.push_back(std::move(record));
  }
  result.stats = summarize(metrics);
  emit_summary(ds, cfg, result.records, out_dir);
  return result;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string recompute_summary(const std::filesystem::path& dir) {
  const Json existing = Json::parse(read_text(dir / "summary.json"));
  const Json& config = existing.at("config");
  const auto d = config.at("dataset").at("n_features").get<std::size_t>();

  std::vector<RunMeta> meta;
  std::vector<RunMetrics> metrics;
  for (const auto& run : existing.at("runs")) {
    RunMeta m;
    m.run = run.at("run").get<std::size_t>();
    m.seed = run.at("seed").get<std::uint64_t>();
    m.termination = run.at("termination").get<std::string>();

    const auto trace = data_lines(read_text(dir / trace_file(m.run)));
    if (trace.empty()) throw Error(ErrorKind::Data, trace_file(m.run) + " has no rows");
    const auto first = split(trace.front(), ',');
    const auto last = split(trace.back(), ',');
    m.final_nfc = parse_field<std::uint64_t>(last.at(0), "nfc");
    m.iterations = trace.size() - 1;
    const double initial_hv = parse_field<double>(first.at(1), "train_hv");

    auto read_front = [&](const std::string& name, std::vector<ObjectivePair>& objs,
                          std::vector<BitMask>& genotypes) {
      for (const auto& line : data_lines(read_text(dir / name))) {
        const auto f = split(line, ',');
        if (f.size() != 3) throw Error(ErrorKind::Data, name + ": malformed row '" + line + "'");
        objs.push_back({parse_field<double>(f[0], "f1"), parse_field<double>(f[1], "f2")});
        genotypes.push_back(BitMask::from_hex(f[2], d));
      }
    };
    std::vector<ObjectivePair> train, test;
    std::vector<BitMask> genotypes, test_genotypes;
    read_front(train_file(m.run), train, genotypes);
    read_front(test_file(m.run), test, test_genotypes);
    metrics.push_back(metrics_of(initial_hv, train, genotypes, test));
    meta.push_back(std::move(m));
  }
  return summary_text(config, meta, metrics);
}

}  // namespace mocsfs
