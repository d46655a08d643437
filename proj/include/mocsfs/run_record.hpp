#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "mocsfs/knn_eval.hpp"
#include "mocsfs/moo_core.hpp"

namespace mocsfs {

struct TracePoint {
  std::uint64_t nfc = 0;
  double train_hv = 0.0;
  std::size_t front_size = 0;  // population size after survival at this point
};

using TraceSink = std::function<void(const TracePoint&)>;

enum class Termination { Budget, Converged };

std::string_view to_string(Termination t);

/// Outcome of one optimizer run.
struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<TracePoint> trace;
  std::vector<Individual> train_front;
  std::vector<ObjectivePair> test_objectives;  // parallel to train_front
  double wall_seconds = 0.0;
  Termination termination = Termination::Budget;
  std::uint64_t iterations = 0;  // variable-iterations (MOCS) or generations (NSGA-II)

  std::uint64_t final_nfc() const { return trace.empty() ? 0 : trace.back().nfc; }
  double initial_hv() const { return trace.empty() ? 0.0 : trace.front().train_hv; }
};

std::vector<ObjectivePair> objectives_of(const std::vector<Individual>& members);

/// Fills `record.test_objectives` by evaluating every front member on the
/// test split.
void score_on_test(const Problem& problem, RunRecord& record, std::size_t threads);

}  // namespace mocsfs
