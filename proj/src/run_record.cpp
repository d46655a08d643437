#include "mocsfs/run_record.hpp"

#include "mocsfs/parallel.hpp"

namespace mocsfs {

std::string_view to_string(Termination t) {
  return t == Termination::Budget ? "budget" : "converged";
}

std::vector<ObjectivePair> objectives_of(const std::vector<Individual>& members) {
  std::vector<ObjectivePair> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.objectives);
  return out;
}

void score_on_test(const Problem& problem, RunRecord& record, std::size_t threads) {
  record.test_objectives.assign(record.train_front.size(), {});
  parallel_for(record.train_front.size(), threads, [&](std::size_t i) {
    record.test_objectives[i] = problem.evaluate_on_test(record.train_front[i].genotype);
  });
}

}  // namespace mocsfs
