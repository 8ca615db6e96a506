#ifndef LINTS_HEURISTICS_HPP_
#define LINTS_HEURISTICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lints/model.hpp"
#include "lints/scheduler.hpp"

namespace lints {

struct HeuristicConfig {
  double theta_cap = 32.0;    // max threads a heuristic assigns per request
  double alpha = 50.0;        // double-threshold gap, gCO2/kWh
  int random_plan_count = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Fixed per-slot throughput all heuristics allocate:
/// min(L * (1 - 1e-6), throughput at theta_cap threads).
double heuristic_throughput(const ThroughputModel &model, const HeuristicConfig &config);

/// First-come first-serve: requests in arrival (input) order, each taking
/// the earliest free-capacity slots before its deadline.
SchedulePlan fcfs(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
                  const ThroughputModel &model, const HeuristicConfig &config);

/// Earliest-deadline-first: like fcfs, priority order ascending deadline
/// (ties: arrival order, then id).
SchedulePlan edf(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
                 const ThroughputModel &model, const HeuristicConfig &config);

/// Single threshold: per request in EDF order, the lowest intensity
/// threshold admitting enough free slots before the deadline; found by
/// binary search over the sorted unique slot intensities.
SchedulePlan single_threshold(const std::vector<TransferRequest> &requests,
                              const std::vector<Eigen::VectorXd> &path_traces,
                              const SlotGrid &grid, const ThroughputModel &model,
                              const HeuristicConfig &config);

/// Double threshold: a running transfer keeps a slot while intensity stays
/// below tau_high; a paused one resumes only below tau_low = tau_high - alpha.
/// tau_high is the lowest feasible value by binary search.
SchedulePlan double_threshold(const std::vector<TransferRequest> &requests,
                              const std::vector<Eigen::VectorXd> &path_traces,
                              const SlotGrid &grid, const ThroughputModel &model,
                              const HeuristicConfig &config);

/// Worst-case baseline: the higher-emission candidate between an EDF-order
/// highest-intensity allocation and `random_plan_count` seeded random
/// feasible plans, judged on the clean planning traces.
SchedulePlan worst_case(const std::vector<TransferRequest> &requests,
                        const std::vector<Eigen::VectorXd> &path_traces,
                        const SlotGrid &grid, const ThroughputModel &model,
                        const PowerModel &power, const HeuristicConfig &config);

/// Algorithm registry used by the CLI/harness. Names: lints, fcfs, edf, st,
/// dt, worst.
bool is_known_algorithm(const std::string &name);

SchedulePlan run_algorithm(const std::string &name,
                           const std::vector<TransferRequest> &requests,
                           const std::vector<Eigen::VectorXd> &path_traces,
                           const SlotGrid &grid, const ThroughputModel &model,
                           const PowerModel &power, const HeuristicConfig &config);

}  // namespace lints

#endif  // LINTS_HEURISTICS_HPP_
