#ifndef LINTS_HARNESS_HPP_
#define LINTS_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lints/heuristics.hpp"
#include "lints/scheduler.hpp"
#include "lints/sim.hpp"
#include "lints/trace.hpp"

namespace lints {

struct RequestGenSpec {
  int count = 200;
  double size_bytes_min = 10e9;
  double size_bytes_max = 50e9;
  int deadline_slots_min = 192;
  int deadline_slots_max = 284;
  int path_nodes_min = 3;
  int path_nodes_max = 8;
  std::uint64_t seed = 1;
};

struct SyntheticTraceSpec {
  std::vector<std::string> zones;
  double mean = 450.0;
  double amplitude = 300.0;
  double period_hours = 24.0;
  int hours = 72;
  std::uint64_t seed = 1;
};

struct FileTraceSpec {
  std::string path;
  std::vector<std::string> zones;
};

struct Scenario {
  RequestGenSpec requests;
  std::optional<FileTraceSpec> trace_files;
  std::optional<SyntheticTraceSpec> synthetic;
  SlotGrid grid;
  std::vector<double> limits_gbps = {0.25, 0.5, 0.75};
  std::vector<double> noise_epsilons = {0.05, 0.15};
  std::vector<std::string> algorithms = {"worst", "edf", "fcfs", "dt", "st", "lints"};
  std::vector<std::uint64_t> seeds = {1};
  HeuristicConfig heuristics;
  double s_rho = 1.0 / 24.0;
  PowerModel power;

  const std::vector<std::string> &zones() const;
  void validate() const;
};

/// Seeded request generation: uniform sizes and deadlines, equal-weight
/// paths of 3-8 distinct zones, all arriving at t = 0.
std::vector<TransferRequest> gen_requests(const Scenario &scenario, std::uint64_t seed);

/// Loads or synthesizes the scenario's hourly zone traces.
std::map<std::string, CarbonTrace> scenario_traces(const Scenario &scenario);

/// Clean slot-resolution combined trace per request (aligned by index).
std::vector<Eigen::VectorXd> path_traces_for(const std::vector<TransferRequest> &requests,
                                             const std::map<std::string, CarbonTrace> &traces,
                                             const SlotGrid &grid);

/// Noisy evaluation traces: one draw per distinct path per (seed, epsilon),
/// shared by every request on that path.
std::vector<Eigen::VectorXd> noisy_path_traces(const std::vector<TransferRequest> &requests,
                                               const std::vector<Eigen::VectorXd> &clean,
                                               double epsilon, std::uint64_t seed);

struct RunRow {
  std::string algorithm;
  double limit_gbps = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  double total_emissions_g = 0.0;
  double total_energy_kwh = 0.0;
  double runtime_ms = 0.0;
  bool feasible = false;
};

struct AggregateRow {
  std::string algorithm;
  double limit_gbps = 0.0;
  double noise = 0.0;
  int runs = 0;
  double mean_emissions_g = 0.0;
  double median_emissions_g = 0.0;
  double q25_emissions_g = 0.0;
  double q75_emissions_g = 0.0;
  double mean_energy_kwh = 0.0;
};

struct BenchmarkResult {
  std::vector<RunRow> runs;
  std::vector<AggregateRow> cells;
  bool all_feasible = true;
  std::vector<std::string> failures;  // human-readable infeasibility notes
};

/// Full grid run: for every (seed, limit, epsilon, algorithm) cell, plan on
/// clean traces, verify, evaluate on noisy traces. Infeasible plans are
/// recorded (feasible=false, NaN emissions) and reported in `failures`.
BenchmarkResult run_benchmark(const Scenario &scenario);

/// Per-run rows: `algorithm,limit_gbps,noise,seed,total_emissions_g,
/// total_energy_kwh,runtime_ms,feasible`.
std::string runs_csv(const std::vector<RunRow> &rows);

std::string aggregate_csv(const std::vector<AggregateRow> &cells);

/// Recomputes aggregate cells from raw rows (used by tests and bench).
std::vector<AggregateRow> aggregate_runs(const std::vector<RunRow> &rows);

}  // namespace lints

#endif  // LINTS_HARNESS_HPP_
