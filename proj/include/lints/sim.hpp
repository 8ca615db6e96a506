#ifndef LINTS_SIM_HPP_
#define LINTS_SIM_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lints/model.hpp"
#include "lints/scheduler.hpp"

namespace lints {

struct Violation {
  enum class Kind { kByteDeficit, kDeadlineExceeded, kBandwidthExceeded, kBoundViolation };
  Kind kind;
  std::string request_id;  // empty for per-slot violations
  int slot = -1;
  std::string detail;
};

struct VerifyResult {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Post-hoc constraint check of any plan: byte sufficiency (1e-9 relative),
/// deadlines, per-slot aggregate throughput <= L + 1e-9, variable bounds.
VerifyResult verify(const SchedulePlan &plan, const std::vector<TransferRequest> &requests,
                    const SlotGrid &grid, double limit_gbps);

struct RequestEmissions {
  std::string id;
  double energy_kwh = 0.0;
  double emissions_g = 0.0;
  int slots_used = 0;
  bool deadline_met = true;
};

struct EmissionsReport {
  std::string algorithm;
  double limit_gbps = 0.0;
  double noise_epsilon = 0.0;
  std::uint64_t seed = 0;
  bool feasible = true;
  std::vector<RequestEmissions> requests;
  double total_energy_kwh = 0.0;
  double total_emissions_g = 0.0;
};

inline double watts_to_kwh(double watts, double seconds) {
  return watts * seconds / 3.6e6;
}

/// Slot-by-slot emissions accounting: every slot with threads > 0 draws the
/// power of its thread count for the full slot and is billed at the
/// (possibly noisy) path intensity of that slot; idle slots cost nothing.
EmissionsReport evaluate(const SchedulePlan &plan,
                         const std::vector<Eigen::VectorXd> &path_traces,
                         const PowerModel &power, const SlotGrid &grid);

struct ComparisonRow {
  std::string algorithm;
  double total_emissions_g = 0.0;
  double delta_vs_worst_pct = 0.0;  // NaN when no worst-case row present
  double delta_vs_fcfs_pct = 0.0;   // NaN when no fcfs row present
};

/// One row per report with percent deltas against the worst-case and fcfs
/// rows. All reports must be feasible (verified); throws otherwise.
std::vector<ComparisonRow> compare(const std::vector<EmissionsReport> &reports);

}  // namespace lints

#endif  // LINTS_SIM_HPP_
