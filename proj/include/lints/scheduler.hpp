#ifndef LINTS_SCHEDULER_HPP_
#define LINTS_SCHEDULER_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lints/lp.hpp"
#include "lints/model.hpp"
#include "lints/trace.hpp"

namespace lints {

struct TransferRequest {
  std::string id;
  std::int64_t size_bytes = 0;
  int deadline_slots = 0;  // allocation allowed in slots [0, deadline_slots)
  PathSpec path;
};

void validate_requests(const std::vector<TransferRequest> &requests, const SlotGrid &grid);

/// Request size in decimal gigabits, the unit of slot_seconds * rho.
inline double size_gbit(const TransferRequest &r) {
  return 8.0 * static_cast<double>(r.size_bytes) / 1e9;
}

/// Per-request slot allocation: throughput and thread count per slot up to
/// the request's deadline (vectors have deadline_slots entries).
struct RequestPlan {
  std::string id;
  int deadline_slots = 0;
  PathSpec path;
  Eigen::VectorXd throughput_gbps;
  Eigen::VectorXd threads;
};

struct SchedulePlan {
  std::string algorithm;
  double limit_gbps = 0.0;
  SlotGrid grid;
  std::vector<RequestPlan> requests;
};

/// Builds the throughput-allocation LP: variables are rho_{i,j} for request
/// i and slot j < deadline_i (flattened request-major); one byte-sufficiency
/// row per request (-slot_seconds * sum_j rho_{i,j} <= -gbit_i), one shared
/// bandwidth row per slot (sum_i rho_{i,j} <= L), and box bounds [0, L].
/// Cost is each request's own path intensity per slot.
LpProblem build_problem(const std::vector<TransferRequest> &requests,
                        const std::vector<Eigen::VectorXd> &path_traces,
                        const SlotGrid &grid, double limit_gbps);

/// Solves the LP and converts the throughput plan to threads. Throws
/// UnschedulableError (with the binding request set) when no feasible plan
/// exists at this limit.
SchedulePlan schedule(const std::vector<TransferRequest> &requests,
                      const std::vector<Eigen::VectorXd> &path_traces,
                      const SlotGrid &grid, const ThroughputModel &model);

/// Linear objective value of an arbitrary plan under the same per-request
/// slot intensities the LP optimizes (sum of c_{i,j} * rho_{i,j}).
double linear_cost(const SchedulePlan &plan, const std::vector<Eigen::VectorXd> &path_traces);

/// Requests whose deadline windows are collectively over capacity: smallest
/// slot prefix [0, t) where the demand of requests due by t exceeds L * dt * t.
/// Empty when every prefix fits.
std::vector<std::string> binding_request_set(const std::vector<TransferRequest> &requests,
                                             const SlotGrid &grid, double limit_gbps);

/// Clamp applied before inverting the throughput curve; keeps the inversion
/// away from its pole at rho = L.
inline double saturation_guard(double rho, double limit_gbps) {
  const double cap = limit_gbps * (1.0 - 1e-6);
  return rho < cap ? rho : cap;
}

}  // namespace lints

#endif  // LINTS_SCHEDULER_HPP_
