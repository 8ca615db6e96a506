#include "lints/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "lints/errors.hpp"

namespace lints {

void validate_requests(const std::vector<TransferRequest> &requests, const SlotGrid &grid) {
  if (requests.empty()) throw InputError("empty request set");
  for (const auto &r : requests) {
    if (r.id.empty()) throw InputError("request with empty id");
    if (r.size_bytes <= 0) throw InputError("request " + r.id + ": size must be > 0 bytes");
    if (r.deadline_slots < 1 || r.deadline_slots > grid.horizon_slots)
      throw InputError("request " + r.id + ": deadline must be within [1, horizon]");
  }
}

LpProblem build_problem(const std::vector<TransferRequest> &requests,
                        const std::vector<Eigen::VectorXd> &path_traces, const SlotGrid &grid,
                        double limit_gbps) {
  validate_requests(requests, grid);
  if (path_traces.size() != requests.size())
    throw InputError("one path trace required per request");
  if (!(limit_gbps > 0.0)) throw InputError("bandwidth limit must be > 0");

  const auto n = static_cast<Eigen::Index>(requests.size());
  std::vector<Eigen::Index> offset(requests.size() + 1, 0);
  int max_deadline = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &r = requests[i];
    if (path_traces[i].size() < r.deadline_slots)
      throw InputError("request " + r.id + ": path trace does not cover its deadline");
    offset[i + 1] = offset[i] + r.deadline_slots;
    max_deadline = std::max(max_deadline, r.deadline_slots);
  }
  const Eigen::Index nvars = offset[requests.size()];

  LpProblem p;
  p.cost.resize(nvars);
  for (Eigen::Index i = 0; i < n; ++i)
    p.cost.segment(offset[i], requests[i].deadline_slots) =
        path_traces[i].head(requests[i].deadline_slots);

  // One byte-sufficiency row per request, then one bandwidth row per slot.
  const Eigen::Index nrows = n + max_deadline;
  p.b_ub.resize(nrows);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(nvars) * 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < requests[i].deadline_slots; ++j)
      trips.emplace_back(i, offset[i] + j, -grid.slot_seconds);
    p.b_ub[i] = -size_gbit(requests[i]);
  }
  for (int s = 0; s < max_deadline; ++s) {
    for (Eigen::Index i = 0; i < n; ++i)
      if (s < requests[i].deadline_slots) trips.emplace_back(n + s, offset[i] + s, 1.0);
    p.b_ub[n + s] = limit_gbps;
  }
  p.a_ub.resize(nrows, nvars);
  p.a_ub.setFromTriplets(trips.begin(), trips.end());
  p.lower = Eigen::VectorXd::Zero(nvars);
  p.upper = Eigen::VectorXd::Constant(nvars, limit_gbps);
  return p;
}

std::vector<std::string> binding_request_set(const std::vector<TransferRequest> &requests,
                                             const SlotGrid &grid, double limit_gbps) {
  // The per-slot cap with nested windows [0, D_i) is over capacity exactly
  // when some prefix [0, t) cannot carry the demand of requests due by t.
  std::vector<int> order(requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return requests[a].deadline_slots < requests[b].deadline_slots;
  });
  double demand_gbit = 0.0;
  std::size_t taken = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    demand_gbit += size_gbit(requests[order[k]]);
    const int t = requests[order[k]].deadline_slots;
    if (k + 1 < order.size() && requests[order[k + 1]].deadline_slots == t) continue;
    if (demand_gbit > limit_gbps * grid.slot_seconds * t * (1.0 + 1e-12)) {
      taken = k + 1;
      break;
    }
  }
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < taken; ++k) ids.push_back(requests[order[k]].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

SchedulePlan schedule(const std::vector<TransferRequest> &requests,
                      const std::vector<Eigen::VectorXd> &path_traces, const SlotGrid &grid,
                      const ThroughputModel &model) {
  const double limit = model.limit_gbps;
  const LpProblem problem = build_problem(requests, path_traces, grid, limit);
  const LpSolution solution = solve(problem);
  if (solution.status == LpStatus::kInfeasible) {
    auto binding = binding_request_set(requests, grid, limit);
    if (binding.empty())
      for (const auto &r : requests) binding.push_back(r.id);
    std::ostringstream msg;
    msg << "requests unschedulable within deadlines at limit " << limit << " Gbps ("
        << binding.size() << " binding request(s))";
    throw UnschedulableError(msg.str(), std::move(binding));
  }
  if (solution.status != LpStatus::kOptimal)
    throw Error("lp solve failed: " + to_string(solution.status));

  SchedulePlan plan;
  plan.algorithm = "lints";
  plan.limit_gbps = limit;
  plan.grid = grid;
  plan.requests.reserve(requests.size());
  Eigen::Index at = 0;
  for (const auto &r : requests) {
    RequestPlan rp;
    rp.id = r.id;
    rp.deadline_slots = r.deadline_slots;
    rp.path = r.path;
    rp.throughput_gbps = solution.x.segment(at, r.deadline_slots);
    rp.threads.resize(r.deadline_slots);
    for (int j = 0; j < r.deadline_slots; ++j) {
      double rho = rp.throughput_gbps[j];
      if (rho < 1e-12) {
        rp.throughput_gbps[j] = 0.0;
        rp.threads[j] = 0.0;
      } else {
        rp.threads[j] = threads_of_throughput(model, saturation_guard(rho, limit));
      }
    }
    plan.requests.push_back(std::move(rp));
    at += r.deadline_slots;
  }
  return plan;
}

double linear_cost(const SchedulePlan &plan, const std::vector<Eigen::VectorXd> &path_traces) {
  if (path_traces.size() != plan.requests.size())
    throw InputError("one path trace required per request");
  double total = 0.0;
  for (std::size_t i = 0; i < plan.requests.size(); ++i) {
    const auto &rp = plan.requests[i];
    total += path_traces[i].head(rp.throughput_gbps.size()).dot(rp.throughput_gbps);
  }
  return total;
}

}  // namespace lints
