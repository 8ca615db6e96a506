#include "lints/sim.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lints/errors.hpp"

namespace lints {

namespace {

std::string violation_text(double got, double want, const char *relation) {
  std::ostringstream out;
  out << got << ' ' << relation << ' ' << want;
  return out.str();
}

}  // namespace

VerifyResult verify(const SchedulePlan &plan, const std::vector<TransferRequest> &requests,
                    const SlotGrid &grid, double limit_gbps) {
  if (plan.requests.size() != requests.size())
    throw InputError("plan and request list differ in size");
  VerifyResult result;
  Eigen::VectorXd per_slot = Eigen::VectorXd::Zero(grid.horizon_slots);

  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto &rp = plan.requests[i];
    const auto &r = requests[i];
    if (rp.id != r.id) throw InputError("plan/request id mismatch: " + rp.id + " vs " + r.id);

    double delivered_gbit = 0.0;
    for (Eigen::Index j = 0; j < rp.throughput_gbps.size(); ++j) {
      const double rho = rp.throughput_gbps[j];
      if (rho < -1e-9 || rho > limit_gbps + 1e-9)
        result.violations.push_back({Violation::Kind::kBoundViolation, r.id, static_cast<int>(j),
                                     violation_text(rho, limit_gbps, "outside [0,")});
      if (rho > 0.0 && j >= r.deadline_slots)
        result.violations.push_back({Violation::Kind::kDeadlineExceeded, r.id,
                                     static_cast<int>(j),
                                     "allocation at slot >= deadline " +
                                         std::to_string(r.deadline_slots)});
      if (j < grid.horizon_slots) per_slot[j] += rho;
      delivered_gbit += grid.slot_seconds * rho;
    }
    const double need_gbit = size_gbit(r);
    if (delivered_gbit < need_gbit * (1.0 - 1e-9))
      result.violations.push_back({Violation::Kind::kByteDeficit, r.id, -1,
                                   violation_text(delivered_gbit, need_gbit, "Gbit <")});
  }

  for (int j = 0; j < grid.horizon_slots; ++j) {
    if (per_slot[j] > limit_gbps + 1e-9)
      result.violations.push_back({Violation::Kind::kBandwidthExceeded, "", j,
                                   violation_text(per_slot[j], limit_gbps, "Gbps >")});
  }
  result.ok = result.violations.empty();
  return result;
}

EmissionsReport evaluate(const SchedulePlan &plan, const std::vector<Eigen::VectorXd> &path_traces,
                         const PowerModel &power, const SlotGrid &grid) {
  if (path_traces.size() != plan.requests.size())
    throw InputError("one path trace required per request");
  EmissionsReport report;
  report.algorithm = plan.algorithm;
  report.limit_gbps = plan.limit_gbps;
  report.requests.reserve(plan.requests.size());

  for (std::size_t i = 0; i < plan.requests.size(); ++i) {
    const auto &rp = plan.requests[i];
    if (path_traces[i].size() < rp.threads.size())
      throw InputError("request " + rp.id + ": trace shorter than its plan");
    RequestEmissions re;
    re.id = rp.id;
    for (Eigen::Index j = 0; j < rp.threads.size(); ++j) {
      const double theta = rp.threads[j];
      if (theta <= 0.0) continue;  // idle slots consume nothing
      const double energy = watts_to_kwh(power_of_threads(power, theta), grid.slot_seconds);
      re.energy_kwh += energy;
      re.emissions_g += energy * path_traces[i][j];
      ++re.slots_used;
    }
    re.deadline_met = rp.throughput_gbps.size() <= rp.deadline_slots;
    report.total_energy_kwh += re.energy_kwh;
    report.total_emissions_g += re.emissions_g;
    report.requests.push_back(std::move(re));
  }
  return report;
}

std::vector<ComparisonRow> compare(const std::vector<EmissionsReport> &reports) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double worst = nan, fcfs_total = nan;
  for (const auto &r : reports) {
    if (!r.feasible) throw InputError("compare: unverified plan for algorithm " + r.algorithm);
    if (r.algorithm == "worst") worst = r.total_emissions_g;
    if (r.algorithm == "fcfs") fcfs_total = r.total_emissions_g;
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(reports.size());
  for (const auto &r : reports) {
    ComparisonRow row;
    row.algorithm = r.algorithm;
    row.total_emissions_g = r.total_emissions_g;
    row.delta_vs_worst_pct =
        worst > 0.0 ? 100.0 * (r.total_emissions_g - worst) / worst : nan;
    row.delta_vs_fcfs_pct =
        fcfs_total > 0.0 ? 100.0 * (r.total_emissions_g - fcfs_total) / fcfs_total : nan;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lints
