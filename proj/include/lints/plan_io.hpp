#ifndef LINTS_PLAN_IO_HPP_
#define LINTS_PLAN_IO_HPP_

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "lints/format.hpp"
#include "lints/harness.hpp"
#include "lints/scheduler.hpp"
#include "lints/sim.hpp"

namespace lints {

// ---- plan documents ---------------------------------------------------------

struct PlanSlot {
  int index = 0;
  double throughput_gbps = 0.0;
  double threads_real = 0.0;
  std::int64_t threads_int = 0;  // always ceil(threads_real)
};

struct PlanRequestRecord {
  std::string id;
  int deadline_slots = 0;
  PathSpec path;
  std::vector<PlanSlot> slots;  // only slots with throughput > 0
};

struct PlanDocument {
  int version = 1;
  std::string algorithm;
  SlotGrid grid;
  double limit_gbps = 0.0;
  std::vector<PlanRequestRecord> requests;
};

/// Exports a plan, rounding threads up to integers. The integer plan's
/// implied per-slot throughput (thread curve applied to threads_int) is
/// re-checked against the bandwidth cap; any overshoot is reported through
/// `rounding_warnings` (the throughput plan stays authoritative).
PlanDocument make_plan_document(const SchedulePlan &plan, const ThroughputModel &model,
                                std::vector<std::string> *rounding_warnings = nullptr);

SchedulePlan to_schedule_plan(const PlanDocument &doc);

nlohmann::json plan_to_json(const PlanDocument &doc);
PlanDocument plan_from_json(const nlohmann::json &j);

// ---- requests ---------------------------------------------------------------

std::vector<TransferRequest> requests_from_json(const nlohmann::json &j);
nlohmann::json requests_to_json(const std::vector<TransferRequest> &requests);

// ---- reports ----------------------------------------------------------------

nlohmann::json report_to_json(const EmissionsReport &report);

// ---- scenarios --------------------------------------------------------------

Scenario scenario_from_json(const nlohmann::json &j);
nlohmann::json scenario_to_json(const Scenario &scenario);

// ---- files ------------------------------------------------------------------

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

}  // namespace lints

#endif  // LINTS_PLAN_IO_HPP_
