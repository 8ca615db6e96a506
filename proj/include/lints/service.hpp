#ifndef LINTS_SERVICE_HPP_
#define LINTS_SERVICE_HPP_

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "lints/plan_io.hpp"
#include "lints/scheduler.hpp"
#include "lints/trace.hpp"

namespace httplib {
class Server;
}

namespace lints {

/// Unique zones referenced by the requests' paths, in sorted order.
std::vector<std::string> zones_of(const std::vector<TransferRequest> &requests);

/// End-to-end scheduling pipeline shared by the CLI and the HTTP service:
/// combine per-request path traces, derive the slot grid from the trace
/// length, run the algorithm, export the plan document.
PlanDocument schedule_from_parts(const std::vector<TransferRequest> &requests,
                                 const std::map<std::string, CarbonTrace> &traces,
                                 double limit_gbps, int slot_minutes,
                                 const std::string &algorithm, std::uint64_t seed,
                                 std::vector<std::string> *rounding_warnings = nullptr);

/// POST /v1/schedule body -> plan JSON. Throws InputError on malformed
/// bodies (HTTP 400) and UnschedulableError on infeasible instances (422).
nlohmann::json schedule_endpoint(const nlohmann::json &body);

/// Registers GET /v1/health and POST /v1/schedule.
void register_routes(httplib::Server &server);

}  // namespace lints

#endif  // LINTS_SERVICE_HPP_
