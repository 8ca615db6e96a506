#include "lints/service.hpp"

#include <httplib.h>

#include <cmath>
#include <set>
#include <sstream>

#include "lints/errors.hpp"
#include "lints/heuristics.hpp"

namespace lints {

using nlohmann::json;

std::vector<std::string> zones_of(const std::vector<TransferRequest> &requests) {
  std::set<std::string> zones;
  for (const auto &r : requests)
    for (const auto &node : r.path) zones.insert(node.zone);
  return {zones.begin(), zones.end()};
}

PlanDocument schedule_from_parts(const std::vector<TransferRequest> &requests,
                                 const std::map<std::string, CarbonTrace> &traces,
                                 double limit_gbps, int slot_minutes,
                                 const std::string &algorithm, std::uint64_t seed,
                                 std::vector<std::string> *rounding_warnings) {
  if (!is_known_algorithm(algorithm)) throw InputError("unknown algorithm: " + algorithm);
  if (slot_minutes < 1 || 3600 % (slot_minutes * 60) != 0)
    throw InputError("slot length must divide one hour");
  if (!(limit_gbps > 0.0)) throw InputError("bandwidth limit must be > 0");
  if (traces.empty()) throw InputError("no traces provided");

  SlotGrid grid;
  grid.slot_seconds = slot_minutes * 60.0;
  const auto hours = static_cast<int>(traces.begin()->second.values.size());
  grid.horizon_slots = hours * (3600 / (slot_minutes * 60));

  validate_requests(requests, grid);
  std::vector<Eigen::VectorXd> path_traces;
  path_traces.reserve(requests.size());
  for (const auto &r : requests)
    path_traces.push_back(expand_to_slots(combine_path(traces, r.path), grid,
                                          traces.begin()->second.step_seconds));

  const ThroughputModel model(limit_gbps, 1.0 / 24.0);
  const PowerModel power;
  HeuristicConfig config;
  config.seed = seed;
  const SchedulePlan plan =
      run_algorithm(algorithm, requests, path_traces, grid, model, power, config);
  return make_plan_document(plan, model, rounding_warnings);
}

json schedule_endpoint(const json &body) {
  if (!body.is_object()) throw InputError("request body must be a JSON object");
  if (!body.contains("requests")) throw InputError("missing field: requests");
  const std::vector<TransferRequest> requests = requests_from_json(body.at("requests"));
  if (requests.empty()) throw InputError("empty request set");

  std::map<std::string, CarbonTrace> traces;
  const std::vector<std::string> zones = zones_of(requests);
  if (body.contains("traces_csv")) {
    std::istringstream in(body.at("traces_csv").get<std::string>());
    traces = load_traces(in, zones);
  } else if (body.contains("trace_file")) {
    traces = load_traces(body.at("trace_file").get<std::string>(), zones);
  } else {
    throw InputError("missing field: traces_csv or trace_file");
  }

  double limit = 0.0;
  int slot_minutes = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  try {
    limit = body.at("limit_gbps").get<double>();
    slot_minutes = body.at("slot_minutes").get<int>();
    algorithm = body.at("algorithm").get<std::string>();
    seed = body.value("seed", std::uint64_t{0});
  } catch (const json::exception &e) {
    throw InputError(std::string("bad request body: ") + e.what());
  }

  return plan_to_json(schedule_from_parts(requests, traces, limit, slot_minutes, algorithm, seed));
}

void register_routes(httplib::Server &server) {
  server.Get("/v1/health", [](const httplib::Request &, httplib::Response &res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });

  server.Post("/v1/schedule", [](const httplib::Request &req, httplib::Response &res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      res.status = 400;
      res.set_content(R"({"error":"malformed JSON body"})", "application/json");
      return;
    }
    try {
      res.set_content(schedule_endpoint(body).dump(), "application/json");
    } catch (const UnschedulableError &e) {
      res.status = 422;
      res.set_content(json{{"error", e.what()}, {"requests", e.request_ids}}.dump(),
                      "application/json");
    } catch (const std::exception &e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

}  // namespace lints
