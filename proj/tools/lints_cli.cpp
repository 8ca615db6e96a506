// Command-line front end: schedule / simulate / bench / serve.

#include "lints/errors.hpp"
#include "lints/harness.hpp"
#include "lints/heuristics.hpp"
#include "lints/plan_io.hpp"
#include "lints/service.hpp"
#include "lints/sim.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

using nlohmann::json;
using namespace lints;

namespace {

int fail_json(const std::string &error, const std::vector<std::string> &requests = {}) {
  json out{{"error", error}};
  if (!requests.empty()) out["requests"] = requests;
  std::cout << out.dump() << "\n";
  return 1;
}

int cmd_schedule(const std::string &requests_path, const std::string &traces_path, double limit,
                 int slot_minutes, const std::string &algorithm, const std::string &out_path,
                 std::uint64_t seed) {
  const auto requests = requests_from_json(json::parse(read_text_file(requests_path)));
  const auto traces = load_traces(traces_path, zones_of(requests));
  std::vector<std::string> warnings;
  const PlanDocument doc =
      schedule_from_parts(requests, traces, limit, slot_minutes, algorithm, seed, &warnings);
  for (const auto &w : warnings) std::cerr << "warning: " << w << "\n";
  write_text_file(out_path, plan_to_json(doc).dump(2) + "\n");
  std::cerr << "plan written to " << out_path << "\n";
  return 0;
}

int cmd_simulate(const std::string &plan_path, const std::string &traces_path, double noise,
                 std::uint64_t seed, const std::string &out_path, const std::string &requests_path,
                 const std::string &out_csv_path) {
  const PlanDocument doc = plan_from_json(json::parse(read_text_file(plan_path)));
  const SchedulePlan plan = to_schedule_plan(doc);

  // Reconstruct per-request path traces from the plan's own paths.
  std::vector<TransferRequest> skeleton;
  for (const auto &rp : plan.requests) {
    TransferRequest r;
    r.id = rp.id;
    r.size_bytes = 1;  // placeholder; byte checks need --requests
    r.deadline_slots = rp.deadline_slots;
    r.path = rp.path;
    if (r.path.empty()) throw InputError("plan request " + r.id + " carries no path");
    skeleton.push_back(std::move(r));
  }
  const auto traces = load_traces(traces_path, zones_of(skeleton));
  std::vector<Eigen::VectorXd> clean = path_traces_for(skeleton, traces, plan.grid);
  const std::vector<Eigen::VectorXd> noisy = noisy_path_traces(skeleton, clean, noise, seed);

  const auto t0 = std::chrono::steady_clock::now();
  EmissionsReport report = evaluate(plan, noisy, PowerModel{}, plan.grid);
  const auto t1 = std::chrono::steady_clock::now();
  report.noise_epsilon = noise;
  report.seed = seed;

  // Structural feasibility; byte sufficiency too when sizes are available.
  std::vector<TransferRequest> checked = skeleton;
  if (!requests_path.empty()) {
    const auto full = requests_from_json(json::parse(read_text_file(requests_path)));
    std::map<std::string, const TransferRequest *> by_id;
    for (const auto &r : full) by_id[r.id] = &r;
    for (auto &r : checked) {
      const auto it = by_id.find(r.id);
      if (it == by_id.end()) throw InputError("plan/request mismatch: no sizes for " + r.id);
      r.size_bytes = it->second->size_bytes;
    }
  }
  report.feasible = verify(plan, checked, plan.grid, plan.limit_gbps).ok;

  write_text_file(out_path, report_to_json(report).dump(2) + "\n");

  RunRow row;
  row.algorithm = report.algorithm;
  row.limit_gbps = report.limit_gbps;
  row.noise = noise;
  row.seed = seed;
  row.total_emissions_g = report.total_emissions_g;
  row.total_energy_kwh = report.total_energy_kwh;
  row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  row.feasible = report.feasible;
  const std::string csv_path =
      out_csv_path.empty() ? std::filesystem::path(out_path).replace_extension(".csv").string()
                           : out_csv_path;
  write_text_file(csv_path, runs_csv({row}));
  std::cerr << "report written to " << out_path << " and " << csv_path << "\n";
  return 0;
}

int cmd_bench(const std::string &scenario_path, const std::string &out_dir) {
  Scenario scenario;
  try {
    scenario = scenario_from_json(json::parse(read_text_file(scenario_path)));
  } catch (const std::exception &e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 2;
  }
  const BenchmarkResult result = run_benchmark(scenario);
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/runs.csv", runs_csv(result.runs));
  write_text_file(out_dir + "/aggregate.csv", aggregate_csv(result.cells));
  std::cerr << result.runs.size() << " runs, " << result.cells.size() << " cells -> " << out_dir
            << "\n";
  if (!result.all_feasible) {
    for (const auto &f : result.failures) std::cerr << "infeasible: " << f << "\n";
    return fail_json("benchmark had infeasible runs", {});
  }
  return 0;
}

int cmd_serve(std::string listen) {
  if (listen.empty()) {
    if (const char *env = std::getenv("LINTS_LISTEN")) listen = env;
    else listen = "127.0.0.1:8080";
  }
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw InputError("listen address must be host:port");
  const std::string host = listen.substr(0, colon);
  const int port = std::stoi(listen.substr(colon + 1));

  httplib::Server server;
  register_routes(server);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) throw Error("cannot bind " + listen);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"carbon-aware temporal transfer scheduling"};
  app.require_subcommand(1);

  std::string requests_path, traces_path, out_path, algorithm = "lints";
  std::string plan_path, requests_opt, out_csv_path, scenario_path, out_dir, listen;
  double limit = 0.5, noise = 0.0;
  int slot_minutes = 15;
  std::uint64_t seed = 0;

  auto *schedule = app.add_subcommand("schedule", "plan transfer requests against traces");
  schedule->add_option("--requests", requests_path, "requests JSON")->required();
  schedule->add_option("--traces", traces_path, "trace CSV")->required();
  schedule->add_option("--limit", limit, "bandwidth limit, Gbps")->required();
  schedule->add_option("--slot-minutes", slot_minutes, "slot length in minutes");
  schedule->add_option("--algorithm", algorithm, "lints|fcfs|edf|st|dt|worst");
  schedule->add_option("--out", out_path, "output plan JSON")->required();
  schedule->add_option("--seed", seed, "seed for randomized algorithms");

  auto *simulate = app.add_subcommand("simulate", "evaluate a plan's energy and emissions");
  simulate->add_option("--plan", plan_path, "plan JSON")->required();
  simulate->add_option("--traces", traces_path, "trace CSV")->required();
  simulate->add_option("--noise", noise, "trace noise fraction in [0,1)");
  simulate->add_option("--seed", seed, "noise seed");
  simulate->add_option("--out", out_path, "output report JSON")->required();
  simulate->add_option("--requests", requests_opt, "requests JSON enabling byte checks");
  simulate->add_option("--out-csv", out_csv_path, "output CSV row (default: out with .csv)");

  auto *bench = app.add_subcommand("bench", "run a benchmark scenario grid");
  bench->add_option("--scenario", scenario_path, "scenario JSON")->required();
  bench->add_option("--out", out_dir, "output directory")->required();

  auto *serve = app.add_subcommand("serve", "HTTP scheduling service");
  serve->add_option("--listen", listen, "host:port (default env LINTS_LISTEN or 127.0.0.1:8080)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (schedule->parsed()) {
      if (!is_known_algorithm(algorithm)) {
        std::cerr << "unknown algorithm: " << algorithm << "\n";
        return 2;
      }
      return cmd_schedule(requests_path, traces_path, limit, slot_minutes, algorithm, out_path,
                          seed);
    }
    if (simulate->parsed())
      return cmd_simulate(plan_path, traces_path, noise, seed, out_path, requests_opt,
                          out_csv_path);
    if (bench->parsed()) return cmd_bench(scenario_path, out_dir);
    if (serve->parsed()) return cmd_serve(listen);
  } catch (const UnschedulableError &e) {
    return fail_json(e.what(), e.request_ids);
  } catch (const json::exception &e) {
    return fail_json(std::string("bad JSON input: ") + e.what());
  } catch (const std::exception &e) {
    return fail_json(e.what());
  }
  return 2;
}
