#include "lints/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lints/errors.hpp"
#include "lints/format.hpp"
#include "lints/rng.hpp"

namespace lints {

namespace {

std::uint64_t fnv1a64(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double quantile(const std::vector<double> &sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

const std::vector<std::string> &Scenario::zones() const {
  if (trace_files) return trace_files->zones;
  if (synthetic) return synthetic->zones;
  throw InputError("scenario has neither trace files nor synthetic traces");
}

void Scenario::validate() const {
  if (requests.count < 0) throw InputError("request count must be >= 0");
  if (!(requests.size_bytes_min > 0.0) || requests.size_bytes_max < requests.size_bytes_min)
    throw InputError("invalid request size range");
  if (requests.deadline_slots_min < 1 || requests.deadline_slots_max < requests.deadline_slots_min ||
      requests.deadline_slots_max > grid.horizon_slots)
    throw InputError("invalid deadline range for the grid horizon");
  if (requests.path_nodes_min < 2 || requests.path_nodes_max < requests.path_nodes_min)
    throw InputError("invalid path node range");
  if (!trace_files && !synthetic)
    throw InputError("scenario has neither trace files nor synthetic traces");
  if (static_cast<int>(zones().size()) < requests.path_nodes_min)
    throw InputError("fewer zones than the minimum path length");
  if (limits_gbps.empty()) throw InputError("no bandwidth limits configured");
  for (double l : limits_gbps)
    if (!(l > 0.0)) throw InputError("bandwidth limits must be > 0");
  for (double e : noise_epsilons)
    if (!(e >= 0.0 && e < 1.0)) throw InputError("noise epsilons must be in [0, 1)");
  if (algorithms.empty()) throw InputError("no algorithms configured");
  for (const auto &a : algorithms)
    if (!is_known_algorithm(a)) throw InputError("unknown algorithm: " + a);
  if (seeds.empty()) throw InputError("no seeds configured");
  heuristics.validate();
}

std::vector<TransferRequest> gen_requests(const Scenario &scenario, std::uint64_t seed) {
  scenario.validate();
  const auto &spec = scenario.requests;
  const auto &zones = scenario.zones();
  Rng rng(mix_seed(spec.seed, seed));
  std::vector<TransferRequest> out;
  out.reserve(spec.count);
  const int max_nodes = std::min<int>(spec.path_nodes_max, static_cast<int>(zones.size()));
  for (int i = 0; i < spec.count; ++i) {
    TransferRequest r;
    char id[32];
    std::snprintf(id, sizeof(id), "req-%04d", i);
    r.id = id;
    r.size_bytes = rng.uniform_int(static_cast<std::int64_t>(std::llround(spec.size_bytes_min)),
                                   static_cast<std::int64_t>(std::llround(spec.size_bytes_max)));
    r.deadline_slots =
        static_cast<int>(rng.uniform_int(spec.deadline_slots_min, spec.deadline_slots_max));
    const auto k = static_cast<std::size_t>(rng.uniform_int(spec.path_nodes_min, max_nodes));
    for (std::size_t z : rng.sample_indices(zones.size(), k))
      r.path.push_back({zones[z], 1.0});
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, CarbonTrace> scenario_traces(const Scenario &scenario) {
  if (scenario.trace_files)
    return load_traces(scenario.trace_files->path, scenario.trace_files->zones);
  const auto &synth = *scenario.synthetic;
  std::map<std::string, CarbonTrace> out;
  const int max_shift = 6;
  for (std::size_t k = 0; k < synth.zones.size(); ++k) {
    // Zones get scaled levels and a few hours of phase jitter; cycles stay
    // roughly aligned so path sums keep their diurnal swing. The shift is
    // taken by oversampling and slicing.
    Rng zrng(mix_seed(synth.seed, k, 0x5a));
    const double level = 0.8 + 0.4 * zrng.uniform01();
    const auto shift = static_cast<int>(zrng.uniform_int(0, max_shift));
    CarbonTrace trace =
        synth_trace(synth.zones[k], synth.mean * level, synth.amplitude * level,
                    synth.period_hours, synth.hours + max_shift, mix_seed(synth.seed, k, 0x17));
    trace.values = trace.values.segment(shift, synth.hours).eval();
    trace.start_epoch_s = 0;
    out.emplace(synth.zones[k], std::move(trace));
  }
  return out;
}

std::vector<Eigen::VectorXd> path_traces_for(const std::vector<TransferRequest> &requests,
                                             const std::map<std::string, CarbonTrace> &traces,
                                             const SlotGrid &grid) {
  std::unordered_map<std::string, Eigen::VectorXd> cache;
  std::vector<Eigen::VectorXd> out;
  out.reserve(requests.size());
  for (const auto &r : requests) {
    const std::string key = path_key(r.path);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const Eigen::VectorXd hourly = combine_path(traces, r.path);
      const std::int64_t step = traces.begin()->second.step_seconds;
      it = cache.emplace(key, expand_to_slots(hourly, grid, step)).first;
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<Eigen::VectorXd> noisy_path_traces(const std::vector<TransferRequest> &requests,
                                               const std::vector<Eigen::VectorXd> &clean,
                                               double epsilon, std::uint64_t seed) {
  if (clean.size() != requests.size()) throw InputError("one clean trace required per request");
  std::unordered_map<std::string, Eigen::VectorXd> cache;
  std::vector<Eigen::VectorXd> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const std::string key = path_key(requests[i].path);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const std::uint64_t noise_seed =
          mix_seed(seed, fnv1a64(key),
                   static_cast<std::uint64_t>(std::llround(epsilon * 1e9)));
      it = cache.emplace(key, add_noise(clean[i], epsilon, noise_seed)).first;
    }
    out.push_back(it->second);
  }
  return out;
}

BenchmarkResult run_benchmark(const Scenario &scenario) {
  scenario.validate();
  const auto traces = scenario_traces(scenario);
  BenchmarkResult result;

  for (const std::uint64_t seed : scenario.seeds) {
    const auto requests = gen_requests(scenario, seed);
    const auto clean = path_traces_for(requests, traces, scenario.grid);
    std::vector<std::vector<Eigen::VectorXd>> noisy;
    noisy.reserve(scenario.noise_epsilons.size());
    for (double eps : scenario.noise_epsilons)
      noisy.push_back(noisy_path_traces(requests, clean, eps, seed));

    for (const double limit : scenario.limits_gbps) {
      const ThroughputModel model(limit, scenario.s_rho);
      HeuristicConfig config = scenario.heuristics;
      config.seed = mix_seed(config.seed, seed);

      for (const auto &alg : scenario.algorithms) {
        const auto t0 = std::chrono::steady_clock::now();
        SchedulePlan plan;
        std::string failure;
        try {
          plan = run_algorithm(alg, requests, clean, scenario.grid, model, scenario.power, config);
        } catch (const UnschedulableError &e) {
          failure = e.what();
        }
        if (failure.empty()) {
          const VerifyResult vr = verify(plan, requests, scenario.grid, limit);
          if (!vr.ok)
            failure = "plan failed verification (" + std::to_string(vr.violations.size()) +
                      " violation(s))";
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        for (std::size_t e = 0; e < scenario.noise_epsilons.size(); ++e) {
          RunRow row;
          row.algorithm = alg;
          row.limit_gbps = limit;
          row.noise = scenario.noise_epsilons[e];
          row.seed = seed;
          row.runtime_ms = runtime_ms;
          if (failure.empty()) {
            const EmissionsReport report = evaluate(plan, noisy[e], scenario.power, scenario.grid);
            row.total_emissions_g = report.total_emissions_g;
            row.total_energy_kwh = report.total_energy_kwh;
            row.feasible = true;
          } else {
            row.total_emissions_g = std::numeric_limits<double>::quiet_NaN();
            row.total_energy_kwh = std::numeric_limits<double>::quiet_NaN();
            row.feasible = false;
          }
          result.runs.push_back(std::move(row));
        }
        if (!failure.empty()) {
          result.all_feasible = false;
          std::ostringstream note;
          note << alg << " @ limit " << format_double(limit) << " seed " << seed << ": " << failure;
          result.failures.push_back(note.str());
        }
      }
    }
  }
  result.cells = aggregate_runs(result.runs);
  return result;
}

std::vector<AggregateRow> aggregate_runs(const std::vector<RunRow> &rows) {
  std::vector<AggregateRow> cells;
  std::vector<std::vector<double>> emissions;
  std::vector<std::vector<double>> energy;
  auto find_cell = [&](const RunRow &row) -> std::size_t {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].algorithm == row.algorithm && cells[i].limit_gbps == row.limit_gbps &&
          cells[i].noise == row.noise)
        return i;
    cells.push_back({row.algorithm, row.limit_gbps, row.noise, 0, 0, 0, 0, 0, 0});
    emissions.emplace_back();
    energy.emplace_back();
    return cells.size() - 1;
  };
  for (const auto &row : rows) {
    const std::size_t i = find_cell(row);
    ++cells[i].runs;
    if (row.feasible) {
      emissions[i].push_back(row.total_emissions_g);
      energy[i].push_back(row.total_energy_kwh);
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto &e = emissions[i];
    std::sort(e.begin(), e.end());
    cells[i].mean_emissions_g =
        e.empty() ? std::numeric_limits<double>::quiet_NaN()
                  : std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
    cells[i].median_emissions_g = quantile(e, 0.5);
    cells[i].q25_emissions_g = quantile(e, 0.25);
    cells[i].q75_emissions_g = quantile(e, 0.75);
    const auto &w = energy[i];
    cells[i].mean_energy_kwh =
        w.empty() ? std::numeric_limits<double>::quiet_NaN()
                  : std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  }
  return cells;
}

std::string runs_csv(const std::vector<RunRow> &rows) {
  std::string out =
      "algorithm,limit_gbps,noise,seed,total_emissions_g,total_energy_kwh,runtime_ms,feasible\n";
  for (const auto &r : rows) {
    out += r.algorithm + ',' + format_double(r.limit_gbps) + ',' + format_double(r.noise) + ',' +
           std::to_string(r.seed) + ',' + format_double(r.total_emissions_g) + ',' +
           format_double(r.total_energy_kwh) + ',' + format_double(r.runtime_ms) + ',' +
           (r.feasible ? "true" : "false") + '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<AggregateRow> &cells) {
  std::string out =
      "algorithm,limit_gbps,noise,runs,mean_emissions_g,median_emissions_g,q25_emissions_g,"
      "q75_emissions_g,mean_energy_kwh\n";
  for (const auto &c : cells) {
    out += c.algorithm + ',' + format_double(c.limit_gbps) + ',' + format_double(c.noise) + ',' +
           std::to_string(c.runs) + ',' + format_double(c.mean_emissions_g) + ',' +
           format_double(c.median_emissions_g) + ',' + format_double(c.q25_emissions_g) + ',' +
           format_double(c.q75_emissions_g) + ',' + format_double(c.mean_energy_kwh) + '\n';
  }
  return out;
}

}  // namespace lints
