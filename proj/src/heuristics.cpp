#include "lints/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lints/errors.hpp"
#include "lints/rng.hpp"
#include "lints/sim.hpp"

namespace lints {

void HeuristicConfig::validate() const {
  if (!(theta_cap >= 1.0)) throw InputError("theta_cap must be >= 1");
  if (!(alpha >= 0.0)) throw InputError("alpha must be >= 0");
  if (random_plan_count < 1) throw InputError("random_plan_count must be >= 1");
}

double heuristic_throughput(const ThroughputModel &model, const HeuristicConfig &config) {
  config.validate();
  return std::min(model.limit_gbps * (1.0 - 1e-6), throughput_of_threads(model, config.theta_cap));
}

namespace {

// Minimum slot count delivering the request's bits at throughput rho.
int slots_needed(const TransferRequest &r, double rho, const SlotGrid &grid) {
  const double gbit = size_gbit(r);
  const double per_slot = rho * grid.slot_seconds;
  int s = static_cast<int>(std::ceil(gbit / per_slot - 1e-9));
  while (static_cast<double>(s) * per_slot < gbit * (1.0 - 1e-9)) ++s;
  return std::max(s, 0);
}

std::vector<int> edf_order(const std::vector<TransferRequest> &requests) {
  std::vector<int> order(requests.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (requests[a].deadline_slots != requests[b].deadline_slots)
      return requests[a].deadline_slots < requests[b].deadline_slots;
    if (a != b) return a < b;  // arrival order
    return requests[a].id < requests[b].id;
  });
  return order;
}

struct Allocator {
  Allocator(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
            const ThroughputModel &model, const HeuristicConfig &config, std::string algorithm)
      : requests_(requests),
        grid_(grid),
        rho_(heuristic_throughput(model, config)),
        threads_(threads_of_throughput(model, heuristic_throughput(model, config))),
        remaining_(Eigen::VectorXd::Constant(grid.horizon_slots, model.limit_gbps)) {
    validate_requests(requests, grid);
    plan_.algorithm = std::move(algorithm);
    plan_.limit_gbps = model.limit_gbps;
    plan_.grid = grid;
    plan_.requests.resize(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
      auto &rp = plan_.requests[i];
      rp.id = requests[i].id;
      rp.deadline_slots = requests[i].deadline_slots;
      rp.path = requests[i].path;
      rp.throughput_gbps = Eigen::VectorXd::Zero(requests[i].deadline_slots);
      rp.threads = Eigen::VectorXd::Zero(requests[i].deadline_slots);
    }
  }

  bool is_free(int slot) const { return remaining_[slot] >= rho_ - 1e-9; }

  std::vector<int> free_slots_before(int deadline) const {
    std::vector<int> out;
    for (int j = 0; j < deadline; ++j)
      if (is_free(j)) out.push_back(j);
    return out;
  }

  void assign(int request_idx, const std::vector<int> &slots) {
    auto &rp = plan_.requests[request_idx];
    for (int j : slots) {
      rp.throughput_gbps[j] = rho_;
      rp.threads[j] = threads_;
      remaining_[j] -= rho_;
    }
  }

  [[noreturn]] void fail(int request_idx) const {
    const auto &r = requests_[request_idx];
    throw UnschedulableError("request " + r.id + " cannot fit " +
                                 std::to_string(slots_needed(r, rho_, grid_)) +
                                 " slot(s) before its deadline",
                             {r.id});
  }

  const std::vector<TransferRequest> &requests_;
  SlotGrid grid_;
  double rho_;
  double threads_;
  Eigen::VectorXd remaining_;
  SchedulePlan plan_;
};

SchedulePlan earliest_fit(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
                          const ThroughputModel &model, const HeuristicConfig &config,
                          const std::vector<int> &order, std::string algorithm) {
  Allocator alloc(requests, grid, model, config, std::move(algorithm));
  for (int i : order) {
    const int want = slots_needed(requests[i], alloc.rho_, grid);
    std::vector<int> chosen;
    for (int j = 0; j < requests[i].deadline_slots && static_cast<int>(chosen.size()) < want; ++j)
      if (alloc.is_free(j)) chosen.push_back(j);
    if (static_cast<int>(chosen.size()) < want) alloc.fail(i);
    alloc.assign(i, chosen);
  }
  return std::move(alloc.plan_);
}

}  // namespace

SchedulePlan fcfs(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
                  const ThroughputModel &model, const HeuristicConfig &config) {
  std::vector<int> arrival(requests.size());
  std::iota(arrival.begin(), arrival.end(), 0);
  return earliest_fit(requests, grid, model, config, arrival, "fcfs");
}

SchedulePlan edf(const std::vector<TransferRequest> &requests, const SlotGrid &grid,
                 const ThroughputModel &model, const HeuristicConfig &config) {
  return earliest_fit(requests, grid, model, config, edf_order(requests), "edf");
}

SchedulePlan single_threshold(const std::vector<TransferRequest> &requests,
                              const std::vector<Eigen::VectorXd> &path_traces,
                              const SlotGrid &grid, const ThroughputModel &model,
                              const HeuristicConfig &config) {
  if (path_traces.size() != requests.size())
    throw InputError("one path trace required per request");
  Allocator alloc(requests, grid, model, config, "st");
  for (int i : edf_order(requests)) {
    const auto &r = requests[i];
    const int want = slots_needed(r, alloc.rho_, grid);
    if (want == 0) continue;
    const std::vector<int> free = alloc.free_slots_before(r.deadline_slots);
    if (static_cast<int>(free.size()) < want) alloc.fail(i);

    std::vector<double> levels;
    levels.reserve(free.size());
    for (int j : free) levels.push_back(path_traces[i][j]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Lowest threshold admitting enough free slots.
    const auto admits = [&](double tau) {
      int count = 0;
      for (int j : free)
        if (path_traces[i][j] <= tau) ++count;
      return count >= want;
    };
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (admits(levels[mid]))
        hi = mid;
      else
        lo = mid + 1;
    }
    const double tau = levels[lo];

    std::vector<int> chosen;
    for (int j : free) {
      if (path_traces[i][j] <= tau) chosen.push_back(j);
      if (static_cast<int>(chosen.size()) == want) break;
    }
    alloc.assign(i, chosen);
  }
  return std::move(alloc.plan_);
}

SchedulePlan double_threshold(const std::vector<TransferRequest> &requests,
                              const std::vector<Eigen::VectorXd> &path_traces,
                              const SlotGrid &grid, const ThroughputModel &model,
                              const HeuristicConfig &config) {
  if (path_traces.size() != requests.size())
    throw InputError("one path trace required per request");
  Allocator alloc(requests, grid, model, config, "dt");
  const double alpha = config.alpha;
  for (int i : edf_order(requests)) {
    const auto &r = requests[i];
    const int want = slots_needed(r, alloc.rho_, grid);
    if (want == 0) continue;

    // A running transfer keeps a slot below tau_high; a paused transfer
    // resumes only below tau_low = tau_high - alpha (both strict). Scans the
    // window in time order; a slot it cannot take (threshold or capacity)
    // pauses the transfer.
    const auto walk = [&](double tau_high) {
      std::vector<int> chosen;
      bool running = false;
      for (int j = 0; j < r.deadline_slots; ++j) {
        const double v = path_traces[i][j];
        const double bar = running ? tau_high : tau_high - alpha;
        if (v < bar && alloc.is_free(j)) {
          chosen.push_back(j);
          running = true;
          if (static_cast<int>(chosen.size()) == want) break;
        } else {
          running = false;
        }
      }
      return chosen;
    };

    // Candidate thresholds where admission sets change, plus a sentinel
    // above every value + alpha so a feasible window is always reachable.
    std::set<double> candidates;
    double vmax = 0.0;
    for (int j = 0; j < r.deadline_slots; ++j) {
      const double v = path_traces[i][j];
      candidates.insert(v);
      candidates.insert(v + alpha);
      vmax = std::max(vmax, v);
    }
    candidates.insert(vmax + alpha + 1.0);
    const std::vector<double> levels(candidates.begin(), candidates.end());

    std::size_t lo = 0, hi = levels.size() - 1;
    if (static_cast<int>(walk(levels[hi]).size()) < want) alloc.fail(i);
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (static_cast<int>(walk(levels[mid]).size()) >= want)
        hi = mid;
      else
        lo = mid + 1;
    }
    alloc.assign(i, walk(levels[lo]));
  }
  return std::move(alloc.plan_);
}

namespace {

double clean_trace_emissions(const SchedulePlan &plan,
                             const std::vector<Eigen::VectorXd> &path_traces,
                             const PowerModel &power, const SlotGrid &grid) {
  return evaluate(plan, path_traces, power, grid).total_emissions_g;
}

}  // namespace

SchedulePlan worst_case(const std::vector<TransferRequest> &requests,
                        const std::vector<Eigen::VectorXd> &path_traces, const SlotGrid &grid,
                        const ThroughputModel &model, const PowerModel &power,
                        const HeuristicConfig &config) {
  if (path_traces.size() != requests.size())
    throw InputError("one path trace required per request");
  const std::vector<int> order = edf_order(requests);

  // Candidate A: highest-intensity slots first, EDF request order.
  Allocator greedy(requests, grid, model, config, "worst");
  for (int i : order) {
    const auto &r = requests[i];
    const int want = slots_needed(r, greedy.rho_, grid);
    std::vector<int> free = greedy.free_slots_before(r.deadline_slots);
    if (static_cast<int>(free.size()) < want) greedy.fail(i);
    std::stable_sort(free.begin(), free.end(), [&](int a, int b) {
      if (path_traces[i][a] != path_traces[i][b]) return path_traces[i][a] > path_traces[i][b];
      return a < b;
    });
    free.resize(want);
    greedy.assign(i, free);
  }
  SchedulePlan best = std::move(greedy.plan_);
  double best_emissions = clean_trace_emissions(best, path_traces, power, grid);

  // Random candidates: uniform S-subsets of the currently free slots.
  for (int c = 0; c < config.random_plan_count; ++c) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(c) + 1));
    Allocator sampled(requests, grid, model, config, "worst");
    bool ok = true;
    for (int i : order) {
      const auto &r = requests[i];
      const int want = slots_needed(r, sampled.rho_, grid);
      const std::vector<int> free = sampled.free_slots_before(r.deadline_slots);
      if (static_cast<int>(free.size()) < want) {
        ok = false;
        break;
      }
      std::vector<int> chosen;
      for (std::size_t pick : rng.sample_indices(free.size(), static_cast<std::size_t>(want)))
        chosen.push_back(free[pick]);
      sampled.assign(i, chosen);
    }
    if (!ok) continue;
    const double emissions = clean_trace_emissions(sampled.plan_, path_traces, power, grid);
    if (emissions > best_emissions) {
      best = std::move(sampled.plan_);
      best_emissions = emissions;
    }
  }
  best.algorithm = "worst";
  return best;
}

bool is_known_algorithm(const std::string &name) {
  return name == "lints" || name == "fcfs" || name == "edf" || name == "st" || name == "dt" ||
         name == "worst";
}

SchedulePlan run_algorithm(const std::string &name, const std::vector<TransferRequest> &requests,
                           const std::vector<Eigen::VectorXd> &path_traces, const SlotGrid &grid,
                           const ThroughputModel &model, const PowerModel &power,
                           const HeuristicConfig &config) {
  if (name == "lints") return schedule(requests, path_traces, grid, model);
  if (name == "fcfs") return fcfs(requests, grid, model, config);
  if (name == "edf") return edf(requests, grid, model, config);
  if (name == "st") return single_threshold(requests, path_traces, grid, model, config);
  if (name == "dt") return double_threshold(requests, path_traces, grid, model, config);
  if (name == "worst") return worst_case(requests, path_traces, grid, model, power, config);
  throw InputError("unknown algorithm: " + name);
}

}  // namespace lints
