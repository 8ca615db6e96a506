#include "lints/plan_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lints/errors.hpp"

namespace lints {

using nlohmann::json;

PlanDocument make_plan_document(const SchedulePlan &plan, const ThroughputModel &model,
                                std::vector<std::string> *rounding_warnings) {
  PlanDocument doc;
  doc.algorithm = plan.algorithm;
  doc.grid = plan.grid;
  doc.limit_gbps = plan.limit_gbps;
  doc.requests.reserve(plan.requests.size());

  Eigen::VectorXd rounded_sum = Eigen::VectorXd::Zero(plan.grid.horizon_slots);
  for (const auto &rp : plan.requests) {
    PlanRequestRecord rec;
    rec.id = rp.id;
    rec.deadline_slots = rp.deadline_slots;
    rec.path = rp.path;
    for (Eigen::Index j = 0; j < rp.throughput_gbps.size(); ++j) {
      if (rp.throughput_gbps[j] <= 0.0) continue;
      PlanSlot slot;
      slot.index = static_cast<int>(j);
      slot.throughput_gbps = rp.throughput_gbps[j];
      slot.threads_real = rp.threads[j];
      slot.threads_int = static_cast<std::int64_t>(std::ceil(rp.threads[j]));
      rec.slots.push_back(slot);
      if (j < rounded_sum.size())
        rounded_sum[j] += throughput_of_threads(model, static_cast<double>(slot.threads_int));
    }
    doc.requests.push_back(std::move(rec));
  }

  if (rounding_warnings) {
    for (Eigen::Index j = 0; j < rounded_sum.size(); ++j) {
      if (rounded_sum[j] > plan.limit_gbps + 1e-9) {
        std::ostringstream w;
        w << "slot " << j << ": integer-thread throughput " << rounded_sum[j]
          << " Gbps exceeds the limit " << plan.limit_gbps;
        rounding_warnings->push_back(w.str());
      }
    }
  }
  return doc;
}

SchedulePlan to_schedule_plan(const PlanDocument &doc) {
  SchedulePlan plan;
  plan.algorithm = doc.algorithm;
  plan.limit_gbps = doc.limit_gbps;
  plan.grid = doc.grid;
  plan.requests.reserve(doc.requests.size());
  for (const auto &rec : doc.requests) {
    RequestPlan rp;
    rp.id = rec.id;
    rp.deadline_slots = rec.deadline_slots;
    rp.path = rec.path;
    rp.throughput_gbps = Eigen::VectorXd::Zero(rec.deadline_slots);
    rp.threads = Eigen::VectorXd::Zero(rec.deadline_slots);
    for (const auto &slot : rec.slots) {
      if (slot.index < 0 || slot.index >= rec.deadline_slots)
        throw InputError("plan request " + rec.id + ": slot index outside [0, deadline)");
      rp.throughput_gbps[slot.index] = slot.throughput_gbps;
      rp.threads[slot.index] = slot.threads_real;
    }
    plan.requests.push_back(std::move(rp));
  }
  return plan;
}

json plan_to_json(const PlanDocument &doc) {
  json out;
  out["version"] = doc.version;
  out["algorithm"] = doc.algorithm;
  out["grid"] = {{"slot_seconds", doc.grid.slot_seconds}, {"horizon_slots", doc.grid.horizon_slots}};
  out["limit_gbps"] = doc.limit_gbps;
  json reqs = json::array();
  for (const auto &rec : doc.requests) {
    json slots = json::array();
    for (const auto &s : rec.slots) {
      slots.push_back({{"index", s.index},
                       {"throughput_gbps", s.throughput_gbps},
                       {"threads_real", s.threads_real},
                       {"threads_int", s.threads_int}});
    }
    json path = json::array();
    for (const auto &node : rec.path)
      path.push_back({{"zone", node.zone}, {"weight", node.weight}});
    reqs.push_back({{"id", rec.id},
                    {"deadline_slots", rec.deadline_slots},
                    {"path", std::move(path)},
                    {"slots", std::move(slots)}});
  }
  out["requests"] = std::move(reqs);
  return out;
}

PlanDocument plan_from_json(const json &j) {
  try {
    PlanDocument doc;
    doc.version = j.at("version").get<int>();
    doc.algorithm = j.at("algorithm").get<std::string>();
    doc.grid.slot_seconds = j.at("grid").at("slot_seconds").get<double>();
    doc.grid.horizon_slots = j.at("grid").at("horizon_slots").get<int>();
    doc.limit_gbps = j.at("limit_gbps").get<double>();
    for (const auto &rec : j.at("requests")) {
      PlanRequestRecord r;
      r.id = rec.at("id").get<std::string>();
      r.deadline_slots = rec.at("deadline_slots").get<int>();
      for (const auto &node : rec.value("path", json::array()))
        r.path.push_back({node.at("zone").get<std::string>(), node.value("weight", 1.0)});
      for (const auto &s : rec.at("slots")) {
        PlanSlot slot;
        slot.index = s.at("index").get<int>();
        slot.throughput_gbps = s.at("throughput_gbps").get<double>();
        slot.threads_real = s.at("threads_real").get<double>();
        slot.threads_int = s.at("threads_int").get<std::int64_t>();
        r.slots.push_back(slot);
      }
      doc.requests.push_back(std::move(r));
    }
    return doc;
  } catch (const json::exception &e) {
    throw InputError(std::string("bad plan document: ") + e.what());
  }
}

std::vector<TransferRequest> requests_from_json(const json &j) {
  if (!j.is_array()) throw InputError("requests document must be a JSON array");
  std::vector<TransferRequest> out;
  try {
    for (const auto &item : j) {
      TransferRequest r;
      r.id = item.at("id").get<std::string>();
      r.size_bytes = item.at("size_bytes").get<std::int64_t>();
      r.deadline_slots = item.at("deadline_slots").get<int>();
      for (const auto &node : item.at("path"))
        r.path.push_back({node.at("zone").get<std::string>(), node.value("weight", 1.0)});
      validate_path(r.path);
      out.push_back(std::move(r));
    }
  } catch (const json::exception &e) {
    throw InputError(std::string("bad requests document: ") + e.what());
  }
  return out;
}

json requests_to_json(const std::vector<TransferRequest> &requests) {
  json out = json::array();
  for (const auto &r : requests) {
    json path = json::array();
    for (const auto &node : r.path) path.push_back({{"zone", node.zone}, {"weight", node.weight}});
    out.push_back({{"id", r.id},
                   {"size_bytes", r.size_bytes},
                   {"deadline_slots", r.deadline_slots},
                   {"path", std::move(path)}});
  }
  return out;
}

json report_to_json(const EmissionsReport &report) {
  json reqs = json::array();
  for (const auto &r : report.requests) {
    reqs.push_back({{"id", r.id},
                    {"energy_kwh", r.energy_kwh},
                    {"emissions_g", r.emissions_g},
                    {"slots_used", r.slots_used},
                    {"deadline_met", r.deadline_met}});
  }
  return json{{"algorithm", report.algorithm},
              {"limit_gbps", report.limit_gbps},
              {"noise", report.noise_epsilon},
              {"seed", report.seed},
              {"feasible", report.feasible},
              {"total_energy_kwh", report.total_energy_kwh},
              {"total_emissions_g", report.total_emissions_g},
              {"requests", std::move(reqs)}};
}

Scenario scenario_from_json(const json &j) {
  try {
    Scenario s;
    const json &req = j.at("requests");
    s.requests.count = req.at("count").get<int>();
    s.requests.size_bytes_min = req.at("size_bytes_min").get<double>();
    s.requests.size_bytes_max = req.at("size_bytes_max").get<double>();
    s.requests.deadline_slots_min = req.at("deadline_slots_min").get<int>();
    s.requests.deadline_slots_max = req.at("deadline_slots_max").get<int>();
    s.requests.path_nodes_min = req.value("path_nodes_min", 3);
    s.requests.path_nodes_max = req.value("path_nodes_max", 8);
    s.requests.seed = req.value("seed", std::uint64_t{1});

    const json &grid = j.at("grid");
    s.grid.slot_seconds = grid.at("slot_seconds").get<double>();
    s.grid.horizon_slots = grid.at("horizon_slots").get<int>();

    const json &traces = j.at("traces");
    if (traces.contains("files")) {
      FileTraceSpec f;
      f.path = traces.at("files").at("path").get<std::string>();
      f.zones = traces.at("files").at("zones").get<std::vector<std::string>>();
      s.trace_files = std::move(f);
    }
    if (traces.contains("synthetic")) {
      const json &syn = traces.at("synthetic");
      SyntheticTraceSpec t;
      t.zones = syn.at("zones").get<std::vector<std::string>>();
      t.mean = syn.at("mean").get<double>();
      t.amplitude = syn.at("amplitude").get<double>();
      t.period_hours = syn.value("period_hours", 24.0);
      t.hours = syn.at("hours").get<int>();
      t.seed = syn.value("seed", std::uint64_t{1});
      s.synthetic = std::move(t);
    }

    s.limits_gbps = j.at("limits_gbps").get<std::vector<double>>();
    s.noise_epsilons = j.at("noise_epsilons").get<std::vector<double>>();
    s.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();

    if (j.contains("heuristics")) {
      const json &h = j.at("heuristics");
      s.heuristics.theta_cap = h.value("theta_cap", 32.0);
      s.heuristics.alpha = h.value("alpha", 50.0);
      s.heuristics.random_plan_count = h.value("random_plan_count", 100);
      s.heuristics.seed = h.value("seed", std::uint64_t{0});
    }
    if (j.contains("model")) {
      const json &m = j.at("model");
      s.s_rho = m.value("s_rho", 1.0 / 24.0);
      s.power = PowerModel(m.value("p_max_w", 100.0), m.value("p_min_w", 88.0),
                           m.value("s_p", 1.0 / 50.0));
    }
    s.validate();
    return s;
  } catch (const json::exception &e) {
    throw InputError(std::string("bad scenario document: ") + e.what());
  }
}

json scenario_to_json(const Scenario &s) {
  json traces;
  if (s.trace_files)
    traces["files"] = {{"path", s.trace_files->path}, {"zones", s.trace_files->zones}};
  if (s.synthetic)
    traces["synthetic"] = {{"zones", s.synthetic->zones},     {"mean", s.synthetic->mean},
                           {"amplitude", s.synthetic->amplitude}, {"period_hours", s.synthetic->period_hours},
                           {"hours", s.synthetic->hours},     {"seed", s.synthetic->seed}};
  return json{
      {"requests",
       {{"count", s.requests.count},
        {"size_bytes_min", s.requests.size_bytes_min},
        {"size_bytes_max", s.requests.size_bytes_max},
        {"deadline_slots_min", s.requests.deadline_slots_min},
        {"deadline_slots_max", s.requests.deadline_slots_max},
        {"path_nodes_min", s.requests.path_nodes_min},
        {"path_nodes_max", s.requests.path_nodes_max},
        {"seed", s.requests.seed}}},
      {"grid", {{"slot_seconds", s.grid.slot_seconds}, {"horizon_slots", s.grid.horizon_slots}}},
      {"traces", std::move(traces)},
      {"limits_gbps", s.limits_gbps},
      {"noise_epsilons", s.noise_epsilons},
      {"algorithms", s.algorithms},
      {"seeds", s.seeds},
      {"heuristics",
       {{"theta_cap", s.heuristics.theta_cap},
        {"alpha", s.heuristics.alpha},
        {"random_plan_count", s.heuristics.random_plan_count},
        {"seed", s.heuristics.seed}}},
      {"model",
       {{"s_rho", s.s_rho},
        {"p_max_w", s.power.p_max_w},
        {"p_min_w", s.power.p_min_w},
        {"s_p", s.power.s_p}}}};
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

}  // namespace lints
