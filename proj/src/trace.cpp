#include "lints/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lints/errors.hpp"
#include "lints/rng.hpp"

namespace lints {

namespace {

// Days from 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int &y, int &m, int &d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

int parse_fixed_int(const std::string &s, std::size_t pos, std::size_t len) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw InputError("bad timestamp: " + s);
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

std::string strip(const std::string &s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::int64_t parse_utc_timestamp(const std::string &text) {
  // YYYY-MM-DDTHH:MM:SSZ (also accepts trailing "+00:00")
  const std::string s = strip(text);
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':')
    throw InputError("bad timestamp: " + text);
  const std::string tail = s.substr(19);
  if (!tail.empty() && tail != "Z" && tail != "+00:00")
    throw InputError("timestamp must be UTC: " + text);
  const int y = parse_fixed_int(s, 0, 4);
  const int mo = parse_fixed_int(s, 5, 2);
  const int d = parse_fixed_int(s, 8, 2);
  const int h = parse_fixed_int(s, 11, 2);
  const int mi = parse_fixed_int(s, 14, 2);
  const int se = parse_fixed_int(s, 17, 2);
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
    throw InputError("bad timestamp: " + text);
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_utc_timestamp(std::int64_t epoch_s) {
  std::int64_t days = epoch_s / 86400;
  std::int64_t rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

void validate_path(const PathSpec &path) {
  if (path.size() < 2)
    throw InputError("path must have at least source and destination nodes");
  double sum = 0.0;
  for (const auto &node : path) {
    if (node.zone.empty()) throw InputError("path node with empty zone");
    if (!(node.weight >= 0.0)) throw InputError("negative path weight for zone " + node.zone);
    sum += node.weight;
  }
  if (!(sum > 0.0)) throw InputError("path weights sum to zero");
}

std::string path_key(const PathSpec &path) {
  std::ostringstream out;
  for (const auto &node : path) {
    out << node.zone << ':' << node.weight << '|';
  }
  return out.str();
}

std::map<std::string, CarbonTrace> load_traces(std::istream &in,
                                               const std::vector<std::string> &zones) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty trace file");
  if (strip(line) != "zone,timestamp,intensity_gco2_kwh")
    throw InputError("trace file header must be zone,timestamp,intensity_gco2_kwh");

  std::map<std::string, CarbonTrace> all;
  std::map<std::string, std::vector<double>> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = strip(line);
    if (row.empty()) continue;
    const auto c1 = row.find(',');
    const auto c2 = row.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InputError("trace line " + std::to_string(line_no) + ": expected 3 fields");
    const std::string zone = strip(row.substr(0, c1));
    const std::int64_t ts = parse_utc_timestamp(row.substr(c1 + 1, c2 - c1 - 1));
    const std::string num = strip(row.substr(c2 + 1));
    double intensity = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), intensity);
    if (res.ec != std::errc() || res.ptr != num.data() + num.size())
      throw InputError("trace line " + std::to_string(line_no) + ": bad intensity '" + num + "'");
    if (!(intensity >= 0.0))
      throw InputError("invalid trace value: negative intensity for zone " + zone + " at " +
                       format_utc_timestamp(ts));

    auto [it, inserted] = all.try_emplace(zone);
    auto &trace = it->second;
    auto &vals = values[zone];
    if (inserted) {
      trace.zone = zone;
      trace.start_epoch_s = ts;
      trace.step_seconds = 3600;
    } else {
      const std::int64_t expected = trace.start_epoch_s + 3600 * static_cast<std::int64_t>(vals.size());
      if (ts != expected)
        throw InputError("trace alignment error: zone " + zone + " expected " +
                         format_utc_timestamp(expected) + " got " + format_utc_timestamp(ts));
    }
    vals.push_back(intensity);
  }

  std::map<std::string, CarbonTrace> out;
  for (const auto &zone : zones) {
    auto it = all.find(zone);
    if (it == all.end()) throw InputError("zone not found: " + zone);
    auto trace = it->second;
    const auto &vals = values[zone];
    trace.values = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    out.emplace(zone, std::move(trace));
  }
  if (out.empty()) throw InputError("no zones requested");

  const auto &first = out.begin()->second;
  for (const auto &[zone, trace] : out) {
    if (trace.values.size() == 0) throw InputError("zone " + zone + " has no rows");
    if (trace.start_epoch_s != first.start_epoch_s || trace.values.size() != first.values.size())
      throw InputError("trace alignment error: zone " + zone + " does not align with zone " +
                       first.zone);
  }
  return out;
}

std::map<std::string, CarbonTrace> load_traces(const std::string &csv_path,
                                               const std::vector<std::string> &zones) {
  std::ifstream in(csv_path);
  if (!in) throw InputError("cannot open trace file: " + csv_path);
  return load_traces(in, zones);
}

Eigen::VectorXd combine_path(const std::map<std::string, CarbonTrace> &traces,
                             const PathSpec &path) {
  validate_path(path);
  Eigen::VectorXd combined;
  const CarbonTrace *first = nullptr;
  for (const auto &node : path) {
    auto it = traces.find(node.zone);
    if (it == traces.end()) throw InputError("zone not found: " + node.zone);
    const CarbonTrace &trace = it->second;
    if (!first) {
      first = &trace;
      combined = Eigen::VectorXd::Zero(trace.values.size());
    } else if (trace.start_epoch_s != first->start_epoch_s ||
               trace.values.size() != first->values.size()) {
      throw InputError("trace alignment error: zone " + node.zone + " does not align with zone " +
                       first->zone);
    }
    combined += node.weight * trace.values;
  }
  return combined;
}

Eigen::VectorXd expand_to_slots(const Eigen::Ref<const Eigen::VectorXd> &hourly,
                                const SlotGrid &grid, std::int64_t step_seconds) {
  if (grid.slot_seconds <= 0.0 || grid.horizon_slots <= 0)
    throw InputError("slot grid must have positive slot length and horizon");
  const double factor_f = static_cast<double>(step_seconds) / grid.slot_seconds;
  const auto factor = static_cast<Eigen::Index>(std::llround(factor_f));
  if (factor < 1 || std::abs(factor_f - static_cast<double>(factor)) > 1e-9)
    throw InputError("trace step is not an integer multiple of the slot length");
  const Eigen::Index expanded_len = hourly.size() * factor;
  if (expanded_len < grid.horizon_slots)
    throw InputError("trace shorter than the scheduling horizon (" +
                     std::to_string(expanded_len) + " < " + std::to_string(grid.horizon_slots) +
                     " slots)");
  Eigen::VectorXd out(grid.horizon_slots);
  for (Eigen::Index s = 0; s < grid.horizon_slots; ++s) out[s] = hourly[s / factor];
  return out;
}

Eigen::VectorXd add_noise(const Eigen::Ref<const Eigen::VectorXd> &slot_trace, double epsilon,
                          std::uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InputError("noise epsilon must be in [0, 1)");
  Eigen::VectorXd out(slot_trace.size());
  Rng rng(seed);
  for (Eigen::Index i = 0; i < slot_trace.size(); ++i) {
    const double u = rng.uniform(-epsilon, epsilon);
    out[i] = std::max(0.0, slot_trace[i] * (1.0 + u));
  }
  return out;
}

CarbonTrace synth_trace(const std::string &zone, double mean, double amplitude,
                        double period_hours, int hours, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw InputError("amplitude must be >= 0");
  if (amplitude > mean) throw InputError("amplitude exceeds mean");
  if (!(period_hours > 0.0)) throw InputError("period must be > 0");
  if (hours <= 0) throw InputError("hours must be > 0");
  CarbonTrace trace;
  trace.zone = zone;
  trace.start_epoch_s = 0;
  trace.step_seconds = 3600;
  trace.values.resize(hours);
  Rng rng(seed);
  for (int t = 0; t < hours; ++t) {
    const double base = mean + amplitude * std::sin(2.0 * std::numbers::pi * t / period_hours);
    const double jitter = rng.uniform(-0.05, 0.05) * mean;
    trace.values[t] = std::max(0.0, base + jitter);
  }
  return trace;
}

}  // namespace lints
