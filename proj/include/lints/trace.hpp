#ifndef LINTS_TRACE_HPP_
#define LINTS_TRACE_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lints {

/// Fixed scheduling quantum: slot length and horizon length.
struct SlotGrid {
  double slot_seconds = 900.0;
  int horizon_slots = 288;

  double horizon_seconds() const { return slot_seconds * horizon_slots; }
};

/// Hourly carbon-intensity series for one grid zone, in gCO2/kWh.
struct CarbonTrace {
  std::string zone;
  std::int64_t start_epoch_s = 0;
  std::int64_t step_seconds = 3600;
  Eigen::VectorXd values;
};

struct PathNode {
  std::string zone;
  double weight = 1.0;
};

/// Ordered node list of a transfer path with per-node intensity weights.
/// Equal weighting is expressed as weight 1 per node, so the combined
/// trace of a path is the plain sum of its node traces.
using PathSpec = std::vector<PathNode>;

void validate_path(const PathSpec &path);

/// Stable text key for a path (zone:weight joined), used for caching and
/// for deriving per-path noise seeds.
std::string path_key(const PathSpec &path);

// ---- timestamps -----------------------------------------------------------

/// Parses "YYYY-MM-DDTHH:MM:SSZ" (UTC) to epoch seconds. Throws InputError.
std::int64_t parse_utc_timestamp(const std::string &text);

std::string format_utc_timestamp(std::int64_t epoch_s);

// ---- operations ------------------------------------------------------------

/// Reads a trace CSV (`zone,timestamp,intensity_gco2_kwh`) and returns one
/// CarbonTrace per requested zone. All requested zones must be present,
/// hourly, aligned to the same start, and of equal length.
std::map<std::string, CarbonTrace> load_traces(std::istream &in,
                                               const std::vector<std::string> &zones);
std::map<std::string, CarbonTrace> load_traces(const std::string &csv_path,
                                               const std::vector<std::string> &zones);

/// Weighted elementwise sum of the path's zone traces, still hourly.
Eigen::VectorXd combine_path(const std::map<std::string, CarbonTrace> &traces,
                             const PathSpec &path);

/// Piecewise-constant expansion of an hourly series onto the slot grid:
/// each hourly value is held for (3600 / slot_seconds) slots. The expanded
/// series must cover the horizon; it is truncated to exactly
/// grid.horizon_slots entries.
Eigen::VectorXd expand_to_slots(const Eigen::Ref<const Eigen::VectorXd> &hourly,
                                const SlotGrid &grid,
                                std::int64_t step_seconds = 3600);

/// Multiplies every slot by (1 + u), u ~ U[-epsilon, +epsilon] drawn from a
/// generator seeded by `seed`; clamps at zero. epsilon in [0, 1).
Eigen::VectorXd add_noise(const Eigen::Ref<const Eigen::VectorXd> &slot_trace,
                          double epsilon, std::uint64_t seed);

/// Sinusoidal diurnal series with +-5%-of-mean seeded jitter, clamped at 0.
/// Requires mean >= amplitude >= 0.
CarbonTrace synth_trace(const std::string &zone, double mean, double amplitude,
                        double period_hours, int hours, std::uint64_t seed);

}  // namespace lints

#endif  // LINTS_TRACE_HPP_
