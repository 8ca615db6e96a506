#ifndef LINTS_TESTS_FIXTURES_HPP_
#define LINTS_TESTS_FIXTURES_HPP_

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "lints/scheduler.hpp"
#include "lints/trace.hpp"

namespace lints::testing {

/// Synthetic multi-zone trace CSV (hourly, aligned, diurnal + jitter).
inline std::string trace_csv(const std::vector<std::string> &zones, int hours,
                             std::uint64_t seed) {
  std::ostringstream out;
  out << "zone,timestamp,intensity_gco2_kwh\n";
  for (std::size_t k = 0; k < zones.size(); ++k) {
    const CarbonTrace t =
        synth_trace(zones[k], 420.0 + 40.0 * static_cast<double>(k % 3), 300.0, 24.0, hours,
                    seed + 1000 * k);
    for (int h = 0; h < hours; ++h)
      out << zones[k] << ',' << format_utc_timestamp(1704067200 + 3600LL * h) << ','
          << t.values[h] << '\n';
  }
  return out.str();
}

inline TransferRequest request_gbit(const std::string &id, double gbit, int deadline,
                                    PathSpec path) {
  TransferRequest r;
  r.id = id;
  r.size_bytes = static_cast<std::int64_t>(std::llround(gbit * 1e9 / 8.0));
  r.deadline_slots = deadline;
  r.path = std::move(path);
  return r;
}

}  // namespace lints::testing

#endif  // LINTS_TESTS_FIXTURES_HPP_
