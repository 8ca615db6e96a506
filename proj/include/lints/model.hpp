#ifndef LINTS_MODEL_HPP_
#define LINTS_MODEL_HPP_

#include <stdexcept>
#include <string>

namespace lints {

/// Saturating thread->throughput curve of a bottlenecked WAN path:
///   rho(theta) = L * (1 - 1 / (s_rho * L * theta + 1))
/// Strictly increasing, rho(0) = 0, asymptote L.
struct ThroughputModel {
  double limit_gbps = 1.0;   // bottleneck bandwidth L
  double s_rho = 1.0 / 24.0; // throughput scale

  ThroughputModel() = default;
  ThroughputModel(double limit, double scale) : limit_gbps(limit), s_rho(scale) {
    if (!(limit_gbps > 0.0)) throw std::invalid_argument("bandwidth limit must be > 0");
    if (!(s_rho > 0.0)) throw std::invalid_argument("throughput scale must be > 0");
  }
};

/// Saturating thread->CPU-power curve:
///   P(theta) = dP * (1 - 1 / (s_p * dP * theta + 1)) + P_min,  dP = P_max - P_min
/// Increasing, P(0) = P_min, asymptote P_max.
struct PowerModel {
  double p_max_w = 100.0;
  double p_min_w = 88.0;
  double s_p = 1.0 / 50.0;

  PowerModel() = default;
  PowerModel(double p_max, double p_min, double scale)
      : p_max_w(p_max), p_min_w(p_min), s_p(scale) {
    if (!(p_max_w > p_min_w)) throw std::invalid_argument("p_max must exceed p_min");
    if (!(p_min_w >= 0.0)) throw std::invalid_argument("p_min must be >= 0");
    if (!(s_p > 0.0)) throw std::invalid_argument("power scale must be > 0");
  }

  double delta_p() const { return p_max_w - p_min_w; }
};

/// Curvature constant of the exact power-vs-throughput relation,
/// K = s_p * dP / (s_rho * L).
inline double power_curve_constant(const PowerModel &pm, const ThroughputModel &tm) {
  return pm.s_p * pm.delta_p() / (tm.s_rho * tm.limit_gbps);
}

inline double throughput_of_threads(const ThroughputModel &m, double theta) {
  if (theta < 0.0) throw std::domain_error("thread count must be >= 0");
  return m.limit_gbps * (1.0 - 1.0 / (m.s_rho * m.limit_gbps * theta + 1.0));
}

/// Exact inverse of throughput_of_threads. Defined for 0 <= rho < L; the
/// curve saturates at L, so rho >= L has no finite thread count.
inline double threads_of_throughput(const ThroughputModel &m, double rho) {
  if (rho < 0.0) throw std::domain_error("throughput must be >= 0");
  if (rho >= m.limit_gbps)
    throw std::domain_error("saturation: no finite thread count for throughput >= limit");
  return (1.0 / (m.s_rho * m.limit_gbps)) * (rho / (m.limit_gbps - rho));
}

inline double power_of_threads(const PowerModel &m, double theta) {
  if (theta < 0.0) throw std::domain_error("thread count must be >= 0");
  const double dp = m.delta_p();
  return dp * (1.0 - 1.0 / (m.s_p * dp * theta + 1.0)) + m.p_min_w;
}

/// Power as a function of throughput, composing the exact curves:
///   P(rho) = P_max + dP * (rho - L) / ((K - 1) * rho + L)
inline double power_of_throughput_exact(const PowerModel &pm, const ThroughputModel &tm,
                                        double rho) {
  if (rho < 0.0 || rho > tm.limit_gbps)
    throw std::domain_error("throughput out of [0, limit]");
  const double k = power_curve_constant(pm, tm);
  return pm.p_max_w +
         pm.delta_p() * (rho - tm.limit_gbps) / ((k - 1.0) * rho + tm.limit_gbps);
}

/// Linear chord of the exact curve between (0, P_min) and (L, P_max); the
/// objective proxy used by the LP.
inline double power_of_throughput_linear(const PowerModel &pm, const ThroughputModel &tm,
                                         double rho) {
  if (rho < 0.0 || rho > tm.limit_gbps)
    throw std::domain_error("throughput out of [0, limit]");
  return (pm.delta_p() / tm.limit_gbps) * rho + pm.p_min_w;
}

}  // namespace lints

#endif  // LINTS_MODEL_HPP_
