#ifndef LINTS_LP_HPP_
#define LINTS_LP_HPP_

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <limits>
#include <string>

namespace lints {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// minimize cost . x  subject to  a_ub x <= b_ub,  lower <= x <= upper.
struct LpProblem {
  Eigen::VectorXd cost;
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_ub;
  Eigen::VectorXd b_ub;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index num_vars() const { return cost.size(); }
  Eigen::Index num_rows() const { return b_ub.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericError };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericError;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

/// Deterministic bounded-variable two-phase revised simplex. Identical
/// problems yield bit-identical solutions. Throws std::invalid_argument on
/// dimension mismatches; numerical breakdown is reported through the status,
/// never as a silently wrong answer.
LpSolution solve(const LpProblem &problem);

}  // namespace lints

#endif  // LINTS_LP_HPP_
