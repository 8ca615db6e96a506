#include "lints/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lints {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericError: return "numeric_error";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegenStep = 1e-12;
constexpr int kRefactorEvery = 64;
constexpr int kBlandTrigger = 1000;

enum class VarState : std::uint8_t { kAtLower, kAtUpper, kFree, kBasic };

// Bounded-variable primal simplex on
//   minimize c.x   s.t.  A x + s = b,  l <= x <= u,  s >= 0,
// with per-row artificials for rows the slack basis cannot satisfy.
// The basis inverse is a dense LU refreshed every kRefactorEvery pivots and
// advanced with product-form eta updates in between. Every choice rule is
// index-deterministic, so identical problems give bit-identical solutions.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LpProblem &p) : prob_(p) {}

  LpSolution run() {
    LpSolution sol;
    setup();

    // Phase 1: minimize the artificial sum.
    phase1_ = true;
    const LpStatus s1 = iterate();
    if (s1 != LpStatus::kOptimal) {
      sol.status = s1 == LpStatus::kUnbounded ? LpStatus::kNumericError : s1;
      sol.iterations = iterations_;
      return sol;
    }
    const double infeas = artificial_sum();
    if (infeas > 1e-9 * (1.0 + b_.cwiseAbs().maxCoeff())) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iterations_;
      return sol;
    }
    // Pin artificials at zero for phase 2.
    for (int a = 0; a < num_art_; ++a) upper_[first_art_ + a] = 0.0;

    phase1_ = false;
    const LpStatus s2 = iterate();
    sol.status = s2;
    sol.iterations = iterations_;
    if (s2 != LpStatus::kOptimal) return sol;

    refactor();  // clean basic values before extraction
    if (failed_) {
      sol.status = LpStatus::kNumericError;
      return sol;
    }
    sol.x = extract();
    sol.objective = prob_.cost.dot(sol.x);

    // Final sanity against the original, unscaled problem.
    const double scale =
        prob_.b_ub.size() > 0 ? std::max(1.0, prob_.b_ub.cwiseAbs().maxCoeff()) : 1.0;
    Eigen::VectorXd resid = prob_.a_ub * sol.x - prob_.b_ub;
    if (resid.size() > 0 && resid.maxCoeff() > 1e-7 * scale) sol.status = LpStatus::kNumericError;
    return sol;
  }

 private:
  void setup() {
    const Eigen::Index n = prob_.num_vars();
    const Eigen::Index m = prob_.num_rows();
    if (prob_.a_ub.cols() != n || prob_.a_ub.rows() != m || prob_.lower.size() != n ||
        prob_.upper.size() != n)
      throw std::invalid_argument("lp: dimension mismatch between cost, a_ub, b_ub and bounds");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isnan(prob_.lower[j]) || std::isnan(prob_.upper[j]) ||
          prob_.lower[j] > prob_.upper[j])
        throw std::invalid_argument("lp: invalid variable bounds");
    }

    m_ = static_cast<int>(m);
    nstruct_ = static_cast<int>(n);

    // Row equilibration by max |coefficient|.
    row_scale_.assign(m_, 1.0);
    Eigen::SparseMatrix<double> cols = prob_.a_ub;  // column-major copy
    for (int k = 0; k < cols.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(cols, k); it; ++it)
        row_scale_[it.row()] = std::max(row_scale_[it.row()], std::abs(it.value()));

    b_.resize(m_);
    for (int i = 0; i < m_; ++i) b_[i] = prob_.b_ub[i] / row_scale_[i];

    // CSC storage of structural + slack columns (scaled).
    const int ncols = nstruct_ + m_;
    col_ptr_.assign(ncols + 1, 0);
    for (int j = 0; j < nstruct_; ++j)
      col_ptr_[j + 1] = col_ptr_[j] + static_cast<int>(cols.col(j).nonZeros());
    for (int i = 0; i < m_; ++i) col_ptr_[nstruct_ + i + 1] = col_ptr_[nstruct_ + i] + 1;
    row_idx_.resize(col_ptr_[ncols]);
    col_val_.resize(col_ptr_[ncols]);
    for (int j = 0; j < nstruct_; ++j) {
      int at = col_ptr_[j];
      for (Eigen::SparseMatrix<double>::InnerIterator it(cols, j); it; ++it) {
        row_idx_[at] = static_cast<int>(it.row());
        col_val_[at] = it.value() / row_scale_[it.row()];
        ++at;
      }
    }
    for (int i = 0; i < m_; ++i) {
      row_idx_[col_ptr_[nstruct_ + i]] = i;
      col_val_[col_ptr_[nstruct_ + i]] = 1.0;
    }

    lower_.assign(ncols, 0.0);
    upper_.assign(ncols, kInf);
    cost2_.assign(ncols, 0.0);
    for (int j = 0; j < nstruct_; ++j) {
      lower_[j] = prob_.lower[j];
      upper_[j] = prob_.upper[j];
      cost2_[j] = prob_.cost[j];
    }

    // Nonbasic start: every structural variable at its preferred bound.
    state_.assign(ncols, VarState::kAtLower);
    for (int j = 0; j < nstruct_; ++j) {
      if (std::isfinite(lower_[j])) state_[j] = VarState::kAtLower;
      else if (std::isfinite(upper_[j])) state_[j] = VarState::kAtUpper;
      else state_[j] = VarState::kFree;
    }

    // Required slack values; negative ones get an artificial instead.
    Eigen::VectorXd r = b_;
    for (int j = 0; j < nstruct_; ++j) {
      const double v = nonbasic_value(j);
      if (v != 0.0)
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) r[row_idx_[k]] -= col_val_[k] * v;
    }

    basic_.assign(m_, -1);
    xb_.resize(m_);
    first_art_ = ncols;
    art_row_.clear();
    for (int i = 0; i < m_; ++i) {
      if (r[i] >= 0.0) {
        basic_[i] = nstruct_ + i;
        state_[nstruct_ + i] = VarState::kBasic;
        xb_[i] = r[i];
      } else {
        const int art = first_art_ + static_cast<int>(art_row_.size());
        art_row_.push_back(i);
        basic_[i] = art;
        xb_[i] = -r[i];
        state_.push_back(VarState::kBasic);
        lower_.push_back(0.0);
        upper_.push_back(kInf);
        cost2_.push_back(0.0);
      }
    }
    num_art_ = static_cast<int>(art_row_.size());
    total_cols_ = ncols + num_art_;

    dual_tol2_ = 1e-9 * (1.0 + (nstruct_ > 0 ? prob_.cost.cwiseAbs().maxCoeff() : 0.0));
    refactor();
  }

  double nonbasic_value(int j) const {
    switch (state_[j]) {
      case VarState::kAtLower: return lower_[j];
      case VarState::kAtUpper: return upper_[j];
      default: return 0.0;
    }
  }

  double phase_cost(int j) const {
    if (phase1_) return j >= first_art_ ? 1.0 : 0.0;
    return cost2_[j];
  }

  double artificial_sum() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= first_art_) s += xb_[i];
    return s;
  }

  // Dense column j of [A | I | -I_art] (scaled).
  void scatter_column(int j, Eigen::VectorXd &out) const {
    out.setZero(m_);
    if (j >= first_art_) {
      out[art_row_[j - first_art_]] = -1.0;
      return;
    }
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) out[row_idx_[k]] = col_val_[k];
  }

  double column_dot(int j, const Eigen::VectorXd &y) const {
    if (j >= first_art_) return -y[art_row_[j - first_art_]];
    double s = 0.0;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) s += col_val_[k] * y[row_idx_[k]];
    return s;
  }

  void refactor() {
    Eigen::MatrixXd basis(m_, m_);
    Eigen::VectorXd col(m_);
    for (int i = 0; i < m_; ++i) {
      scatter_column(basic_[i], col);
      basis.col(i) = col;
    }
    lu_.compute(basis);
    const auto &diag = lu_.matrixLU().diagonal();
    if (m_ > 0 && diag.cwiseAbs().minCoeff() < 1e-12 * (1.0 + diag.cwiseAbs().maxCoeff())) {
      failed_ = true;
      return;
    }
    etas_.clear();
    pivots_since_refactor_ = 0;

    // Recompute basic values from scratch to shed accumulated drift.
    Eigen::VectorXd rhs = b_;
    for (int j = 0; j < total_cols_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      const double v = nonbasic_value(j);
      if (v == 0.0) continue;
      if (j >= first_art_) {
        rhs[art_row_[j - first_art_]] += v;
      } else {
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) rhs[row_idx_[k]] -= col_val_[k] * v;
      }
    }
    xb_ = lu_.solve(rhs);
  }

  void ftran(Eigen::VectorXd &v) const {
    v = lu_.solve(v);
    for (const Eta &e : etas_) {
      const double pivot = v[e.r] / e.w[e.r];
      if (pivot != 0.0) v -= pivot * e.w;
      v[e.r] = pivot;
    }
  }

  void btran(Eigen::VectorXd &v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const double zr = (v[it->r] - (it->w.dot(v) - it->w[it->r] * v[it->r])) / it->w[it->r];
      v[it->r] = zr;
    }
    v = lu_.transpose().solve(v);
  }

  LpStatus iterate() {
    int degen_streak = 0;
    bool bland = false;
    const long max_iters = std::max<long>(50000, 200L * (m_ + 1));
    Eigen::VectorXd y(m_), w(m_);

    for (long it = 0; it < max_iters; ++it, ++iterations_) {
      if (failed_) return LpStatus::kNumericError;

      // BTRAN for duals.
      for (int i = 0; i < m_; ++i) y[i] = phase_cost(basic_[i]);
      btran(y);

      // Pricing.
      int entering = -1;
      double best = 0.0;
      int direction = +1;
      for (int j = 0; j < total_cols_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed
        const double d = phase_cost(j) - column_dot(j, y);
        int dir = 0;
        double score = 0.0;
        if (state_[j] == VarState::kAtLower && d < -dual_tol2_) {
          dir = +1;
          score = -d;
        } else if (state_[j] == VarState::kAtUpper && d > dual_tol2_) {
          dir = -1;
          score = d;
        } else if (state_[j] == VarState::kFree && std::abs(d) > dual_tol2_) {
          dir = d < 0.0 ? +1 : -1;
          score = std::abs(d);
        }
        if (dir == 0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (score > best) {
          best = score;
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      scatter_column(entering, w);
      ftran(w);

      // Ratio test: smallest blocking step among basic bounds, or the
      // entering variable's own bound span (bound flip).
      double best_t = kInf;
      int leave_pos = -1;
      int leave_to_upper = 0;
      double leave_rate_abs = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double rate = direction * w[i];
        const int bi = basic_[i];
        if (rate > kPivotTol) {
          if (!std::isfinite(lower_[bi])) continue;
          const double t = (xb_[i] - lower_[bi]) / rate;
          consider(t, i, 0, std::abs(w[i]), best_t, leave_pos, leave_to_upper, leave_rate_abs);
        } else if (rate < -kPivotTol) {
          if (!std::isfinite(upper_[bi])) continue;
          const double t = (xb_[i] - upper_[bi]) / rate;
          consider(t, i, 1, std::abs(w[i]), best_t, leave_pos, leave_to_upper, leave_rate_abs);
        }
      }
      const double flip_span = upper_[entering] - lower_[entering];
      if (std::isfinite(flip_span) && flip_span < best_t) {
        // Bound flip: move straight across the box, basis unchanged.
        for (int i = 0; i < m_; ++i) xb_[i] -= direction * flip_span * w[i];
        state_[entering] =
            state_[entering] == VarState::kAtLower ? VarState::kAtUpper : VarState::kAtLower;
        degen_streak = 0;
        continue;
      }
      if (leave_pos < 0) {
        return phase1_ ? LpStatus::kNumericError : LpStatus::kUnbounded;
      }

      const double t = std::max(0.0, best_t);
      const int leaving = basic_[leave_pos];
      for (int i = 0; i < m_; ++i) xb_[i] -= direction * t * w[i];
      const double entering_value =
          (state_[entering] == VarState::kFree ? 0.0 : nonbasic_value(entering)) + direction * t;
      xb_[leave_pos] = entering_value;
      basic_[leave_pos] = entering;
      state_[entering] = VarState::kBasic;
      state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;

      etas_.push_back(Eta{leave_pos, w});
      if (++pivots_since_refactor_ >= kRefactorEvery) refactor();

      if (t <= kDegenStep) {
        if (++degen_streak >= kBlandTrigger) bland = true;
      } else {
        degen_streak = 0;
        bland = false;
      }
    }
    return LpStatus::kNumericError;  // iteration cap; never report garbage
  }

  static void consider(double t, int pos, int to_upper, double rate_abs, double &best_t,
                       int &leave_pos, int &leave_to_upper, double &leave_rate_abs) {
    t = std::max(0.0, t);
    constexpr double kTie = 1e-10;
    const bool better =
        t < best_t - kTie || (t < best_t + kTie && rate_abs > leave_rate_abs);
    if (leave_pos < 0 || better) {
      best_t = std::min(t, best_t);
      leave_pos = pos;
      leave_to_upper = to_upper;
      leave_rate_abs = rate_abs;
    }
  }

  Eigen::VectorXd extract() const {
    Eigen::VectorXd x(nstruct_);
    for (int j = 0; j < nstruct_; ++j) x[j] = nonbasic_value(j);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < nstruct_) x[basic_[i]] = xb_[i];
    }
    // Snap into the box; vertex values sit within solver tolerance of it.
    for (int j = 0; j < nstruct_; ++j)
      x[j] = std::min(std::max(x[j], prob_.lower[j]), prob_.upper[j]);
    return x;
  }

  const LpProblem &prob_;
  int m_ = 0, nstruct_ = 0, num_art_ = 0, first_art_ = 0, total_cols_ = 0;
  std::vector<int> art_row_;
  std::vector<double> row_scale_;
  std::vector<int> col_ptr_, row_idx_;
  std::vector<double> col_val_;
  std::vector<double> lower_, upper_, cost2_;
  Eigen::VectorXd b_, xb_;
  std::vector<int> basic_;
  std::vector<VarState> state_;

  struct Eta {
    int r;
    Eigen::VectorXd w;
  };
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  std::vector<Eta> etas_;
  int pivots_since_refactor_ = 0;
  bool phase1_ = true;
  bool failed_ = false;
  double dual_tol2_ = 1e-9;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve(const LpProblem &problem) {
  BoundedSimplex simplex(problem);
  return simplex.run();
}

}  // namespace lints
