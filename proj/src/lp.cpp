#include "aopc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aopc/errors.hpp"

namespace aopc::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kDegenerateStep = 1e-11;
constexpr int kRefactorInterval = 64;

}  // namespace

LinearProgram::LinearProgram(int columns)
    : n_(columns), cost_(columns, 0.0), cols_(columns), lo_(columns, 0.0),
      hi_(columns, 0.0), x_(columns, 0.0), status_(columns, VarStatus::AtLower) {
  if (columns < 0) throw InputError("negative column count");
}

void LinearProgram::setObjective(std::span<const double> cost) {
  if (static_cast<int>(cost.size()) != n_) throw InputError("objective size mismatch");
  cost_.assign(cost.begin(), cost.end());
}

void LinearProgram::setBounds(int column, double lo, double hi) {
  if (column < 0 || column >= n_) throw InputError("column out of range");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("bounds must be finite");
  if (lo > hi) throw InputError("inconsistent bounds on column " + std::to_string(column));
  lo_[column] = lo;
  hi_[column] = hi;
  if (status_[column] != VarStatus::Basic) placeNonbasic(column);
}

int LinearProgram::addRow(Row row) {
  if (row.index.size() != row.value.size()) throw InputError("row index/value size mismatch");
  const int i = rowCount();
  for (std::size_t k = 0; k < row.index.size(); ++k) {
    const int j = row.index[k];
    if (j < 0 || j >= n_) throw InputError("row references unknown column");
    cols_[j].emplace_back(i, row.value[k]);
  }
  switch (row.sense) {
    case RowSense::LessEqual: lo_.push_back(0.0); hi_.push_back(kInfinity); break;
    case RowSense::Equal: lo_.push_back(0.0); hi_.push_back(0.0); break;
    case RowSense::GreaterEqual: lo_.push_back(-kInfinity); hi_.push_back(0.0); break;
  }
  rows_.push_back(std::move(row));
  x_.push_back(0.0);
  status_.push_back(VarStatus::Basic);
  head_.push_back(n_ + i);
  factorValid_ = false;
  return i;
}

void LinearProgram::placeNonbasic(int var) {
  if (status_[var] == VarStatus::AtUpper && std::isfinite(hi_[var])) {
    x_[var] = hi_[var];
  } else if (std::isfinite(lo_[var])) {
    status_[var] = VarStatus::AtLower;
    x_[var] = lo_[var];
  } else {
    status_[var] = VarStatus::AtUpper;
    x_[var] = hi_[var];
  }
}

void LinearProgram::resetToSlackBasis() {
  for (int j = 0; j < n_; ++j) {
    status_[j] = VarStatus::AtLower;
    placeNonbasic(j);
  }
  for (int i = 0; i < rowCount(); ++i) {
    head_[i] = n_ + i;
    status_[n_ + i] = VarStatus::Basic;
  }
}

// Gauss-Jordan inversion of the basis matrix with partial pivoting.
bool LinearProgram::refactor() {
  const int r = rowCount();
  std::vector<double> b(static_cast<std::size_t>(r) * r, 0.0);
  for (int k = 0; k < r; ++k) {
    const int v = head_[k];
    if (v < n_) {
      for (const auto& [i, a] : cols_[v]) b[static_cast<std::size_t>(i) * r + k] = a;
    } else {
      b[static_cast<std::size_t>(v - n_) * r + k] = 1.0;
    }
  }
  binv_.assign(static_cast<std::size_t>(r) * r, 0.0);
  for (int i = 0; i < r; ++i) binv_[static_cast<std::size_t>(i) * r + i] = 1.0;
  for (int c = 0; c < r; ++c) {
    int piv = c;
    for (int i = c + 1; i < r; ++i)
      if (std::abs(b[static_cast<std::size_t>(i) * r + c]) >
          std::abs(b[static_cast<std::size_t>(piv) * r + c]))
        piv = i;
    const double p = b[static_cast<std::size_t>(piv) * r + c];
    if (std::abs(p) < 1e-11) return false;
    if (piv != c) {
      std::swap_ranges(b.begin() + static_cast<std::ptrdiff_t>(piv) * r,
                       b.begin() + static_cast<std::ptrdiff_t>(piv + 1) * r,
                       b.begin() + static_cast<std::ptrdiff_t>(c) * r);
      std::swap_ranges(binv_.begin() + static_cast<std::ptrdiff_t>(piv) * r,
                       binv_.begin() + static_cast<std::ptrdiff_t>(piv + 1) * r,
                       binv_.begin() + static_cast<std::ptrdiff_t>(c) * r);
    }
    double* bc = &b[static_cast<std::size_t>(c) * r];
    double* ic = &binv_[static_cast<std::size_t>(c) * r];
    for (int k = 0; k < r; ++k) {
      bc[k] /= p;
      ic[k] /= p;
    }
    for (int i = 0; i < r; ++i) {
      if (i == c) continue;
      double* bi = &b[static_cast<std::size_t>(i) * r];
      const double f = bi[c];
      if (f == 0.0) continue;
      double* ii = &binv_[static_cast<std::size_t>(i) * r];
      for (int k = 0; k < r; ++k) {
        bi[k] -= f * bc[k];
        ii[k] -= f * ic[k];
      }
    }
  }
  factorValid_ = true;
  return true;
}

void LinearProgram::computePrimal() {
  const int r = rowCount();
  std::vector<double> rhs(r);
  for (int i = 0; i < r; ++i) rhs[i] = rows_[i].rhs;
  for (int j = 0; j < varCount(); ++j) {
    if (status_[j] == VarStatus::Basic) continue;
    placeNonbasic(j);
    if (x_[j] == 0.0) continue;
    if (j < n_) {
      for (const auto& [i, a] : cols_[j]) rhs[i] -= a * x_[j];
    } else {
      rhs[j - n_] -= x_[j];
    }
  }
  for (int k = 0; k < r; ++k) {
    const double* row = &binv_[static_cast<std::size_t>(k) * r];
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += row[i] * rhs[i];
    x_[head_[k]] = s;
  }
}

void LinearProgram::columnTimesInverse(int var, std::vector<double>& out) const {
  const int r = rowCount();
  out.assign(r, 0.0);
  if (var < n_) {
    for (const auto& [i, a] : cols_[var])
      for (int k = 0; k < r; ++k) out[k] += binv_[static_cast<std::size_t>(k) * r + i] * a;
  } else {
    const int i = var - n_;
    for (int k = 0; k < r; ++k) out[k] = binv_[static_cast<std::size_t>(k) * r + i];
  }
}

double LinearProgram::dotColumn(const std::vector<double>& y, int var) const {
  if (var >= n_) return y[var - n_];
  double s = 0.0;
  for (const auto& [i, a] : cols_[var]) s += y[i] * a;
  return s;
}

Solution LinearProgram::addRowsAndResolve(std::span<const Row> rows) {
  for (const Row& row : rows) addRow(row);
  return solve();
}

Solution LinearProgram::solve() {
  const int r = rowCount();
  const int total = varCount();
  if (!factorValid_ && !refactor()) {
    resetToSlackBasis();
    if (!refactor()) throw SolverError("slack basis is singular");
  }
  computePrimal();

  const int maxIterations = 20000 + 200 * (r + total);
  const int blandThreshold = 5 * (r + total);
  int degenerateRun = 0;
  bool bland = false;
  int sinceRefactor = 0;
  bool verified = false;

  std::vector<double> cb(r), y(r), alpha;
  Solution sol;

  for (int iter = 0; iter < maxIterations; ++iter) {
    if (sinceRefactor >= kRefactorInterval) {
      if (!refactor()) {
        resetToSlackBasis();
        if (!refactor()) throw SolverError("slack basis is singular");
      }
      computePrimal();
      sinceRefactor = 0;
    }

    bool phase1 = false;
    for (int k = 0; k < r; ++k) {
      const int v = head_[k];
      if (x_[v] < lo_[v] - kFeasibilityTol) {
        cb[k] = -1.0;
        phase1 = true;
      } else if (x_[v] > hi_[v] + kFeasibilityTol) {
        cb[k] = 1.0;
        phase1 = true;
      } else {
        cb[k] = 0.0;
      }
    }
    if (!phase1)
      for (int k = 0; k < r; ++k) cb[k] = head_[k] < n_ ? cost_[head_[k]] : 0.0;

    std::fill(y.begin(), y.end(), 0.0);
    for (int k = 0; k < r; ++k) {
      if (cb[k] == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(k) * r];
      for (int i = 0; i < r; ++i) y[i] += cb[k] * row[i];
    }

    // Pricing.
    int entering = -1;
    double best = 0.0;
    for (int j = 0; j < total; ++j) {
      if (status_[j] == VarStatus::Basic || hi_[j] <= lo_[j]) continue;
      const double cj = phase1 || j >= n_ ? 0.0 : cost_[j];
      const double d = cj - dotColumn(y, j);
      const bool improving = (status_[j] == VarStatus::AtLower && d < -kDualTol) ||
                             (status_[j] == VarStatus::AtUpper && d > kDualTol);
      if (!improving) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
      }
    }

    if (entering < 0) {
      if (!verified && sinceRefactor > 0) {
        // Confirm the verdict on a fresh factorization.
        verified = true;
        sinceRefactor = kRefactorInterval;
        continue;
      }
      sol.iterations = iter;
      if (phase1) {
        sol.status = Status::Infeasible;
        return sol;
      }
      sol.status = Status::Optimal;
      sol.x.assign(x_.begin(), x_.begin() + n_);
      sol.objective = 0.0;
      for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * x_[j];
      sol.duals = y;
      return sol;
    }
    verified = false;

    const double dir = status_[entering] == VarStatus::AtLower ? 1.0 : -1.0;
    columnTimesInverse(entering, alpha);

    // Ratio test; the entering variable may also just flip to its other bound.
    double step = hi_[entering] - lo_[entering];
    int leavePos = -1;
    VarStatus leaveTo = VarStatus::AtLower;
    double leaveAlpha = 0.0;
    for (int k = 0; k < r; ++k) {
      if (std::abs(alpha[k]) <= kPivotTol) continue;
      const int v = head_[k];
      const double rate = -dir * alpha[k];
      double t = kInfinity;
      VarStatus to = VarStatus::AtLower;
      if (rate > 0.0) {
        if (x_[v] < lo_[v] - kFeasibilityTol) {
          t = (lo_[v] - x_[v]) / rate;
          to = VarStatus::AtLower;
        } else if (std::isfinite(hi_[v])) {
          t = std::max(0.0, hi_[v] - x_[v]) / rate;
          to = VarStatus::AtUpper;
        }
      } else {
        if (x_[v] > hi_[v] + kFeasibilityTol) {
          t = (x_[v] - hi_[v]) / -rate;
          to = VarStatus::AtUpper;
        } else if (std::isfinite(lo_[v])) {
          t = std::max(0.0, x_[v] - lo_[v]) / -rate;
          to = VarStatus::AtLower;
        }
      }
      if (!std::isfinite(t)) continue;
      bool take = false;
      if (t < step - 1e-12) {
        take = true;
      } else if (t <= step + 1e-12 && leavePos >= 0) {
        take = bland ? v < head_[leavePos] : std::abs(alpha[k]) > std::abs(leaveAlpha);
      }
      if (take) {
        step = t;
        leavePos = k;
        leaveTo = to;
        leaveAlpha = alpha[k];
      }
    }
    if (!std::isfinite(step)) throw SolverError("LP is unbounded");

    x_[entering] += dir * step;
    for (int k = 0; k < r; ++k)
      if (alpha[k] != 0.0) x_[head_[k]] -= dir * alpha[k] * step;

    if (leavePos < 0) {
      status_[entering] =
          status_[entering] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
      placeNonbasic(entering);
    } else {
      const int leaving = head_[leavePos];
      status_[leaving] = leaveTo;
      x_[leaving] = leaveTo == VarStatus::AtLower ? lo_[leaving] : hi_[leaving];
      head_[leavePos] = entering;
      status_[entering] = VarStatus::Basic;
      double* prow = &binv_[static_cast<std::size_t>(leavePos) * r];
      const double p = alpha[leavePos];
      for (int i = 0; i < r; ++i) prow[i] /= p;
      for (int k = 0; k < r; ++k) {
        if (k == leavePos || alpha[k] == 0.0) continue;
        double* row = &binv_[static_cast<std::size_t>(k) * r];
        const double f = alpha[k];
        for (int i = 0; i < r; ++i) row[i] -= f * prow[i];
      }
      ++sinceRefactor;
    }

    if (step < kDegenerateStep) {
      if (++degenerateRun > blandThreshold) bland = true;
    } else {
      degenerateRun = 0;
    }
  }
  throw SolverError("simplex iteration limit reached");
}

double LinearProgram::dualObjective(const Solution& sol) const {
  if (sol.status != Status::Optimal) return -kInfinity;
  const auto& y = sol.duals;
  double value = 0.0;
  for (int i = 0; i < rowCount(); ++i) value += y[i] * rows_[i].rhs;
  for (int j = 0; j < varCount(); ++j) {
    const double cj = j < n_ ? cost_[j] : 0.0;
    const double d = cj - dotColumn(y, j);
    if (d > 1e-9) {
      if (!std::isfinite(lo_[j])) return -kInfinity;
      value += d * lo_[j];
    } else if (d < -1e-9) {
      if (!std::isfinite(hi_[j])) return -kInfinity;
      value += d * hi_[j];
    }
  }
  return value;
}

}  // namespace aopc::lp
