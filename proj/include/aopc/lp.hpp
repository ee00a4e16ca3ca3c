#pragma once

#include <limits>
#include <span>
#include <vector>

namespace aopc::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTol = 1e-7;

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// Sparse row sum(value[k] * x[index[k]]) (sense) rhs.
struct Row {
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

enum class Status { Optimal, Infeasible };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;      // structural values
  double objective = 0.0;
  std::vector<double> duals;  // one per row; y = c_B B^-1
  int iterations = 0;
};

/// Minimization LP over columns with finite bounds, solved by a
/// bounded-variable primal simplex with an explicit dense basis inverse.
///
/// The basis survives between calls: adding rows or changing bounds and
/// calling solve() again warm-starts from the previous basis. Infeasibility
/// introduced by such edits is removed by a composite phase 1 that
/// minimizes the sum of bound violations of the basic variables.
///
/// Pricing is Dantzig's rule. After 5*(rows+cols) consecutive degenerate
/// pivots the solve switches to Bland's rule for the rest of the call.
class LinearProgram {
 public:
  explicit LinearProgram(int columns);

  int columnCount() const noexcept { return n_; }
  int rowCount() const noexcept { return static_cast<int>(rows_.size()); }

  void setObjective(std::span<const double> cost);
  /// Throws InputError when lo > hi or a bound is infinite.
  void setBounds(int column, double lo, double hi);
  double lower(int column) const { return lo_.at(column); }
  double upper(int column) const { return hi_.at(column); }

  int addRow(Row row);
  const Row& row(int i) const { return rows_.at(i); }

  /// Throws SolverError when the iteration budget is exhausted.
  Solution solve();
  Solution addRowsAndResolve(std::span<const Row> rows);

  /// Dual objective b'y + sum_j min over [lo_j, hi_j] of d_j x_j, or -inf when
  /// the reduced costs of `sol` are not dual feasible.
  double dualObjective(const Solution& sol) const;

 private:
  enum class VarStatus : unsigned char { Basic, AtLower, AtUpper };

  int varCount() const noexcept { return n_ + rowCount(); }
  void resetToSlackBasis();
  void placeNonbasic(int var);
  bool refactor();
  void computePrimal();
  void columnTimesInverse(int var, std::vector<double>& out) const;
  double dotColumn(const std::vector<double>& y, int var) const;

  int n_;
  std::vector<double> cost_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<int, double>>> cols_;  // structural columns
  std::vector<double> lo_, hi_, x_;                        // per variable
  std::vector<VarStatus> status_;
  std::vector<int> head_;  // basic variable of each basis position
  std::vector<double> binv_;
  bool factorValid_ = false;
};

}  // namespace aopc::lp
