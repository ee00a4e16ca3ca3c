#include <doctest.h>

#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "aopc/errors.hpp"
#include "aopc/lp.hpp"
#include "aopc/model.hpp"
#include "aopc/named_graphs.hpp"
#include "aopc/separation.hpp"

using namespace aopc;
using lp::LinearProgram;
using lp::Row;
using lp::RowSense;

namespace {

struct DenseLp {
  int n = 0;
  std::vector<double> cost, lo, hi;
  std::vector<std::vector<double>> a;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
};

// Solve a square system by partial-pivot elimination; nullopt if singular.
std::optional<std::vector<double>> solveSquare(std::vector<std::vector<double>> m,
                                               std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= m[c][c];
  return b;
}

// Optimum by enumerating every basic solution (bounded LPs only).
std::optional<double> vertexOptimum(const DenseLp& p) {
  std::vector<std::vector<double>> ca;
  std::vector<double> cb;
  for (std::size_t r = 0; r < p.a.size(); ++r) {
    ca.push_back(p.a[r]);
    cb.push_back(p.rhs[r]);
  }
  for (int j = 0; j < p.n; ++j) {
    std::vector<double> e(p.n, 0.0);
    e[j] = 1.0;
    ca.push_back(e);
    cb.push_back(p.lo[j]);
    ca.push_back(e);
    cb.push_back(p.hi[j]);
  }
  const int total = static_cast<int>(ca.size());
  std::optional<double> best;
  std::vector<int> pick(p.n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == p.n) {
      std::vector<std::vector<double>> m;
      std::vector<double> b;
      for (int k : pick) {
        m.push_back(ca[k]);
        b.push_back(cb[k]);
      }
      auto x = solveSquare(m, b);
      if (!x) return;
      for (int j = 0; j < p.n; ++j)
        if ((*x)[j] < p.lo[j] - 1e-7 || (*x)[j] > p.hi[j] + 1e-7) return;
      for (std::size_t r = 0; r < p.a.size(); ++r) {
        double lhs = 0.0;
        for (int j = 0; j < p.n; ++j) lhs += p.a[r][j] * (*x)[j];
        if (p.sense[r] != RowSense::GreaterEqual && lhs > p.rhs[r] + 1e-7) return;
        if (p.sense[r] != RowSense::LessEqual && lhs < p.rhs[r] - 1e-7) return;
      }
      double obj = 0.0;
      for (int j = 0; j < p.n; ++j) obj += p.cost[j] * (*x)[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (int k = start; k < total; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

LinearProgram build(const DenseLp& p) {
  LinearProgram lp(p.n);
  lp.setObjective(p.cost);
  for (int j = 0; j < p.n; ++j) lp.setBounds(j, p.lo[j], p.hi[j]);
  for (std::size_t r = 0; r < p.a.size(); ++r) {
    Row row;
    for (int j = 0; j < p.n; ++j)
      if (p.a[r][j] != 0.0) {
        row.index.push_back(j);
        row.value.push_back(p.a[r][j]);
      }
    row.sense = p.sense[r];
    row.rhs = p.rhs[r];
    lp.addRow(row);
  }
  return lp;
}

DenseLp randomLp(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> coef(-3, 3);
  DenseLp p;
  p.n = n;
  for (int j = 0; j < n; ++j) {
    p.cost.push_back(coef(rng));
    const int a = coef(rng), b = coef(rng);
    p.lo.push_back(std::min(a, b));
    p.hi.push_back(std::max(a, b) + static_cast<int>(rng() % 2));
  }
  for (int r = 0; r < m; ++r) {
    std::vector<double> row(n);
    for (double& x : row) x = coef(rng);
    p.a.push_back(row);
    const auto s = rng() % 5;
    p.sense.push_back(s < 3 ? RowSense::LessEqual : s == 3 ? RowSense::GreaterEqual : RowSense::Equal);
    p.rhs.push_back(coef(rng));
  }
  return p;
}

Row toRow(const LinearRow& r, int zColumn) {
  Row out;
  for (auto [a, c] : r.coeffs) {
    out.index.push_back(a);
    out.value.push_back(c);
  }
  if (r.zCoeff != 0.0) {
    out.index.push_back(zColumn);
    out.value.push_back(r.zCoeff);
  }
  out.sense = r.sense == Sense::Equal ? RowSense::Equal : RowSense::LessEqual;
  out.rhs = r.rhs;
  return out;
}

// AO root relaxation of K3 with kappa = 2 over the given extra rows.
LinearProgram k3Root(bool withCycleZ) {
  const BidirectedDigraph d(graphs::complete(3));
  LinearProgram lp(d.arcCount() + 1);
  std::vector<double> cost(d.arcCount() + 1, 0.0);
  cost.back() = 1.0;
  lp.setObjective(cost);
  for (int a = 0; a < d.arcCount(); ++a) lp.setBounds(a, 0.0, 1.0);
  lp.setBounds(d.arcCount(), 0.0, 2.0);
  for (int e = 0; e < 3; ++e) lp.addRow(toRow(buildRowEdgePair(d, e, Variant::AO), 6));
  for (const auto& c : enumerateCycles(d, 3))
    if (c.size() == 3) lp.addRow(toRow(buildRowCycle(d, c), 6));
  for (const auto& p : enumeratePathsK(d, 2)) lp.addRow(toRow(buildRowPath(d, p, 2), 6));
  for (const auto& p : enumeratePathsK(d, 1)) lp.addRow(toRow(buildRowPath(d, p, 2), 6));
  if (withCycleZ)
    for (const auto& r : cycleZRows(d, 2)) lp.addRow(toRow(r, 6));
  return lp;
}

}  // namespace

TEST_CASE("trivial LPs") {
  LinearProgram a(1);
  a.setObjective(std::vector<double>{1.0});
  a.setBounds(0, 0.0, 2.0);
  auto s = a.solve();
  CHECK(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(0.0));

  LinearProgram b(1);
  b.setObjective(std::vector<double>{-1.0});
  b.setBounds(0, 0.0, 1.0);
  b.addRow({{0}, {1.0}, RowSense::LessEqual, 0.5});
  s = b.solve();
  CHECK(s.x[0] == doctest::Approx(0.5));
  CHECK(s.objective == doctest::Approx(-0.5));

  LinearProgram c(1);
  c.setBounds(0, 0.0, 1.0);
  c.addRow({{0}, {1.0}, RowSense::GreaterEqual, 2.0});
  CHECK(c.solve().status == lp::Status::Infeasible);

  CHECK_THROWS_AS(c.setBounds(0, 1.0, 0.0), InputError);
  CHECK_THROWS_AS(c.setBounds(0, 0.0, lp::kInfinity), InputError);
}

TEST_CASE("random small LPs agree with vertex enumeration") {
  std::mt19937_64 rng(3);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 4);
    const DenseLp p = randomLp(rng, n, m);
    LinearProgram lp = build(p);
    const auto sol = lp.solve();
    const auto ref = vertexOptimum(p);
    CHECK((sol.status == lp::Status::Optimal) == ref.has_value());
    if (!ref || sol.status != lp::Status::Optimal) continue;
    ++feasible;
    CHECK(sol.objective == doctest::Approx(*ref).epsilon(1e-7));
    // weak duality is tight at the optimum
    CHECK(lp.dualObjective(sol) == doctest::Approx(sol.objective).epsilon(1e-6));
  }
  CHECK(feasible > 100);
}

TEST_CASE("warm start matches solving from scratch") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    DenseLp full = randomLp(rng, n, 4);
    DenseLp head = full;
    head.a.resize(2);
    head.sense.resize(2);
    head.rhs.resize(2);
    LinearProgram warm = build(head);
    warm.solve();
    std::vector<Row> extra;
    for (int r = 2; r < 4; ++r) {
      Row row;
      for (int j = 0; j < n; ++j)
        if (full.a[r][j] != 0.0) {
          row.index.push_back(j);
          row.value.push_back(full.a[r][j]);
        }
      row.sense = full.sense[r];
      row.rhs = full.rhs[r];
      extra.push_back(row);
    }
    const auto a = warm.addRowsAndResolve(extra);
    LinearProgram cold = build(full);
    const auto b = cold.solve();
    CHECK(a.status == b.status);
    if (a.status == lp::Status::Optimal && b.status == lp::Status::Optimal)
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-7));

    // bound changes warm-start too
    if (b.status == lp::Status::Optimal) {
      cold.setBounds(0, full.lo[0], full.lo[0]);
      const auto c = cold.solve();
      full.hi[0] = full.lo[0];
      const auto ref = vertexOptimum(full);
      CHECK((c.status == lp::Status::Optimal) == ref.has_value());
      if (ref && c.status == lp::Status::Optimal)
        CHECK(c.objective == doctest::Approx(*ref).epsilon(1e-7));
    }
  }
}

TEST_CASE("adding rows: slack row, no rows, binding row") {
  LinearProgram lp = k3Root(false);
  const auto base = lp.solve();
  REQUIRE(base.status == lp::Status::Optimal);
  const auto same = lp.addRowsAndResolve({});
  CHECK(same.objective == doctest::Approx(base.objective));
  const Row slack{{6}, {1.0}, RowSense::LessEqual, 2.0};
  const Row rows[] = {slack};
  CHECK(lp.addRowsAndResolve(rows).objective == doctest::Approx(base.objective));

  // Both cycle-z rows together force 3 <= 2z.
  const BidirectedDigraph d(graphs::complete(3));
  std::vector<Row> cz;
  for (const auto& r : cycleZRows(d, 2)) cz.push_back(toRow(r, 6));
  const auto tighter = lp.addRowsAndResolve(cz);
  CHECK(tighter.objective > base.objective + 0.25);
}

TEST_CASE("K3 kappa=2 root relaxation") {
  // Edge equalities, cycle and path rows only: z = 1 (w = 1/2 meets every
  // path row with z = 1).
  LinearProgram plain = k3Root(false);
  const auto a = plain.solve();
  REQUIRE(a.status == lp::Status::Optimal);
  CHECK(a.objective == doctest::Approx(1.0));
  CHECK(plain.dualObjective(a) == doctest::Approx(1.0));

  // With the two cycle-z rows: 1.5, attained at w = 1/2.
  LinearProgram strong = k3Root(true);
  const auto b = strong.solve();
  REQUIRE(b.status == lp::Status::Optimal);
  CHECK(b.objective == doctest::Approx(1.5));
  CHECK(strong.dualObjective(b) == doctest::Approx(1.5));
  for (int e = 0; e < 3; ++e) CHECK(b.x[2 * e] + b.x[2 * e + 1] == doctest::Approx(1.0));
}

TEST_CASE("degenerate LP terminates") {
  // Many redundant rows through the optimum.
  LinearProgram lp(3);
  lp.setObjective(std::vector<double>{-1.0, -1.0, -1.0});
  for (int j = 0; j < 3; ++j) lp.setBounds(j, 0.0, 1.0);
  for (int k = 0; k < 30; ++k)
    lp.addRow({{0, 1, 2}, {1.0, 1.0 + k * 1e-3, 1.0}, RowSense::LessEqual, 1.0 + k * 1e-3 * 0.0});
  const auto s = lp.solve();
  CHECK(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(-1.0));
}
