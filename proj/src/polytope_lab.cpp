#include "aopc/polytope_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aopc/errors.hpp"
#include "aopc/exact_rank.hpp"
#include "aopc/separation.hpp"

namespace aopc::lab {

namespace {

constexpr double kTightTol = 1e-9;

void requireEdgeCap(const UndirectedGraph& g, int cap) {
  if (g.edgeCount() > cap)
    throw UnsupportedInstance("enumeration refused: " + std::to_string(g.edgeCount()) +
                              " edges exceed the cap of " + std::to_string(cap));
}

void requireVertexCap(const UndirectedGraph& g) {
  if (g.vertexCount() > kVertexCap)
    throw UnsupportedInstance("brute force refused: more than " + std::to_string(kVertexCap) +
                              " vertices");
}

}  // namespace

std::vector<ModelPoint> enumerateFeasiblePoints(const UndirectedGraph& g, int kappa,
                                                int edgeCap) {
  if (kappa < 1) throw InputError("kappa must be at least 1");
  requireEdgeCap(g, edgeCap);
  const BidirectedDigraph d(g);
  const int m = g.edgeCount();
  std::vector<ModelPoint> points;
  std::vector<int> state(m, 0);  // 0 absent, 1 forward, 2 backward
  while (true) {
    ArcSet b(d.arcCount());
    for (int e = 0; e < m; ++e)
      if (state[e] != 0) b.insert(2 * e + (state[e] - 1));
    if (isAcyclic(d, b)) {
      const int load = maxPathLoad(d, b, kappa).load;
      for (int z = load; z <= kappa; ++z) points.push_back(ModelPoint::fromArcSet(b, z));
    }
    int e = 0;
    while (e < m && ++state[e] == 3) state[e++] = 0;
    if (e == m) break;
  }
  return points;
}

int polytopeDimension(const UndirectedGraph& g, int kappa, int edgeCap) {
  const auto points = enumerateFeasiblePoints(g, kappa, edgeCap);
  return exact::affineDimension(points);
}

std::string_view faceClassName(FaceClass c) {
  switch (c) {
    case FaceClass::Invalid: return "invalid";
    case FaceClass::ValidNotFacet: return "valid-not-facet";
    case FaceClass::Facet: return "facet";
  }
  return "unknown";
}

FaceReport classifyFace(std::span<const ModelPoint> points, int polytopeDim,
                        const LinearRow& row) {
  FaceReport report;
  std::vector<ModelPoint> tight;
  for (const ModelPoint& p : points) {
    const double gap = row.lhs(p) - row.rhs;
    if (gap > kTightTol || (row.sense == Sense::Equal && gap < -kTightTol)) {
      report.cls = FaceClass::Invalid;
      report.counterexample = p;
      return report;
    }
    if (std::abs(gap) <= kTightTol) tight.push_back(p);
  }
  report.tightPoints = static_cast<int>(tight.size());
  report.tightDimension = tight.empty() ? -1 : exact::affineDimension(tight);
  report.cls = report.tightDimension == polytopeDim - 1 ? FaceClass::Facet
                                                        : FaceClass::ValidNotFacet;
  return report;
}

FaceReport classifyFace(const UndirectedGraph& g, int kappa, const LinearRow& row, int edgeCap) {
  const auto points = enumerateFeasiblePoints(g, kappa, edgeCap);
  return classifyFace(points, exact::affineDimension(points), row);
}

std::vector<LinearRow> rowsOfClass(const UndirectedGraph& g, int kappa, std::string_view cls) {
  const BidirectedDigraph d(g);
  std::vector<LinearRow> rows;
  if (cls == "bound") {
    for (int a = 0; a < d.arcCount(); ++a) {
      rows.push_back(arcLowerBoundRow(a));
      rows.push_back(arcUpperBoundRow(a));
    }
    rows.push_back(zLowerBoundRow());
    rows.push_back(zUpperBoundRow(kappa));
    return rows;
  }
  if (cls == "edge-pair") {
    for (int e = 0; e < g.edgeCount(); ++e) rows.push_back(buildRowEdgePair(d, e, Variant::AS));
    return rows;
  }
  if (cls == "cycle") {
    if (g.vertexCount() < 3) return rows;
    for (const auto& c : enumerateCycles(d, g.vertexCount()))
      if (c.size() >= 3) rows.push_back(buildRowCycle(d, c));
    return rows;
  }
  if (cls == "path") {
    for (const auto& p : enumeratePathsK(d, kappa)) rows.push_back(buildRowPath(d, p, kappa));
    return rows;
  }
  if (cls == "cycle-z") return cycleZRows(d, kappa);
  if (cls == "path-km1") return pathKm1Rows(d, kappa);
  if (cls == "path-km2") return pathKm2Rows(d, kappa);
  if (cls == "cycle-arcs") return cycleArcsRows(d, kappa);
  if (cls == "adjacent-paths") return adjacentPathsRows(d, kappa);
  throw InputError("unknown row class '" + std::string(cls) + "'");
}

int bruteForceMinDiameter(const UndirectedGraph& g) {
  requireVertexCap(g);
  const int n = g.vertexCount();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> position(n), longest(n);
  const int floor = g.edgeCount() > 0 ? 1 : 0;
  int best = std::max(n - 1, 0);
  do {
    // Longest path ending at each vertex, sweeping the ordering once.
    for (int k = 0; k < n; ++k) position[order[k]] = k;
    int worst = 0;
    for (int k = 0; k < n && worst < best; ++k) {
      const int v = order[k];
      int len = 0;
      for (int u : g.neighbors(v))
        if (position[u] < k) len = std::max(len, longest[u] + 1);
      longest[v] = len;
      worst = std::max(worst, len);
    }
    best = std::min(best, worst);
  } while (best > floor && std::next_permutation(order.begin(), order.end()));
  return best;
}

int bruteForceChromatic(const UndirectedGraph& g) {
  requireVertexCap(g);
  const int n = g.vertexCount();
  if (n == 0) return 0;
  std::vector<int> color(n, -1);
  // Colors are introduced in order, so vertex v may only open color max+1.
  auto colorable = [&](auto&& self, int v, int used, int k) -> bool {
    if (v == n) return true;
    for (int c = 0; c < std::min(used + 1, k); ++c) {
      bool clash = false;
      for (int u : g.neighbors(v)) clash = clash || color[u] == c;
      if (clash) continue;
      color[v] = c;
      if (self(self, v + 1, std::max(used, c + 1), k)) return true;
      color[v] = -1;
    }
    return false;
  };
  for (int k = 1;; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (colorable(colorable, 0, 0, k)) return k;
  }
}

int bruteForceAO(const UndirectedGraph& g, int kappa, int edgeCap) {
  if (kappa < 1) throw InputError("kappa must be at least 1");
  requireEdgeCap(g, edgeCap);
  const BidirectedDigraph d(g);
  const int m = g.edgeCount();
  int best = kappa;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    ArcSet b(d.arcCount());
    for (int e = 0; e < m; ++e) b.insert(2 * e + static_cast<int>((mask >> e) & 1));
    if (!isAcyclic(d, b)) continue;
    best = std::min(best, maxPathLoad(d, b, kappa).load);
  }
  return best;
}

std::optional<double> bruteForceFap(const fap::FapInstance& inst, int maxFreq) {
  inst.validate();
  if (inst.links > 6) throw UnsupportedInstance("brute force refused: more than 6 links");
  const int top = inst.spectrum ? std::min(maxFreq, *inst.spectrum) : maxFreq;
  std::optional<double> best;
  std::vector<int> f(inst.links, 0);
  while (true) {
    bool ok = true;
    for (int l = 0; l < inst.links && ok; ++l) ok = inst.allowed(l, f[l]);
    double cost = 0.0;
    for (const auto& p : inst.pairs) {
      if (!ok) break;
      if (std::abs(f[p.i] - f[p.j]) >= p.d) continue;
      if (p.cost && inst.spectrum)
        cost += *p.cost;
      else
        ok = false;
    }
    if (ok) {
      double value = cost;
      if (!inst.spectrum) value = f.empty() ? 0 : *std::max_element(f.begin(), f.end());
      if (!best || value < *best) best = value;
    }
    int l = 0;
    while (l < inst.links && ++f[l] > top) f[l++] = 0;
    if (l == inst.links) break;
  }
  return best;
}

}  // namespace aopc::lab
