#include "aopc/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "aopc/errors.hpp"

namespace aopc {

namespace {

constexpr std::array<std::string_view, kRowClassCount> kClassNames = {
    "edge-pair",  "cycle",          "path",        "cycle-z", "path-km1", "path-km2",
    "cycle-arcs", "adjacent-paths", "gadget-side", "bound",   "no-good",
};

// Elementary: no repeated vertex and consecutive vertices adjacent.
void requireElementary(const BidirectedDigraph& d, const VertexPath& p, const char* what) {
  const int n = d.vertexCount();
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n) throw InputError(std::string(what) + ": vertex out of range");
    if (seen[v]) throw InputError(std::string(what) + ": repeated vertex");
    seen[v] = 1;
  }
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (d.arcIndex(p[k], p[k + 1]) < 0)
      throw InputError(std::string(what) + ": consecutive vertices not adjacent");
}

bool onPath(const VertexPath& p, int v) { return std::find(p.begin(), p.end(), v) != p.end(); }

LinearRow unitRow(std::span<const int> arcs, double zCoeff, double rhs, RowClass tag) {
  LinearRow row;
  for (int a : arcs) row.coeffs.emplace_back(a, 1.0);
  row.zCoeff = zCoeff;
  row.rhs = rhs;
  row.tag = tag;
  row.canonicalize();
  return row;
}

void addBothDirections(const BidirectedDigraph& d, LinearRow& row, int u, int v, double c) {
  const int a = d.arcIndex(u, v);
  if (a < 0) throw InputError("missing edge [" + std::to_string(u) + "," + std::to_string(v) + "]");
  row.coeffs.emplace_back(a, c);
  row.coeffs.emplace_back(BidirectedDigraph::reverseOf(a), c);
}

}  // namespace

std::string_view rowClassName(RowClass c) { return kClassNames.at(static_cast<int>(c)); }

std::optional<RowClass> rowClassFromName(std::string_view name) {
  for (int k = 0; k < kRowClassCount; ++k)
    if (kClassNames[k] == name) return static_cast<RowClass>(k);
  return std::nullopt;
}

ModelPoint ModelPoint::fromArcSet(const ArcSet& arcs, double z) {
  ModelPoint p = zeros(arcs.universeSize());
  for (int a : arcs.arcs()) p.w[a] = 1.0;
  p.z = z;
  return p;
}

bool ModelPoint::isIntegral(double tol) const {
  return std::all_of(w.begin(), w.end(),
                     [tol](double x) { return std::abs(x - std::round(x)) <= tol; });
}

ArcSet ModelPoint::support(double tol) const {
  ArcSet s(static_cast<int>(w.size()));
  for (std::size_t a = 0; a < w.size(); ++a)
    if (w[a] > 1.0 - tol) s.insert(static_cast<int>(a));
  return s;
}

double LinearRow::lhs(const ModelPoint& p) const {
  double sum = zCoeff * p.z;
  for (const auto& [a, c] : coeffs) sum += c * p.w.at(a);
  return sum;
}

double LinearRow::violation(const ModelPoint& p) const {
  const double diff = lhs(p) - rhs;
  return sense == Sense::Equal ? std::abs(diff) : diff;
}

double LinearRow::coefficient(int arc) const {
  auto it = std::lower_bound(coeffs.begin(), coeffs.end(), std::pair<int, double>{arc, -HUGE_VAL});
  return it != coeffs.end() && it->first == arc ? it->second : 0.0;
}

LinearRow LinearRow::reversed() const {
  LinearRow out = *this;
  for (auto& [a, c] : out.coeffs) a = BidirectedDigraph::reverseOf(a);
  out.canonicalize();
  return out;
}

void LinearRow::canonicalize() {
  std::sort(coeffs.begin(), coeffs.end());
  std::vector<std::pair<int, double>> merged;
  for (const auto& [a, c] : coeffs) {
    if (!merged.empty() && merged.back().first == a)
      merged.back().second += c;
    else
      merged.emplace_back(a, c);
  }
  std::erase_if(merged, [](const auto& ac) { return ac.second == 0.0; });
  coeffs = std::move(merged);
}

std::size_t LinearRow::hash() const {
  std::size_t h = std::hash<double>{}(zCoeff) ^ (std::hash<double>{}(rhs) << 1) ^
                  static_cast<std::size_t>(sense);
  for (const auto& [a, c] : coeffs)
    h = h * 1000003u ^ (std::hash<int>{}(a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)) ^
        std::hash<double>{}(c);
  return h;
}

bool LinearRow::sameInequality(const LinearRow& o) const {
  return coeffs == o.coeffs && zCoeff == o.zCoeff && rhs == o.rhs && sense == o.sense;
}

void ModelConfig::validate() const {
  if (kappa < 1) throw InputError("kappa must be at least 1");
  if (zFixed && (*zFixed < 0.0 || *zFixed > kappa))
    throw InputError("fixed z must lie in [0, kappa]");
}

bool ModelConfig::edgeRequired(int edge) const {
  return variant == Variant::AO ||
         std::find(requiredEdges.begin(), requiredEdges.end(), edge) != requiredEdges.end();
}

LinearRow buildRowEdgePair(const BidirectedDigraph& d, int edge, Variant variant) {
  if (edge < 0 || edge >= d.base().edgeCount()) throw InputError("edge index out of range");
  const int arcs[] = {2 * edge, 2 * edge + 1};
  LinearRow row = unitRow(arcs, 0.0, 1.0, RowClass::EdgePair);
  row.sense = variant == Variant::AO ? Sense::Equal : Sense::LessEqual;
  return row;
}

LinearRow buildRowCycle(const BidirectedDigraph& d, const VertexPath& cycle) {
  requireElementary(d, cycle, "cycle");
  const auto arcs = cycleArcs(d, cycle);
  return unitRow(arcs, 0.0, static_cast<double>(arcs.size()) - 1.0, RowClass::Cycle);
}

LinearRow buildRowPath(const BidirectedDigraph& d, const VertexPath& path, int kappa) {
  requireElementary(d, path, "path");
  const int len = static_cast<int>(path.size()) - 1;
  if (len < 1 || len > kappa)
    throw InputError("path row needs between 1 and kappa arcs, got " + std::to_string(len));
  return unitRow(pathArcs(d, path), -1.0, 0.0, RowClass::Path);
}

LinearRow buildRowCycleZ(const BidirectedDigraph& d, const VertexPath& cycle, int kappa) {
  requireElementary(d, cycle, "cycle");
  if (static_cast<int>(cycle.size()) != kappa + 1)
    throw InputError("cycle-z row needs a cycle with kappa+1 arcs");
  return unitRow(cycleArcs(d, cycle), -1.0, 0.0, RowClass::CycleZ);
}

LinearRow buildRowPathKm1(const BidirectedDigraph& d, const VertexPath& path, int apex,
                          int kappa) {
  if (kappa < 2) throw InputError("path-(kappa-1) row needs kappa >= 2");
  requireElementary(d, path, "path");
  if (static_cast<int>(path.size()) != kappa)
    throw InputError("path-(kappa-1) row needs a path with kappa-1 arcs");
  if (apex < 0 || apex >= d.vertexCount() || onPath(path, apex))
    throw InputError("apex must be a vertex off the path");
  LinearRow row;
  for (int a : pathArcs(d, path)) row.coeffs.emplace_back(a, 1.0);
  for (int v : path) addBothDirections(d, row, apex, v, 1.0);
  row.zCoeff = -1.0;
  row.rhs = kappa - 1;
  row.tag = RowClass::PathKm1;
  row.canonicalize();
  return row;
}

LinearRow buildRowPathKm2(const BidirectedDigraph& d, const VertexPath& path, int u, int r,
                          int kappa) {
  if (kappa < 3) throw InputError("path-(kappa-2) row needs kappa >= 3");
  requireElementary(d, path, "path");
  if (static_cast<int>(path.size()) != kappa - 1)
    throw InputError("path-(kappa-2) row needs a path with kappa-2 arcs");
  const int n = d.vertexCount();
  if (u < 0 || u >= n || r < 0 || r >= n || u == r || onPath(path, u) || onPath(path, r))
    throw InputError("u and r must be distinct vertices off the path");
  if (!d.base().adjacent(path.front(), u) || !d.base().adjacent(path.back(), u))
    throw InputError("u must be adjacent to both path ends");
  LinearRow row;
  for (int a : pathArcs(d, path)) row.coeffs.emplace_back(a, 1.0);
  addBothDirections(d, row, u, r, 1.0);
  row.zCoeff = -1.0;
  row.tag = RowClass::PathKm2;
  row.canonicalize();
  return row;
}

LinearRow buildRowCycleArcs(const BidirectedDigraph& d, const VertexPath& cycle,
                            std::span<const int> pendants, PendantDirection direction,
                            int kappa) {
  requireElementary(d, cycle, "cycle");
  if (static_cast<int>(cycle.size()) != kappa)
    throw InputError("cycle-arcs row needs a cycle with kappa arcs");
  if (pendants.size() != cycle.size())
    throw InputError("cycle-arcs row needs one pendant per cycle vertex");
  const double half = kappa / 2;
  LinearRow row;
  for (int a : cycleArcs(d, cycle)) {
    row.coeffs.emplace_back(a, half);
    row.coeffs.emplace_back(BidirectedDigraph::reverseOf(a), 1.0);
  }
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const int r = pendants[k];
    if (r < 0 || r >= d.vertexCount() || onPath(cycle, r))
      throw InputError("pendant endpoints must be off the cycle");
    const int a = direction == PendantDirection::Inbound ? d.arcIndex(r, cycle[k])
                                                         : d.arcIndex(cycle[k], r);
    if (a < 0) throw InputError("pendant endpoint not adjacent to its cycle vertex");
    row.coeffs.emplace_back(a, 1.0);
  }
  row.zCoeff = -half;
  row.rhs = kappa;
  row.tag = RowClass::CycleArcs;
  row.canonicalize();
  return row;
}

LinearRow buildRowAdjacentPaths(const BidirectedDigraph& d, const VertexPath& pI,
                                const VertexPath& pII, int shared, int rung, bool mirrored,
                                int kappa) {
  requireElementary(d, pI, "first path");
  requireElementary(d, pII, "second path");
  const int len = kappa + 1;
  if (static_cast<int>(pI.size()) != len || static_cast<int>(pII.size()) != len)
    throw InputError("adjacent paths need kappa arcs each");
  if (shared < 2 || shared > kappa) throw InputError("shared prefix must satisfy 1 < l <= kappa");
  for (int k = 0; k < shared; ++k)
    if (pI[k] != pII[k]) throw InputError("paths do not share the stated prefix");
  if (rung < shared + 1 || rung > kappa + 1) throw InputError("rung index out of range");
  const int x = pI[rung - 1], y = pII[rung - 1];
  if (x == y || !d.base().adjacent(x, y)) throw InputError("rung vertices must be adjacent");

  // 1-based arc k runs from v_k to v_{k+1}.
  auto arc = [&](const VertexPath& p, int k) { return d.arcIndex(p[k - 1], p[k]); };
  LinearRow row;
  row.coeffs.emplace_back(arc(pI, 1), 1.0);
  for (int k = 2; k < shared; ++k) row.coeffs.emplace_back(arc(pI, k), 2.0);
  for (int k = shared; k <= kappa; ++k) {
    row.coeffs.emplace_back(arc(pI, k), 1.0);
    row.coeffs.emplace_back(arc(pII, k), 1.0);
  }
  addBothDirections(d, row, x, y, 1.0);
  row.zCoeff = -2.0;
  row.tag = RowClass::AdjacentPaths;
  row.canonicalize();
  return mirrored ? row.reversed() : row;
}

LinearRow arcLowerBoundRow(int arc) {
  LinearRow row;
  row.coeffs = {{arc, -1.0}};
  row.tag = RowClass::Bound;
  return row;
}

LinearRow arcUpperBoundRow(int arc) {
  LinearRow row;
  row.coeffs = {{arc, 1.0}};
  row.rhs = 1.0;
  row.tag = RowClass::Bound;
  return row;
}

LinearRow zLowerBoundRow() {
  LinearRow row;
  row.zCoeff = -1.0;
  row.tag = RowClass::Bound;
  return row;
}

LinearRow zUpperBoundRow(int kappa) {
  LinearRow row;
  row.zCoeff = 1.0;
  row.rhs = kappa;
  row.tag = RowClass::Bound;
  return row;
}

LinearRow noGoodRow(const ArcSet& chosen) {
  LinearRow row;
  for (int a = 0; a < chosen.universeSize(); ++a)
    row.coeffs.emplace_back(a, chosen.contains(a) ? 1.0 : -1.0);
  row.rhs = chosen.size() - 1;
  row.tag = RowClass::NoGood;
  return row;
}

PathLoad maxPathLoad(const BidirectedDigraph& d, const ArcSet& b, int kappa) {
  const int n = d.vertexCount();
  PathLoad best;
  best.load = -1;
  std::vector<char> visited(n, 0);
  VertexPath path;
  auto extend = [&](auto&& self, int v, int load, int depth) -> void {
    if (load > best.load) {
      best.load = load;
      best.path = path;
    }
    if (depth == kappa || best.load == kappa) return;
    if (load + (kappa - depth) <= best.load) return;
    for (int a : d.outArcs(v)) {
      const int w = d.head(a);
      if (visited[w]) continue;
      visited[w] = 1;
      path.push_back(w);
      self(self, w, load + (b.contains(a) ? 1 : 0), depth + 1);
      path.pop_back();
      visited[w] = 0;
    }
  };
  for (int s = 0; s < n && best.load < kappa; ++s) {
    path.assign(1, s);
    visited[s] = 1;
    extend(extend, s, 0, 0);
    visited[s] = 0;
  }
  if (best.path.size() < 2) best.path.clear();
  best.load = std::max(best.load, 0);
  return best;
}

std::optional<VertexPath> findDirectedCycle(const BidirectedDigraph& d, const ArcSet& b) {
  const int n = d.vertexCount();
  std::vector<int> state(n, 0), parent(n, -1);  // 0 new, 1 on stack, 2 done
  std::optional<VertexPath> found;
  auto visit = [&](auto&& self, int v) -> void {
    state[v] = 1;
    for (int a : d.outArcs(v)) {
      if (found || !b.contains(a)) continue;
      const int w = d.head(a);
      if (state[w] == 1) {
        VertexPath cyc{v};
        for (int x = v; x != w; x = parent[x]) cyc.push_back(parent[x]);
        std::reverse(cyc.begin(), cyc.end());
        found = std::move(cyc);
        return;
      }
      if (state[w] == 0) {
        parent[w] = v;
        self(self, w);
      }
    }
    state[v] = 2;
  };
  for (int s = 0; s < n && !found; ++s)
    if (state[s] == 0) visit(visit, s);
  return found;
}

FeasibilityCheck checkIntegralFeasible(const BidirectedDigraph& d, const ModelConfig& cfg,
                                       const ModelPoint& point,
                                       std::span<const LinearRow> extraRows) {
  cfg.validate();
  constexpr double tol = 1e-6;
  if (static_cast<int>(point.w.size()) != d.arcCount())
    throw InputError("point dimension does not match the digraph");
  if (!point.isIntegral(tol)) throw InputError("integral feasibility check on a fractional point");
  for (int a = 0; a < d.arcCount(); ++a) {
    if (point.w[a] < -tol) return {false, arcLowerBoundRow(a)};
    if (point.w[a] > 1.0 + tol) return {false, arcUpperBoundRow(a)};
  }
  if (point.z < -tol) return {false, zLowerBoundRow()};
  if (point.z > cfg.kappa + tol) return {false, zUpperBoundRow(cfg.kappa)};
  if (cfg.zFixed && std::abs(point.z - *cfg.zFixed) > tol) {
    // Fixed z is a bound, not a row; report the bound it breaks.
    return {false, point.z < *cfg.zFixed ? zLowerBoundRow() : zUpperBoundRow(cfg.kappa)};
  }
  for (int e = 0; e < d.base().edgeCount(); ++e) {
    LinearRow row = buildRowEdgePair(d, e, cfg.edgeRequired(e) ? Variant::AO : Variant::AS);
    if (row.violation(point) > tol) return {false, std::move(row)};
  }
  const ArcSet b = point.support(tol);
  if (auto cyc = findDirectedCycle(d, b)) return {false, buildRowCycle(d, *cyc)};
  const PathLoad worst = maxPathLoad(d, b, cfg.kappa);
  if (worst.load > point.z + tol) return {false, buildRowPath(d, worst.path, cfg.kappa)};
  for (const LinearRow& row : extraRows)
    if (row.violation(point) > tol) return {false, row};
  return {true, std::nullopt};
}

bool CutPool::insert(LinearRow row) {
  row.canonicalize();
  const std::size_t h = row.hash();
  auto [lo, hi] = byHash_.equal_range(h);
  for (auto it = lo; it != hi; ++it)
    if (rows_[it->second].sameInequality(row)) return false;
  byHash_.emplace(h, rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

}  // namespace aopc
