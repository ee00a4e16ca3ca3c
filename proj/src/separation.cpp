#include "aopc/separation.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <set>

#include "aopc/errors.hpp"

namespace aopc {

namespace {

struct Scored {
  double violation;
  LinearRow row;
};

// Most violated first; ties by coefficient pattern so results do not depend
// on discovery order.
std::vector<LinearRow> topRows(std::vector<Scored> scored, int limit) {
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.row.coeffs != b.row.coeffs) return a.row.coeffs < b.row.coeffs;
    return a.row.zCoeff < b.row.zCoeff;
  });
  if (static_cast<int>(scored.size()) > limit) scored.resize(limit);
  std::vector<LinearRow> out;
  out.reserve(scored.size());
  for (auto& s : scored) out.push_back(std::move(s.row));
  return out;
}

VertexPath canonicalRotation(VertexPath cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

bool contains(const VertexPath& p, int v) { return std::find(p.begin(), p.end(), v) != p.end(); }

}  // namespace

std::vector<LinearRow> separateCycle(const BidirectedDigraph& d, const ModelPoint& point,
                                     const SeparationConfig& cfg) {
  const int n = d.vertexCount();
  std::vector<double> length(d.arcCount());
  for (int a = 0; a < d.arcCount(); ++a) length[a] = std::max(0.0, 1.0 - point.w.at(a));

  std::vector<Scored> found;
  for (int e = 0; e < d.base().edgeCount(); ++e) {
    LinearRow row = buildRowCycle(d, {d.tail(2 * e), d.head(2 * e)});
    const double viol = row.violation(point);
    if (viol > cfg.violationTol) found.push_back({viol, std::move(row)});
  }

  // Longer cycles: for each closing arc (i, s), a shortest s -> i path that
  // avoids the arc (s, i). Any violated cycle through (i, s) bounds it.
  std::set<VertexPath> seen;
  std::vector<double> dist(n);
  std::vector<int> parentArc(n);
  using Item = std::pair<double, int>;
  for (int closing = 0; closing < d.arcCount(); ++closing) {
    const int i = d.tail(closing), source = d.head(closing);
    const int banned = BidirectedDigraph::reverseOf(closing);
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(parentArc.begin(), parentArc.end(), -1);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [dv, v] = heap.top();
      heap.pop();
      if (dv > dist[v]) continue;
      if (v == i) break;
      for (int a : d.outArcs(v)) {
        if (a == banned) continue;
        const int w = d.head(a);
        const double nd = dv + length[a];
        if (nd < dist[w]) {
          dist[w] = nd;
          parentArc[w] = a;
          heap.emplace(nd, w);
        }
      }
    }
    if (dist[i] + length[closing] >= 1.0 - cfg.violationTol) continue;
    VertexPath cyc;
    for (int v = i; v != source; v = d.tail(parentArc[v])) cyc.push_back(v);
    cyc.push_back(source);
    std::reverse(cyc.begin(), cyc.end());
    cyc = canonicalRotation(std::move(cyc));
    if (!seen.insert(cyc).second) continue;
    LinearRow row = buildRowCycle(d, cyc);
    const double viol = row.violation(point);
    if (viol > cfg.violationTol) found.push_back({viol, std::move(row)});
  }
  return topRows(std::move(found), cfg.maxCutsPerClass);
}

std::vector<LinearRow> separatePathK(const BidirectedDigraph& d, const ModelPoint& point,
                                     int kappa, const SeparationConfig& cfg) {
  if (kappa < 1) throw InputError("kappa must be at least 1");
  const int n = d.vertexCount();
  std::vector<double> weight(d.arcCount());
  double maxWeight = 0.0;
  for (int a = 0; a < d.arcCount(); ++a) {
    weight[a] = std::clamp(point.w.at(a), 0.0, 1.0);
    maxWeight = std::max(maxWeight, weight[a]);
  }
  const double threshold = point.z + cfg.violationTol;

  std::vector<Scored> found;
  std::vector<char> visited(n, 0);
  VertexPath path;
  // A violated path that can still be extended is dominated by its
  // extensions (weights are nonnegative), so only maximal ones are reported.
  auto extend = [&](auto&& self, int v, double load, int depth) -> void {
    bool extendable = false;
    if (depth < kappa) {
      for (int a : d.outArcs(v)) {
        if (visited[d.head(a)]) continue;
        extendable = true;
        break;
      }
    }
    if (load > threshold && !extendable && depth > 0) {
      LinearRow row = buildRowPath(d, path, kappa);
      found.push_back({row.violation(point), std::move(row)});
    }
    if (!extendable || load + (kappa - depth) * maxWeight <= threshold) return;
    for (int a : d.outArcs(v)) {
      const int w = d.head(a);
      if (visited[w]) continue;
      visited[w] = 1;
      path.push_back(w);
      self(self, w, load + weight[a], depth + 1);
      path.pop_back();
      visited[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    visited[s] = 1;
    extend(extend, s, 0.0, 0);
    visited[s] = 0;
  }
  return topRows(std::move(found), cfg.maxCutsPerClass);
}

std::vector<LinearRow> cycleZRows(const BidirectedDigraph& d, int kappa) {
  std::vector<LinearRow> rows;
  if (kappa + 1 > d.vertexCount()) return rows;
  for (const auto& c : enumerateCycles(d, kappa + 1))
    if (static_cast<int>(c.size()) == kappa + 1) rows.push_back(buildRowCycleZ(d, c, kappa));
  return rows;
}

std::vector<LinearRow> pathKm1Rows(const BidirectedDigraph& d, int kappa) {
  std::vector<LinearRow> rows;
  if (kappa < 2 || kappa > d.vertexCount() - 1) return rows;
  const auto& g = d.base();
  for (const auto& p : enumeratePathsK(d, kappa - 1)) {
    for (int u : g.neighbors(p.front())) {
      if (contains(p, u)) continue;
      const bool apex =
          std::all_of(p.begin(), p.end(), [&](int v) { return g.adjacent(u, v); });
      if (apex) rows.push_back(buildRowPathKm1(d, p, u, kappa));
    }
  }
  return rows;
}

std::vector<LinearRow> pathKm2Rows(const BidirectedDigraph& d, int kappa) {
  std::vector<LinearRow> rows;
  if (kappa < 3 || kappa > d.vertexCount() - 1) return rows;
  const auto& g = d.base();
  for (const auto& p : enumeratePathsK(d, kappa - 2)) {
    for (int u : g.neighbors(p.front())) {
      if (contains(p, u) || !g.adjacent(u, p.back())) continue;
      for (int r : g.neighbors(u))
        if (!contains(p, r)) rows.push_back(buildRowPathKm2(d, p, u, r, kappa));
    }
  }
  return rows;
}

std::vector<LinearRow> cycleArcsRows(const BidirectedDigraph& d, int kappa) {
  std::vector<LinearRow> rows;
  if (kappa < 2 || kappa > d.vertexCount()) return rows;
  const auto& g = d.base();
  for (const auto& c : enumerateCycles(d, kappa)) {
    if (static_cast<int>(c.size()) != kappa) continue;
    std::vector<std::vector<int>> options(c.size());
    bool possible = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (int r : g.neighbors(c[k]))
        if (!contains(c, r)) options[k].push_back(r);
      possible = possible && !options[k].empty();
    }
    if (!possible) continue;
    std::vector<int> pick(c.size(), 0), pendants(c.size());
    while (true) {
      for (std::size_t k = 0; k < c.size(); ++k) pendants[k] = options[k][pick[k]];
      rows.push_back(buildRowCycleArcs(d, c, pendants, PendantDirection::Inbound, kappa));
      rows.push_back(buildRowCycleArcs(d, c, pendants, PendantDirection::Outbound, kappa));
      std::size_t k = 0;
      while (k < c.size() && ++pick[k] == static_cast<int>(options[k].size())) pick[k++] = 0;
      if (k == c.size()) break;
    }
  }
  return rows;
}

std::vector<LinearRow> adjacentPathsRows(const BidirectedDigraph& d, int kappa) {
  std::vector<LinearRow> rows;
  if (kappa < 2 || kappa > d.vertexCount() - 1) return rows;
  const auto& g = d.base();
  const auto paths = enumeratePathsK(d, kappa);  // lexicographic, so shared prefixes are adjacent
  for (std::size_t a = 0; a < paths.size(); ++a) {
    const auto& pI = paths[a];
    for (std::size_t b = a + 1; b < paths.size(); ++b) {
      const auto& pII = paths[b];
      if (pI[0] != pII[0] || pI[1] != pII[1]) break;
      int shared = 2;
      while (shared <= kappa && pI[shared] == pII[shared]) ++shared;
      if (shared > kappa) continue;
      // Diverging tails must stay vertex-disjoint from the other path.
      bool disjoint = true;
      for (int k = shared; k <= kappa && disjoint; ++k) disjoint = !contains(pI, pII[k]);
      if (!disjoint) continue;
      for (int rung = shared + 1; rung <= kappa + 1; ++rung) {
        if (!g.adjacent(pI[rung - 1], pII[rung - 1])) continue;
        rows.push_back(buildRowAdjacentPaths(d, pI, pII, shared, rung, false, kappa));
        rows.push_back(buildRowAdjacentPaths(d, pI, pII, shared, rung, true, kappa));
      }
    }
  }
  return rows;
}

namespace {

constexpr RowClass kTemplateClasses[] = {RowClass::CycleZ, RowClass::PathKm1, RowClass::PathKm2,
                                         RowClass::CycleArcs, RowClass::AdjacentPaths};

}  // namespace

TemplateCatalog::TemplateCatalog(const BidirectedDigraph& d, int kappa,
                                 const SeparationConfig& cfg)
    : rows_(kRowClassCount), sampled_(kRowClassCount, false) {
  std::mt19937_64 rng(cfg.seed);
  for (RowClass c : kTemplateClasses) {
    std::vector<LinearRow> all;
    switch (c) {
      case RowClass::CycleZ: all = cycleZRows(d, kappa); break;
      case RowClass::PathKm1: all = pathKm1Rows(d, kappa); break;
      case RowClass::PathKm2: all = pathKm2Rows(d, kappa); break;
      case RowClass::CycleArcs: all = cycleArcsRows(d, kappa); break;
      case RowClass::AdjacentPaths: all = adjacentPathsRows(d, kappa); break;
      default: break;
    }
    const auto k = static_cast<std::size_t>(c);
    if (all.size() > cfg.templateCap) {
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(cfg.templateCap);
      sampled_[k] = true;
    }
    rows_[k] = std::move(all);
  }
}

const std::vector<LinearRow>& TemplateCatalog::rows(RowClass c) const {
  return rows_.at(static_cast<std::size_t>(c));
}

bool TemplateCatalog::sampled(RowClass c) const { return sampled_.at(static_cast<std::size_t>(c)); }

std::size_t TemplateCatalog::totalRows() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::vector<LinearRow> separateTemplates(const TemplateCatalog& catalog, const ModelPoint& point,
                                         const SeparationConfig& cfg) {
  std::vector<LinearRow> out;
  for (RowClass c : kTemplateClasses) {
    std::vector<Scored> found;
    for (const LinearRow& row : catalog.rows(c)) {
      const double viol = row.violation(point);
      if (viol > cfg.violationTol) found.push_back({viol, row});
    }
    for (auto& row : topRows(std::move(found), cfg.maxCutsPerClass)) out.push_back(std::move(row));
  }
  return out;
}

std::vector<LinearRow> separateTemplateClasses(const BidirectedDigraph& d,
                                               const ModelPoint& point, int kappa,
                                               const SeparationConfig& cfg) {
  return separateTemplates(TemplateCatalog(d, kappa, cfg), point, cfg);
}

}  // namespace aopc
