#include "aopc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "aopc/errors.hpp"

namespace aopc {

UndirectedGraph::UndirectedGraph(int vertexCount, std::vector<Edge> edges)
    : n_(vertexCount), adjacency_(vertexCount), incidentEdge_(vertexCount) {
  if (vertexCount <= 0) throw InputError("graph needs at least one vertex");
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw InputError("edge endpoint out of range: [" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "]");
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    const int index = static_cast<int>(edges_.size());
    auto& nu = adjacency_[e.u];
    if (std::find(nu.begin(), nu.end(), e.v) != nu.end())
      throw InputError("parallel edge [" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "]");
    adjacency_[e.u].push_back(e.v);
    incidentEdge_[e.u].push_back(index);
    adjacency_[e.v].push_back(e.u);
    incidentEdge_[e.v].push_back(index);
    edges_.push_back(e);
  }
  for (int v = 0; v < n_; ++v) {
    std::vector<int> order(adjacency_[v].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return adjacency_[v][a] < adjacency_[v][b]; });
    std::vector<int> adj, inc;
    for (int k : order) {
      adj.push_back(adjacency_[v][k]);
      inc.push_back(incidentEdge_[v][k]);
    }
    adjacency_[v] = std::move(adj);
    incidentEdge_[v] = std::move(inc);
  }
}

int UndirectedGraph::edgeIndex(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return -1;
  const auto& adj = adjacency_[u];
  auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) return -1;
  return incidentEdge_[u][it - adj.begin()];
}

BidirectedDigraph::BidirectedDigraph(UndirectedGraph base)
    : base_(std::move(base)), out_(base_.vertexCount()) {
  for (int v = 0; v < base_.vertexCount(); ++v) {
    for (int w : base_.neighbors(v)) out_[v].push_back(arcIndex(v, w));
  }
}

int BidirectedDigraph::tail(int arc) const {
  const Edge& e = base_.edge(edgeOf(arc));
  return isForward(arc) ? e.u : e.v;
}

int BidirectedDigraph::head(int arc) const {
  const Edge& e = base_.edge(edgeOf(arc));
  return isForward(arc) ? e.v : e.u;
}

int BidirectedDigraph::arcIndex(int u, int v) const {
  const int e = base_.edgeIndex(u, v);
  if (e < 0) return -1;
  return u < v ? 2 * e : 2 * e + 1;
}

ArcSet::ArcSet(int arcCount, std::span<const int> arcs) : ArcSet(arcCount) {
  for (int a : arcs) {
    if (a < 0 || a >= arcCount) throw InputError("arc index out of range");
    mask_[a] = 1;
  }
}

int ArcSet::size() const noexcept {
  return static_cast<int>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

std::vector<int> ArcSet::arcs() const {
  std::vector<int> out;
  for (int a = 0; a < universeSize(); ++a)
    if (mask_[a]) out.push_back(a);
  return out;
}

ArcSet Orientation::toArcSet() const {
  ArcSet set(2 * static_cast<int>(forward.size()));
  for (std::size_t e = 0; e < forward.size(); ++e)
    set.insert(forward[e] ? 2 * static_cast<int>(e) : 2 * static_cast<int>(e) + 1);
  return set;
}

Orientation Orientation::fromArcSet(const BidirectedDigraph& d, const ArcSet& arcs) {
  Orientation o;
  o.forward.resize(d.base().edgeCount());
  for (int e = 0; e < d.base().edgeCount(); ++e) {
    const bool f = arcs.contains(2 * e);
    const bool b = arcs.contains(2 * e + 1);
    if (f == b) throw ContractViolation("arc set does not orient edge " + std::to_string(e));
    o.forward[e] = f;
  }
  return o;
}

namespace {

void checkUniverse(const BidirectedDigraph& d, const ArcSet& b) {
  if (b.universeSize() != d.arcCount())
    throw InputError("arc set does not match the digraph's arc count");
}

// Kahn peeling; returns the topological order, shorter than n when cyclic.
std::vector<int> topologicalOrder(const BidirectedDigraph& d, const ArcSet& b) {
  const int n = d.vertexCount();
  std::vector<int> indeg(n, 0);
  for (int a = 0; a < d.arcCount(); ++a)
    if (b.contains(a)) ++indeg[d.head(a)];
  std::vector<int> order;
  order.reserve(n);
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int a : d.outArcs(order[k])) {
      if (!b.contains(a)) continue;
      if (--indeg[d.head(a)] == 0) order.push_back(d.head(a));
    }
  }
  return order;
}

}  // namespace

bool isAcyclic(const BidirectedDigraph& d, const ArcSet& b) {
  checkUniverse(d, b);
  return static_cast<int>(topologicalOrder(d, b).size()) == d.vertexCount();
}

std::vector<int> longestPathEndingAt(const BidirectedDigraph& d, const ArcSet& b) {
  checkUniverse(d, b);
  const auto order = topologicalOrder(d, b);
  if (static_cast<int>(order.size()) != d.vertexCount())
    throw ContractViolation("longest path requested on a cyclic arc set");
  std::vector<int> dist(d.vertexCount(), 0);
  for (int v : order)
    for (int a : d.outArcs(v))
      if (b.contains(a)) dist[d.head(a)] = std::max(dist[d.head(a)], dist[v] + 1);
  return dist;
}

int dagLongestPath(const BidirectedDigraph& d, const ArcSet& b) {
  const auto dist = longestPathEndingAt(d, b);
  return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
}

std::vector<std::vector<int>> sourceDecomposition(const BidirectedDigraph& d,
                                                  const ArcSet& b) {
  checkUniverse(d, b);
  const int n = d.vertexCount();
  std::vector<int> indeg(n, 0);
  for (int a = 0; a < d.arcCount(); ++a)
    if (b.contains(a)) ++indeg[d.head(a)];
  std::vector<std::vector<int>> layers;
  std::vector<int> current;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) current.push_back(v);
  int placed = 0;
  while (!current.empty()) {
    placed += static_cast<int>(current.size());
    std::vector<int> next;
    for (int v : current)
      for (int a : d.outArcs(v))
        if (b.contains(a) && --indeg[d.head(a)] == 0) next.push_back(d.head(a));
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(current));
    current = std::move(next);
  }
  if (placed != n) throw ContractViolation("source decomposition of a cyclic arc set");
  return layers;
}

std::vector<VertexPath> enumerateCycles(const BidirectedDigraph& d, int maxLen) {
  if (maxLen < 2) throw InputError("maxLen must be at least 2");
  const int n = d.vertexCount();
  std::vector<VertexPath> cycles;
  std::vector<char> onPath(n, 0);
  VertexPath path;
  // Cycles are rooted at their smallest vertex; all other vertices are larger.
  auto extend = [&](auto&& self, int root, int v) -> void {
    for (int a : d.outArcs(v)) {
      const int w = d.head(a);
      if (w == root && path.size() >= 2) {
        cycles.push_back(path);
        continue;
      }
      if (w <= root || onPath[w] || static_cast<int>(path.size()) >= maxLen) continue;
      onPath[w] = 1;
      path.push_back(w);
      self(self, root, w);
      path.pop_back();
      onPath[w] = 0;
    }
  };
  for (int root = 0; root < n; ++root) {
    path.assign(1, root);
    onPath[root] = 1;
    extend(extend, root, root);
    onPath[root] = 0;
  }
  return cycles;
}

std::vector<VertexPath> enumeratePathsK(const BidirectedDigraph& d, int k) {
  if (k < 1) throw InputError("path length must be positive");
  const int n = d.vertexCount();
  std::vector<VertexPath> paths;
  if (k > n - 1) return paths;
  std::vector<char> onPath(n, 0);
  VertexPath path;
  auto extend = [&](auto&& self, int v) -> void {
    if (static_cast<int>(path.size()) == k + 1) {
      paths.push_back(path);
      return;
    }
    for (int a : d.outArcs(v)) {
      const int w = d.head(a);
      if (onPath[w]) continue;
      onPath[w] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      onPath[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    onPath[s] = 1;
    extend(extend, s);
    onPath[s] = 0;
  }
  return paths;
}

std::vector<int> pathArcs(const BidirectedDigraph& d, const VertexPath& path) {
  std::vector<int> arcs;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const int a = d.arcIndex(path[k], path[k + 1]);
    if (a < 0) throw InputError("consecutive path vertices are not adjacent");
    arcs.push_back(a);
  }
  return arcs;
}

std::vector<int> cycleArcs(const BidirectedDigraph& d, const VertexPath& cycle) {
  if (cycle.size() < 2) throw InputError("a cycle needs at least two vertices");
  auto arcs = pathArcs(d, cycle);
  const int closing = d.arcIndex(cycle.back(), cycle.front());
  if (closing < 0) throw InputError("cycle is not closed by an edge");
  arcs.push_back(closing);
  return arcs;
}

std::vector<std::vector<int>> connectedComponents(const UndirectedGraph& g) {
  const int n = g.vertexCount();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members{s};
    comp[s] = id;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int w : g.neighbors(members[k]))
        if (comp[w] < 0) {
          comp[w] = id;
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

UndirectedGraph inducedSubgraph(const UndirectedGraph& g, std::span<const int> vertices) {
  std::vector<int> local(g.vertexCount(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) local.at(vertices[k]) = static_cast<int>(k);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0) edges.push_back({local[e.u], local[e.v]});
  return UndirectedGraph(static_cast<int>(vertices.size()), std::move(edges));
}

std::vector<int> greedyColoring(const UndirectedGraph& g) {
  const int n = g.vertexCount();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> color(n, -1);
  for (int v : order) {
    std::vector<char> used(n + 1, 0);
    for (int w : g.neighbors(v))
      if (color[w] >= 0) used[color[w]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

std::vector<int> greedyClique(const UndirectedGraph& g) {
  const int n = g.vertexCount();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> best;
  for (int s : order) {
    if (g.degree(s) + 1 <= static_cast<int>(best.size())) break;
    std::vector<int> clique{s};
    for (int v : order)
      if (v != s && std::all_of(clique.begin(), clique.end(), [&](int u) { return g.adjacent(u, v); }))
        clique.push_back(v);
    if (clique.size() > best.size()) best = std::move(clique);
  }
  return best;
}

Orientation orientByLabels(const UndirectedGraph& g, std::span<const int> labels) {
  Orientation o;
  o.forward.resize(g.edgeCount());
  for (int e = 0; e < g.edgeCount(); ++e) {
    const Edge& ed = g.edge(e);
    const int lu = labels[ed.u], lv = labels[ed.v];
    o.forward[e] = lu != lv ? lu < lv : ed.u < ed.v;
  }
  return o;
}

}  // namespace aopc
