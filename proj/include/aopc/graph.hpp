#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace aopc {

/// Ordered vertex sequence. For paths the arcs are (v[k], v[k+1]); for
/// cycles the closing arc (v.back(), v.front()) is implied.
using VertexPath = std::vector<int>;

struct Edge {
  int u = 0;
  int v = 0;
};

/// Simple undirected graph on vertices 0..n-1. Edges are normalized so that
/// u < v and keep their insertion index.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(int vertexCount, std::vector<Edge> edges);

  int vertexCount() const noexcept { return n_; }
  int edgeCount() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const int> neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

  /// Edge index of [u,v], or -1 when the vertices are not adjacent.
  int edgeIndex(int u, int v) const;
  bool adjacent(int u, int v) const { return edgeIndex(u, v) >= 0; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;    // sorted neighbor lists
  std::vector<std::vector<int>> incidentEdge_;  // parallel to adjacency_
};

/// The arc doubling D=(V,A) of an undirected graph. Arc 2e runs from the
/// smaller endpoint of edge e to the larger one, arc 2e+1 the other way, so
/// the reverse of arc a is a^1.
class BidirectedDigraph {
 public:
  BidirectedDigraph() = default;
  explicit BidirectedDigraph(UndirectedGraph base);

  const UndirectedGraph& base() const noexcept { return base_; }
  int vertexCount() const noexcept { return base_.vertexCount(); }
  int arcCount() const noexcept { return 2 * base_.edgeCount(); }

  int tail(int arc) const;
  int head(int arc) const;
  static constexpr int reverseOf(int arc) noexcept { return arc ^ 1; }
  static constexpr int edgeOf(int arc) noexcept { return arc >> 1; }
  /// True for the (smaller -> larger) direction of the edge.
  static constexpr bool isForward(int arc) noexcept { return (arc & 1) == 0; }

  /// Arc index of (u,v), or -1 when [u,v] is not an edge.
  int arcIndex(int u, int v) const;
  /// Outgoing arcs of v, ordered by head vertex.
  std::span<const int> outArcs(int v) const { return out_.at(v); }

 private:
  UndirectedGraph base_;
  std::vector<std::vector<int>> out_;
};

/// Subset of the arcs of a digraph, stored as a membership mask.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(int arcCount) : mask_(static_cast<std::size_t>(arcCount), 0) {}
  ArcSet(int arcCount, std::span<const int> arcs);

  int universeSize() const noexcept { return static_cast<int>(mask_.size()); }
  bool contains(int arc) const { return mask_.at(arc) != 0; }
  void insert(int arc) { mask_.at(arc) = 1; }
  void erase(int arc) { mask_.at(arc) = 0; }
  int size() const noexcept;
  std::vector<int> arcs() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  std::vector<std::uint8_t> mask_;
};

/// One direction per edge; forward[e] means the arc 2e is chosen.
struct Orientation {
  std::vector<bool> forward;

  ArcSet toArcSet() const;
  static Orientation fromArcSet(const BidirectedDigraph& d, const ArcSet& arcs);
};

bool isAcyclic(const BidirectedDigraph& d, const ArcSet& b);

/// Number of arcs on a longest directed path of D[b]. Throws
/// ContractViolation when b is cyclic.
int dagLongestPath(const BidirectedDigraph& d, const ArcSet& b);

/// For each vertex, the number of arcs on a longest directed path of D[b]
/// ending there.
std::vector<int> longestPathEndingAt(const BidirectedDigraph& d, const ArcSet& b);

/// Layers V1..Vk of repeated in-degree-zero removal. Each layer is sorted.
std::vector<std::vector<int>> sourceDecomposition(const BidirectedDigraph& d,
                                                  const ArcSet& b);

/// All directed elementary cycles of D with 2..maxLen arcs. Each cycle is
/// listed once, rotated so that its smallest vertex comes first.
std::vector<VertexPath> enumerateCycles(const BidirectedDigraph& d, int maxLen);

/// All elementary directed paths of D with exactly k arcs.
std::vector<VertexPath> enumeratePathsK(const BidirectedDigraph& d, int k);

/// Arc indices along a path (open) or a cycle (closed).
std::vector<int> pathArcs(const BidirectedDigraph& d, const VertexPath& path);
std::vector<int> cycleArcs(const BidirectedDigraph& d, const VertexPath& cycle);

/// Connected components, each as a sorted vertex list, ordered by smallest
/// vertex.
std::vector<std::vector<int>> connectedComponents(const UndirectedGraph& g);

/// Subgraph induced by `vertices`; vertex k of the result is vertices[k].
UndirectedGraph inducedSubgraph(const UndirectedGraph& g, std::span<const int> vertices);

/// Greedy (largest-degree-first) coloring; returns the color of each vertex.
std::vector<int> greedyColoring(const UndirectedGraph& g);

/// A clique grown greedily from every start vertex, largest kept. Not
/// necessarily maximum; its size is a lower bound on the clique number.
std::vector<int> greedyClique(const UndirectedGraph& g);

/// Orientation from lower to higher label; ties broken by vertex index.
Orientation orientByLabels(const UndirectedGraph& g, std::span<const int> labels);

}  // namespace aopc
