#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aopc/graph.hpp"

namespace aopc {

/// A (w, z) vector over the 2m arc variables and the path-load bound z.
struct ModelPoint {
  std::vector<double> w;
  double z = 0.0;

  static ModelPoint zeros(int arcCount) { return {std::vector<double>(arcCount, 0.0), 0.0}; }
  static ModelPoint fromArcSet(const ArcSet& arcs, double z);
  bool isIntegral(double tol = 1e-6) const;
  /// Rounded support; requires isIntegral().
  ArcSet support(double tol = 1e-6) const;
};

/// Which template generated a row. The template fully determines the
/// coefficient pattern; the tag is carried for statistics and reporting.
enum class RowClass {
  EdgePair,
  Cycle,
  Path,
  CycleZ,
  PathKm1,
  PathKm2,
  CycleArcs,
  AdjacentPaths,
  GadgetSide,
  Bound,
  NoGood,
};

inline constexpr int kRowClassCount = 11;

std::string_view rowClassName(RowClass c);
/// Inverse of rowClassName; nullopt for unknown names.
std::optional<RowClass> rowClassFromName(std::string_view name);

enum class Sense { LessEqual, Equal };

/// sum(coeffs[a] * w[a]) + zCoeff * z  (<= | =)  rhs, with coeffs sorted by
/// arc index and free of zeros and duplicates.
struct LinearRow {
  std::vector<std::pair<int, double>> coeffs;
  double zCoeff = 0.0;
  double rhs = 0.0;
  Sense sense = Sense::LessEqual;
  RowClass tag = RowClass::Cycle;

  double lhs(const ModelPoint& p) const;
  /// Amount by which p violates the row; <= 0 when satisfied.
  double violation(const ModelPoint& p) const;
  double coefficient(int arc) const;
  /// Same row with every arc coefficient moved to the reverse arc.
  LinearRow reversed() const;

  /// Sort, merge and drop zero coefficients.
  void canonicalize();
  std::size_t hash() const;
  bool sameInequality(const LinearRow& other) const;
};

enum class Variant { AO, AS };

struct ModelConfig {
  int kappa = 1;
  Variant variant = Variant::AO;
  std::optional<double> zFixed;
  /// Under AS, edges listed here still carry the equality w_ij + w_ji = 1.
  std::vector<int> requiredEdges;

  void validate() const;
  bool edgeRequired(int edge) const;
};

enum class PendantDirection { Inbound, Outbound };

// Row templates. Each validates its structural preconditions and throws
// InputError when they do not hold.
LinearRow buildRowEdgePair(const BidirectedDigraph& d, int edge, Variant variant);
LinearRow buildRowCycle(const BidirectedDigraph& d, const VertexPath& cycle);
/// Path load bound sum(w on p) <= z for an elementary path with 1..kappa arcs.
LinearRow buildRowPath(const BidirectedDigraph& d, const VertexPath& path, int kappa);
LinearRow buildRowCycleZ(const BidirectedDigraph& d, const VertexPath& cycle, int kappa);
LinearRow buildRowPathKm1(const BidirectedDigraph& d, const VertexPath& path, int apex,
                          int kappa);
LinearRow buildRowPathKm2(const BidirectedDigraph& d, const VertexPath& path, int u, int r,
                          int kappa);
/// pendants[k] is the off-cycle endpoint r_k paired with cycle[k].
LinearRow buildRowCycleArcs(const BidirectedDigraph& d, const VertexPath& cycle,
                            std::span<const int> pendants, PendantDirection direction,
                            int kappa);
/// Paths share their first `shared` vertices; `rung` is the 1-based position
/// r of the edge [pI[r-1], pII[r-1]]. `mirrored` reverses every arc.
LinearRow buildRowAdjacentPaths(const BidirectedDigraph& d, const VertexPath& pI,
                                const VertexPath& pII, int shared, int rung, bool mirrored,
                                int kappa);

// Bound rows, written as <= rows so that they can be classified like cuts.
LinearRow arcLowerBoundRow(int arc);  // -w_a <= 0
LinearRow arcUpperBoundRow(int arc);  //  w_a <= 1
LinearRow zLowerBoundRow();           // -z <= 0
LinearRow zUpperBoundRow(int kappa);  //  z <= kappa

/// Excludes exactly the integral arc set `chosen`:
/// sum_{a in chosen} w_a - sum_{a not in chosen} w_a <= |chosen| - 1.
LinearRow noGoodRow(const ArcSet& chosen);

struct PathLoad {
  int load = 0;
  VertexPath path;  // empty when the digraph has no arcs
};

/// Largest number of arcs of b on a single elementary path of D with at most
/// kappa arcs. This is the smallest z compatible with b.
PathLoad maxPathLoad(const BidirectedDigraph& d, const ArcSet& b, int kappa);

/// Some directed cycle of D[b], or nullopt when b is acyclic.
std::optional<VertexPath> findDirectedCycle(const BidirectedDigraph& d, const ArcSet& b);

struct FeasibilityCheck {
  bool feasible = false;
  std::optional<LinearRow> witness;
};

/// Checks an integral point against every row family of the configured
/// model (edge-pair, cycle, path and bounds) plus `extraRows`.
FeasibilityCheck checkIntegralFeasible(const BidirectedDigraph& d, const ModelConfig& cfg,
                                       const ModelPoint& point,
                                       std::span<const LinearRow> extraRows = {});

/// Deduplicating store of rows. Not synchronized.
class CutPool {
 public:
  /// Returns false when a structurally identical row is already present.
  bool insert(LinearRow row);
  std::size_t size() const noexcept { return rows_.size(); }
  const LinearRow& operator[](std::size_t k) const { return rows_[k]; }
  std::span<const LinearRow> rows() const noexcept { return rows_; }

 private:
  std::vector<LinearRow> rows_;
  std::unordered_multimap<std::size_t, std::size_t> byHash_;
};

}  // namespace aopc
