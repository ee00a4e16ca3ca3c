#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aopc/model.hpp"

namespace aopc {

struct SeparationConfig {
  double violationTol = 1e-6;
  int maxCutsPerClass = 50;
  /// Template rows per class beyond which the catalog keeps a seeded random
  /// sample instead of the full family.
  std::size_t templateCap = 20000;
  std::uint64_t seed = 1;
};

/// Cycle rows violated by `point`. Two-cycles are checked per edge; for
/// every arc (i,j) a label-setting shortest path j -> i under lengths
/// max(0, 1 - w) that avoids the arc (j,i) closes a longer cycle, violated
/// iff its length is below 1. Exact: returns a row whenever one is violated.
std::vector<LinearRow> separateCycle(const BidirectedDigraph& d, const ModelPoint& point,
                                     const SeparationConfig& cfg = {});

/// Most violated path rows over elementary paths with at most kappa arcs, by
/// depth-limited search with a load bound. Exact.
std::vector<LinearRow> separatePathK(const BidirectedDigraph& d, const ModelPoint& point,
                                     int kappa, const SeparationConfig& cfg = {});

// Full template families (no sampling), as used by the validity sweeps.
std::vector<LinearRow> cycleZRows(const BidirectedDigraph& d, int kappa);
std::vector<LinearRow> pathKm1Rows(const BidirectedDigraph& d, int kappa);
std::vector<LinearRow> pathKm2Rows(const BidirectedDigraph& d, int kappa);
std::vector<LinearRow> cycleArcsRows(const BidirectedDigraph& d, int kappa);
/// Includes the mirrored variant of every pair.
std::vector<LinearRow> adjacentPathsRows(const BidirectedDigraph& d, int kappa);

/// Template rows of the five strengthening classes for one (graph, kappa),
/// built once and scanned on every separation round.
class TemplateCatalog {
 public:
  TemplateCatalog(const BidirectedDigraph& d, int kappa, const SeparationConfig& cfg = {});

  const std::vector<LinearRow>& rows(RowClass c) const;
  bool sampled(RowClass c) const;
  std::size_t totalRows() const;

 private:
  std::vector<std::vector<LinearRow>> rows_;
  std::vector<bool> sampled_;
};

/// Violated rows from the catalog, at most maxCutsPerClass per class, most
/// violated first.
std::vector<LinearRow> separateTemplates(const TemplateCatalog& catalog, const ModelPoint& point,
                                         const SeparationConfig& cfg = {});

/// Convenience wrapper building a catalog on the fly.
std::vector<LinearRow> separateTemplateClasses(const BidirectedDigraph& d,
                                               const ModelPoint& point, int kappa,
                                               const SeparationConfig& cfg = {});

}  // namespace aopc
