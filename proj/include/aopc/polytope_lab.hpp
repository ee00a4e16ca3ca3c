#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aopc/fap.hpp"
#include "aopc/graph.hpp"
#include "aopc/model.hpp"

// Exhaustive oracles for small instances.
namespace aopc::lab {

inline constexpr int kDefaultEdgeCap = 8;
inline constexpr int kVertexCap = 10;

/// Integral points of P_{G,kappa}: for every acyclic arc set B (each edge
/// absent, forward or backward) the points (w^B, z) for integer z from the
/// largest load of a path with at most kappa arcs up to kappa.
/// Throws UnsupportedInstance when m exceeds edgeCap.
std::vector<ModelPoint> enumerateFeasiblePoints(const UndirectedGraph& g, int kappa,
                                                int edgeCap = kDefaultEdgeCap);

int polytopeDimension(const UndirectedGraph& g, int kappa, int edgeCap = kDefaultEdgeCap);

enum class FaceClass { Invalid, ValidNotFacet, Facet };

std::string_view faceClassName(FaceClass c);

struct FaceReport {
  FaceClass cls = FaceClass::Invalid;
  /// Affine dimension of the points on which the row is tight (-1 if none).
  int tightDimension = -1;
  int tightPoints = 0;
  /// A feasible point violating the row, for invalid rows.
  std::optional<ModelPoint> counterexample;
};

/// Classification against a precomputed point set of a polytope of the given
/// dimension.
FaceReport classifyFace(std::span<const ModelPoint> points, int polytopeDim, const LinearRow& row);
FaceReport classifyFace(const UndirectedGraph& g, int kappa, const LinearRow& row,
                        int edgeCap = kDefaultEdgeCap);

/// Every row of one class on (g, kappa): "bound", "edge-pair", "cycle"
/// (3 or more arcs), "path" (exactly kappa arcs) or a template class name.
/// Throws InputError for other names.
std::vector<LinearRow> rowsOfClass(const UndirectedGraph& g, int kappa, std::string_view cls);

/// Minimum over all vertex orderings of the longest path of the induced
/// orientation. n <= 10.
int bruteForceMinDiameter(const UndirectedGraph& g);

/// Smallest number of colors of a proper coloring. n <= 10.
int bruteForceChromatic(const UndirectedGraph& g);

/// Optimal value of AO(G, kappa): minimum over acyclic orientations of the
/// largest load of a path with at most kappa arcs (never above kappa).
/// Enumerates all 2^m orientations; m <= edgeCap + 8.
int bruteForceAO(const UndirectedGraph& g, int kappa, int edgeCap = kDefaultEdgeCap + 8);

/// Exhaustive FAP oracle over f_i in [0, maxFreq] (further capped by the
/// instance spectrum). Without a spectrum: the smallest max frequency of an
/// assignment separating every pair. With a spectrum: the smallest total
/// cost of unseparated soft pairs (0 for a feasible hard instance).
/// nullopt when no assignment exists in range. At most 6 links.
std::optional<double> bruteForceFap(const fap::FapInstance& inst, int maxFreq = 6);

}  // namespace aopc::lab
