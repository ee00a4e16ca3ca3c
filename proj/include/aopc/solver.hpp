#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aopc/graph.hpp"
#include "aopc/model.hpp"
#include "aopc/separation.hpp"

namespace aopc {

struct SolveOptions {
  double timeLimitSeconds = 300.0;
  int threads = 1;
  std::uint64_t seed = 1;
  int maxCutRounds = 20;
  /// Also separate the cycle-z, path-(kappa-1), path-(kappa-2), cycle-arcs
  /// and adjacent-paths families.
  bool templateCuts = true;
  /// Keep the LP bound sequence of every node (for diagnostics and tests).
  bool recordNodeTraces = false;
  SeparationConfig separation;
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

std::string_view solveStatusName(SolveStatus s);

/// A branch-and-cut instance over the (w, z) variables of one digraph.
/// Objective: zCost*z + sum(arcCost[a]*w[a]) + objectiveOffset, minimized.
struct OrientationProblem {
  BidirectedDigraph digraph;
  ModelConfig config;
  std::vector<double> arcCost;  // empty means all zero
  double zCost = 1.0;
  double objectiveOffset = 0.0;
  /// Rows that always belong to the model (gadget sides, no-goods).
  std::vector<LinearRow> staticRows;
  /// Start point; ignored unless it passes checkIntegralFeasible.
  std::optional<ModelPoint> initialIncumbent;
  /// Objective value no feasible point goes below. The search stops once the
  /// incumbent reaches it; the root LP is still solved.
  std::optional<double> objectiveLowerBound;
};

struct NodeTrace {
  long id = 0;
  std::vector<double> bounds;  // LP objective after each cut round
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<ModelPoint> bestPoint;
  double objective = 0.0;
  /// Root LP value after each cut round.
  std::vector<double> boundHistory;
  std::array<long, kRowClassCount> cutCounts{};
  long nodes = 0;
  double wallSeconds = 0.0;
  std::vector<NodeTrace> nodeTraces;
  /// Every accepted incumbent, in acceptance order.
  std::vector<ModelPoint> incumbents;
};

SolveReport solveOrientationProblem(const OrientationProblem& problem,
                                    const SolveOptions& options = {});

/// Minimize z over AO(G, kappa): acyclic orientations where every path of
/// D with at most kappa arcs has at most z arcs oriented along it. A clique
/// of size k bounds z* below by min(kappa, k-1), since its orientation is a
/// transitive tournament.
SolveReport solveAO(const UndirectedGraph& g, int kappa, const SolveOptions& options = {});

struct DiameterResult {
  SolveStatus status = SolveStatus::Optimal;
  Orientation orientation;
  int diameter = 0;
  /// kappa values probed, in order, across all components.
  std::vector<int> kappaSequence;
  std::vector<SolveReport> reports;
};

/// Acyclic orientation of minimum diameter by repeated AO solves with
/// decreasing kappa, starting from `upperBound` (default: greedy coloring
/// colors - 1). Components are solved independently.
DiameterResult minDiameterOrientation(const UndirectedGraph& g,
                                      std::optional<int> upperBound = std::nullopt,
                                      const SolveOptions& options = {});

struct ColoringResult {
  SolveStatus status = SolveStatus::Optimal;
  int chromatic = 0;
  std::vector<std::vector<int>> classes;
  DiameterResult diameter;
};

/// Chromatic number as 1 + minimum diameter, with the coloring read off the
/// source decomposition of the optimal orientation.
ColoringResult chromaticNumber(const UndirectedGraph& g, const SolveOptions& options = {});

/// For an orientation of diameter q and kappa >= q+1, checks that the point
/// (w of the orientation, kappa - floor(kappa/(q+1))) is feasible for
/// AO(G, kappa). Throws ContractViolation when kappa <= q.
bool checkDiameterLoadBound(const UndirectedGraph& g, int kappa, const Orientation& orientation);

}  // namespace aopc
