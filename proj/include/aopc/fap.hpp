#pragma once

#include <optional>
#include <vector>

#include "aopc/graph.hpp"
#include "aopc/model.hpp"
#include "aopc/solver.hpp"

namespace aopc::fap {

struct LinkPair {
  int i = 0;
  int j = 0;
  int d = 1;  // channel separation, 0..3
  /// Violation cost; present only on soft pairs.
  std::optional<double> cost;
};

struct FapInstance {
  int links = 0;
  /// Allowed frequencies per link; an empty outer vector means unrestricted.
  std::vector<std::vector<int>> freqSets;
  std::vector<LinkPair> pairs;
  std::optional<int> spectrum;

  /// Throws InputError on malformed data and UnsupportedInstance on d > 3.
  void validate() const;
  bool hasSoftPairs() const;
  bool allowed(int link, int f) const;
};

struct GadgetExpansion {
  UndirectedGraph expandedGraph;
  /// Aux vertices of each pair, in chain order from pair.i to pair.j.
  std::vector<std::vector<int>> auxVertices;
  /// Expanded edge indices of each pair's chain (empty for d = 0).
  std::vector<std::vector<int>> chainEdges;
  std::vector<LinearRow> sideRows;
  /// Link index for link vertices, -1 - pairIndex for aux vertices.
  std::vector<int> backMap;
};

GadgetExpansion expandGadgets(const FapInstance& inst);

struct FrequencyAssignment {
  std::vector<int> freq;
  /// Indices into FapInstance::pairs left unseparated.
  std::vector<int> violatedPairs;
  double totalCost = 0.0;
};

struct FapResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<FrequencyAssignment> assignment;
  /// Spectrum the assignment was computed for (the optimum for minSpectrum).
  int spectrum = 0;
  std::vector<SolveReport> reports;
};

/// Hard pairs only: an assignment with every f_i <= spectrum, or infeasible.
FapResult solveFixedSpectrum(const FapInstance& inst, const SolveOptions& options = {});

/// Hard pairs only: smallest spectrum admitting an assignment.
FapResult minSpectrum(const FapInstance& inst, const SolveOptions& options = {});

/// Soft pairs (d = 1, with cost) may be left unseparated at their cost.
FapResult solveSoftCost(const FapInstance& inst, const SolveOptions& options = {});

/// Dispatch on the instance: no spectrum -> minSpectrum, spectrum without
/// soft pairs -> solveFixedSpectrum, otherwise solveSoftCost.
FapResult solve(const FapInstance& inst, const SolveOptions& options = {});

/// Checks bounds, availability sets, and separation of every hard pair and
/// of every soft pair not listed as violated.
bool assignmentFeasible(const FapInstance& inst, const FrequencyAssignment& a,
                        std::optional<int> spectrum);

}  // namespace aopc::fap
