#include "aopc/fap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>

#include "aopc/errors.hpp"

namespace aopc::fap {

namespace {

using Clock = std::chrono::steady_clock;
constexpr int kNoGoodRounds = 100;

std::string pairName(const LinkPair& p) {
  return "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

LinearRow sideRow(const BidirectedDigraph& d, int a0, int b0, int a1, int b1) {
  LinearRow row;
  row.coeffs = {{d.arcIndex(a0, b0), 1.0}, {d.arcIndex(a1, b1), 1.0}};
  row.rhs = 1.0;
  row.tag = RowClass::GadgetSide;
  row.canonicalize();
  return row;
}

// Earliest labels in topological order: every arc (u,v) gets f_v >= f_u + 1,
// links take the smallest allowed value, aux vertices any value.
std::optional<std::vector<int>> recoverLabels(const FapInstance& inst, const GadgetExpansion& ex,
                                              const BidirectedDigraph& d, const ArcSet& arcs,
                                              int spectrum) {
  const int n = d.vertexCount();
  std::vector<int> indeg(n, 0);
  for (int a : arcs.arcs()) ++indeg[d.head(a)];
  std::vector<int> ready, label(n, 0);
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<int> floor(n, 0);
  int done = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++done;
    int f = floor[v];
    const int link = ex.backMap[v];
    if (link >= 0 && !inst.freqSets.empty()) {
      const auto& allowed = inst.freqSets[link];
      auto it = std::lower_bound(allowed.begin(), allowed.end(), f);
      if (it == allowed.end()) return std::nullopt;
      f = *it;
    }
    if (f > spectrum) return std::nullopt;
    label[v] = f;
    for (int a : d.outArcs(v)) {
      if (!arcs.contains(a)) continue;
      const int w = d.head(a);
      floor[w] = std::max(floor[w], f + 1);
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  if (done != n) throw ContractViolation("frequency recovery on a cyclic orientation");
  return label;
}

double remaining(const SolveOptions& options, Clock::time_point start) {
  return options.timeLimitSeconds - std::chrono::duration<double>(Clock::now() - start).count();
}

enum class Mode { Hard, Soft };

// One spectrum, hard or soft; re-solves with no-good rows while the
// orientation cannot be labelled within the availability sets.
FapResult solveAtSpectrum(const FapInstance& inst, int spectrum, Mode mode,
                          const SolveOptions& options, Clock::time_point start) {
  const GadgetExpansion ex = expandGadgets(inst);
  FapResult result;
  result.spectrum = spectrum;

  if (ex.expandedGraph.edgeCount() == 0) {
    // Nothing to orient: every link takes its smallest allowed frequency.
    FrequencyAssignment a;
    a.freq.assign(inst.links, 0);
    for (int l = 0; l < inst.links; ++l) {
      if (!inst.freqSets.empty()) a.freq[l] = inst.freqSets[l].front();
      if (a.freq[l] > spectrum) return result;
    }
    result.status = SolveStatus::Optimal;
    result.assignment = std::move(a);
    return result;
  }
  if (spectrum < 1) return result;

  OrientationProblem problem;
  problem.digraph = BidirectedDigraph(ex.expandedGraph);
  const BidirectedDigraph& d = problem.digraph;
  problem.config.kappa = spectrum + 1;
  problem.config.zFixed = spectrum;
  problem.zCost = 0.0;
  problem.staticRows = ex.sideRows;

  std::vector<int> softEdge(inst.pairs.size(), -1);
  if (mode == Mode::Soft) {
    problem.config.variant = Variant::AS;
    problem.arcCost.assign(d.arcCount(), 0.0);
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
      const auto& pair = inst.pairs[p];
      if (pair.d == 0) continue;
      if (pair.cost) {
        const int e = ex.chainEdges[p].front();
        softEdge[p] = e;
        problem.arcCost[2 * e] -= *pair.cost;
        problem.arcCost[2 * e + 1] -= *pair.cost;
        problem.objectiveOffset += *pair.cost;
      } else {
        for (int e : ex.chainEdges[p]) problem.config.requiredEdges.push_back(e);
      }
    }
  }

  for (int round = 0; round < kNoGoodRounds; ++round) {
    SolveOptions opts = options;
    opts.timeLimitSeconds = remaining(options, start);
    if (opts.timeLimitSeconds <= 0) {
      result.status = SolveStatus::TimeLimit;
      return result;
    }
    result.reports.push_back(solveOrientationProblem(problem, opts));
    const SolveReport& report = result.reports.back();
    if (report.status != SolveStatus::Optimal || !report.bestPoint) {
      result.status = report.status;
      return result;
    }
    const ArcSet arcs = report.bestPoint->support();
    const auto labels = recoverLabels(inst, ex, d, arcs, spectrum);
    if (!labels) {
      problem.staticRows.push_back(noGoodRow(arcs));
      continue;
    }
    FrequencyAssignment a;
    a.freq.assign(labels->begin(), labels->begin() + inst.links);
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
      const int e = softEdge[p];
      if (e >= 0 && !arcs.contains(2 * e) && !arcs.contains(2 * e + 1)) {
        a.violatedPairs.push_back(static_cast<int>(p));
        a.totalCost += *inst.pairs[p].cost;
      }
    }
    result.status = SolveStatus::Optimal;
    result.assignment = std::move(a);
    return result;
  }
  throw UnsupportedInstance("availability sets not satisfied after " +
                            std::to_string(kNoGoodRounds) + " re-solves");
}

// Greedy assignment in link order; nullopt when some link has no allowed value.
std::optional<std::vector<int>> greedyAssignment(const FapInstance& inst) {
  std::vector<int> freq(inst.links, -1);
  int cap = 0;
  for (const auto& p : inst.pairs) cap += p.d;
  for (int l = 0; l < inst.links; ++l) {
    std::vector<int> candidates;
    if (inst.freqSets.empty()) {
      for (int f = 0; f <= 3 * cap + 1; ++f) candidates.push_back(f);
    } else {
      candidates = inst.freqSets[l];
    }
    for (int f : candidates) {
      bool ok = true;
      for (const auto& p : inst.pairs) {
        const int other = p.i == l ? p.j : p.j == l ? p.i : -1;
        if (other < 0 || freq[other] < 0) continue;
        ok = ok && std::abs(f - freq[other]) >= p.d;
      }
      if (ok) {
        freq[l] = f;
        break;
      }
    }
    if (freq[l] < 0) return std::nullopt;
  }
  return freq;
}

// Clique among links joined by positive separations.
int greedyCliqueSize(const FapInstance& inst) {
  if (inst.links == 0) return 0;
  std::vector<Edge> edges;
  for (const auto& p : inst.pairs)
    if (p.d > 0) edges.push_back({p.i, p.j});
  return static_cast<int>(greedyClique(UndirectedGraph(inst.links, edges)).size());
}

void requireHard(const FapInstance& inst) {
  if (inst.hasSoftPairs()) throw InputError("soft pairs need the soft-cost mode");
}

}  // namespace

void FapInstance::validate() const {
  if (links < 0) throw InputError("negative link count");
  if (!freqSets.empty()) {
    if (static_cast<int>(freqSets.size()) != links)
      throw InputError("freqSets must list one set per link");
    for (const auto& s : freqSets) {
      if (s.empty()) throw InputError("empty frequency set");
      if (!std::is_sorted(s.begin(), s.end()) ||
          std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InputError("frequency sets must be strictly increasing");
      if (s.front() < 0) throw InputError("negative frequency");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pairs) {
    if (p.i < 0 || p.j < 0 || p.i >= links || p.j >= links)
      throw InputError(pairName(p) + ": link out of range");
    if (p.i == p.j) throw InputError(pairName(p) + ": a link cannot pair with itself");
    if (!seen.insert({std::min(p.i, p.j), std::max(p.i, p.j)}).second)
      throw InputError(pairName(p) + ": listed twice");
    if (p.d < 0) throw InputError(pairName(p) + ": negative separation");
    if (p.d > 3) throw UnsupportedInstance(pairName(p) + ": separation above 3");
    if (p.cost) {
      if (p.d == 0) throw InputError(pairName(p) + ": cost on a pair without separation");
      if (*p.cost < 0 || !std::isfinite(*p.cost)) throw InputError(pairName(p) + ": bad cost");
    }
  }
  if (spectrum && *spectrum < 1) throw InputError("spectrum must be at least 1");
}

bool FapInstance::hasSoftPairs() const {
  return std::any_of(pairs.begin(), pairs.end(), [](const LinkPair& p) { return p.cost.has_value(); });
}

bool FapInstance::allowed(int link, int f) const {
  if (f < 0) return false;
  if (freqSets.empty()) return true;
  const auto& s = freqSets.at(link);
  return std::binary_search(s.begin(), s.end(), f);
}

GadgetExpansion expandGadgets(const FapInstance& inst) {
  inst.validate();
  GadgetExpansion ex;
  int n = inst.links;
  for (int l = 0; l < inst.links; ++l) ex.backMap.push_back(l);
  std::vector<Edge> edges;
  ex.auxVertices.resize(inst.pairs.size());
  ex.chainEdges.resize(inst.pairs.size());
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    const auto& pair = inst.pairs[p];
    if (pair.d == 0) continue;
    std::vector<int> chain{pair.i};
    for (int k = 1; k < pair.d; ++k) {
      ex.auxVertices[p].push_back(n);
      ex.backMap.push_back(-1 - static_cast<int>(p));
      chain.push_back(n++);
    }
    chain.push_back(pair.j);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      ex.chainEdges[p].push_back(static_cast<int>(edges.size()));
      edges.push_back({chain[k], chain[k + 1]});
    }
  }
  ex.expandedGraph = UndirectedGraph(n, edges);
  const BidirectedDigraph d(ex.expandedGraph);
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    const auto& aux = ex.auxVertices[p];
    if (aux.empty()) continue;
    const int i = inst.pairs[p].i, j = inst.pairs[p].j;
    // Each aux vertex is neither a sink nor a source within its chain.
    std::vector<int> chain{i};
    chain.insert(chain.end(), aux.begin(), aux.end());
    chain.push_back(j);
    for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
      const int prev = chain[k - 1], v = chain[k], next = chain[k + 1];
      ex.sideRows.push_back(sideRow(d, prev, v, next, v));
      ex.sideRows.push_back(sideRow(d, v, prev, v, next));
    }
  }
  return ex;
}

FapResult solveFixedSpectrum(const FapInstance& inst, const SolveOptions& options) {
  inst.validate();
  requireHard(inst);
  if (!inst.spectrum) throw InputError("fixed-spectrum mode needs a spectrum");
  return solveAtSpectrum(inst, *inst.spectrum, Mode::Hard, options, Clock::now());
}

FapResult minSpectrum(const FapInstance& inst, const SolveOptions& options) {
  inst.validate();
  requireHard(inst);
  const auto start = Clock::now();

  int lo = std::max(0, greedyCliqueSize(inst) - 1);
  for (const auto& p : inst.pairs) lo = std::max(lo, p.d);
  if (!inst.freqSets.empty())
    for (const auto& s : inst.freqSets) lo = std::max(lo, s.front());

  FapResult best;
  int hi;
  if (auto greedy = greedyAssignment(inst)) {
    hi = greedy->empty() ? 0 : *std::max_element(greedy->begin(), greedy->end());
    best.status = SolveStatus::Optimal;
    best.spectrum = hi;
    best.assignment = FrequencyAssignment{*greedy, {}, 0.0};
  } else {
    hi = 0;
    for (const auto& s : inst.freqSets) hi = std::max(hi, s.back());
    best = solveAtSpectrum(inst, hi, Mode::Hard, options, start);
    if (best.status != SolveStatus::Optimal) return best;
  }
  lo = std::min(lo, hi);

  std::vector<SolveReport> reports = std::move(best.reports);
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    FapResult probe = solveAtSpectrum(inst, mid, Mode::Hard, options, start);
    for (auto& r : probe.reports) reports.push_back(std::move(r));
    if (probe.status == SolveStatus::Optimal) {
      hi = mid;
      best = std::move(probe);
    } else if (probe.status == SolveStatus::Infeasible) {
      lo = mid + 1;
    } else {
      best.status = SolveStatus::TimeLimit;
      break;
    }
  }
  best.reports = std::move(reports);
  return best;
}

FapResult solveSoftCost(const FapInstance& inst, const SolveOptions& options) {
  inst.validate();
  if (!inst.spectrum) throw InputError("soft-cost mode needs a spectrum");
  for (const auto& p : inst.pairs)
    if (p.cost && p.d != 1) throw UnsupportedInstance(pairName(p) + ": soft pairs need d = 1");
  return solveAtSpectrum(inst, *inst.spectrum, Mode::Soft, options, Clock::now());
}

FapResult solve(const FapInstance& inst, const SolveOptions& options) {
  if (!inst.spectrum) return minSpectrum(inst, options);
  if (!inst.hasSoftPairs()) return solveFixedSpectrum(inst, options);
  return solveSoftCost(inst, options);
}

bool assignmentFeasible(const FapInstance& inst, const FrequencyAssignment& a,
                        std::optional<int> spectrum) {
  if (static_cast<int>(a.freq.size()) != inst.links) return false;
  for (int l = 0; l < inst.links; ++l) {
    if (!inst.allowed(l, a.freq[l])) return false;
    if (spectrum && a.freq[l] > *spectrum) return false;
  }
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    const auto& pair = inst.pairs[p];
    const bool waived = std::find(a.violatedPairs.begin(), a.violatedPairs.end(),
                                  static_cast<int>(p)) != a.violatedPairs.end();
    if (waived) {
      if (!pair.cost) return false;
      continue;
    }
    if (std::abs(a.freq[pair.i] - a.freq[pair.j]) < pair.d) return false;
  }
  return true;
}

}  // namespace aopc::fap
