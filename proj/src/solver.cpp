#include "aopc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

#include "aopc/errors.hpp"
#include "aopc/lp.hpp"

namespace aopc {

std::string_view solveStatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "timeout";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;
constexpr double kTailingImprovement = 1e-5;
constexpr int kTailingRounds = 3;

struct Node {
  long id = 0;
  double bound = -kInf;
  std::vector<int> forcedOne;
  std::vector<int> forcedZero;
};

struct WorseBound {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool isWhole(double x) { return std::abs(x - std::round(x)) < 1e-12; }

lp::Row toLpRow(const LinearRow& row, int zColumn) {
  lp::Row out;
  for (const auto& [a, c] : row.coeffs) {
    out.index.push_back(a);
    out.value.push_back(c);
  }
  if (row.zCoeff != 0.0) {
    out.index.push_back(zColumn);
    out.value.push_back(row.zCoeff);
  }
  out.sense = row.sense == Sense::Equal ? lp::RowSense::Equal : lp::RowSense::LessEqual;
  out.rhs = row.rhs;
  return out;
}

class BranchAndCut {
 public:
  BranchAndCut(const OrientationProblem& problem, const SolveOptions& options)
      : p_(problem), o_(options), d_(problem.digraph), arcs_(d_.arcCount()), zCol_(arcs_),
        start_(Clock::now()) {
    p_.config.validate();
    arcCost_ = p_.arcCost.empty() ? std::vector<double>(arcs_, 0.0) : p_.arcCost;
    if (static_cast<int>(arcCost_.size()) != arcs_) throw InputError("arc cost size mismatch");
    integralObjective_ = isWhole(p_.zCost) && isWhole(p_.objectiveOffset) &&
                         std::all_of(arcCost_.begin(), arcCost_.end(), isWhole) &&
                         (!p_.config.zFixed || isWhole(p_.zCost * *p_.config.zFixed));
    for (int e = 0; e < d_.base().edgeCount(); ++e)
      pool_.insert(buildRowEdgePair(d_, e, p_.config.edgeRequired(e) ? Variant::AO : Variant::AS));
    for (const LinearRow& row : p_.staticRows) pool_.insert(row);
    if (o_.templateCuts) catalog_.emplace(d_, p_.config.kappa, o_.separation);
  }

  SolveReport run() {
    if (p_.initialIncumbent) {
      ModelPoint start = *p_.initialIncumbent;
      if (static_cast<int>(start.w.size()) == arcs_ && start.isIntegral()) {
        start.z = candidateZ(start);
        if (checkIntegralFeasible(d_, p_.config, start, p_.staticRows).feasible)
          offerIncumbent(start);
      }
    }
    open_.push(Node{nextId_++, -kInf, {}, {}});
    const int threads = std::max(1, o_.threads);
    std::vector<std::thread> extra;
    for (int t = 1; t < threads; ++t) extra.emplace_back([this] { workerLoop(); });
    workerLoop();
    for (auto& t : extra) t.join();

    SolveReport report;
    report.nodes = nodes_;
    report.cutCounts = cutCounts_;
    report.boundHistory = rootHistory_;
    report.nodeTraces = std::move(traces_);
    std::sort(report.nodeTraces.begin(), report.nodeTraces.end(),
              [](const NodeTrace& a, const NodeTrace& b) { return a.id < b.id; });
    report.incumbents = incumbents_;
    report.bestPoint = incumbent_;
    report.objective = incumbent_ ? incumbentValue_.load() : 0.0;
    if (timedOut_)
      report.status = SolveStatus::TimeLimit;
    else
      report.status = incumbent_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
    report.wallSeconds = elapsed();
    return report;
  }

 private:
  struct Worker {
    explicit Worker(int columns) : lp(columns) {}
    lp::LinearProgram lp;
    std::size_t synced = 0;
  };

  enum class Outcome { Done, Branch, Stopped };

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  bool timeUp() {
    if (elapsed() <= o_.timeLimitSeconds) return false;
    std::lock_guard lock(mu_);
    timedOut_ = true;
    stop_ = true;
    cv_.notify_all();
    return true;
  }

  // Bound that no completion of the node can beat the incumbent with.
  bool prunable(double bound) const {
    const double best = incumbentValue_.load();
    if (!std::isfinite(best)) return false;
    if (p_.objectiveLowerBound) bound = std::max(bound, *p_.objectiveLowerBound);
    if (integralObjective_) return bound > best - 1.0 + kIntTol;
    return bound >= best - 1e-9;
  }

  double candidateZ(const ModelPoint& p) const {
    if (p_.config.zFixed) return *p_.config.zFixed;
    return maxPathLoad(d_, p.support(), p_.config.kappa).load;
  }

  double objectiveOf(const ModelPoint& p) const {
    double v = p_.objectiveOffset + p_.zCost * p.z;
    for (int a = 0; a < arcs_; ++a) v += arcCost_[a] * p.w[a];
    return v;
  }

  void offerIncumbent(const ModelPoint& p) {
    const double value = objectiveOf(p);
    std::lock_guard lock(mu_);
    if (incumbent_ && value >= incumbentValue_.load() - 1e-9) return;
    incumbent_ = p;
    incumbentValue_.store(value);
    incumbents_.push_back(p);
  }

  void initWorker(Worker& w) {
    std::vector<double> cost(arcCost_);
    cost.push_back(p_.zCost);
    w.lp.setObjective(cost);
    for (int a = 0; a < arcs_; ++a) w.lp.setBounds(a, 0.0, 1.0);
    if (p_.config.zFixed)
      w.lp.setBounds(zCol_, *p_.config.zFixed, *p_.config.zFixed);
    else
      w.lp.setBounds(zCol_, 0.0, p_.config.kappa);
  }

  void syncRows(Worker& w) {
    std::vector<LinearRow> fresh;
    {
      std::lock_guard lock(mu_);
      for (std::size_t k = w.synced; k < pool_.size(); ++k) fresh.push_back(pool_[k]);
      w.synced = pool_.size();
    }
    for (const LinearRow& row : fresh) w.lp.addRow(toLpRow(row, zCol_));
  }

  int addCuts(std::vector<LinearRow> cuts) {
    std::lock_guard lock(mu_);
    int added = 0;
    for (LinearRow& row : cuts) {
      const auto tag = static_cast<std::size_t>(row.tag);
      if (pool_.insert(std::move(row))) {
        ++cutCounts_[tag];
        ++added;
      }
    }
    return added;
  }

  std::vector<LinearRow> separate(const ModelPoint& point) const {
    std::vector<LinearRow> cuts = separateCycle(d_, point, o_.separation);
    for (auto& r : separatePathK(d_, point, p_.config.kappa, o_.separation))
      cuts.push_back(std::move(r));
    if (catalog_)
      for (auto& r : separateTemplates(*catalog_, point, o_.separation))
        cuts.push_back(std::move(r));
    return cuts;
  }

  ModelPoint pointFrom(const lp::Solution& sol) const {
    ModelPoint p;
    p.w.assign(sol.x.begin(), sol.x.begin() + arcs_);
    for (double& x : p.w) x = std::clamp(x, 0.0, 1.0);
    p.z = sol.x[zCol_];
    return p;
  }

  Outcome processNode(Node& node, Worker& w, ModelPoint& last, NodeTrace& trace) {
    for (int a = 0; a < arcs_; ++a) w.lp.setBounds(a, 0.0, 1.0);
    for (int a : node.forcedOne) w.lp.setBounds(a, 1.0, 1.0);
    for (int a : node.forcedZero) w.lp.setBounds(a, 0.0, 0.0);

    for (int round = 0;; ++round) {
      if (timeUp()) return Outcome::Stopped;
      syncRows(w);
      const lp::Solution sol = w.lp.solve();
      if (sol.status == lp::Status::Infeasible) return Outcome::Done;
      const double bound = sol.objective + p_.objectiveOffset;
      trace.bounds.push_back(bound);
      node.bound = std::max(node.bound, bound);
      if (prunable(bound)) return Outcome::Done;
      last = pointFrom(sol);

      if (last.isIntegral(kIntTol)) {
        // The orientation with its own load is a feasible point; the node is
        // finished only if the LP's z already matches that load.
        ModelPoint cand = ModelPoint::fromArcSet(last.support(kIntTol), 0.0);
        cand.z = candidateZ(cand);
        auto check = checkIntegralFeasible(d_, p_.config, cand, p_.staticRows);
        if (check.feasible) {
          offerIncumbent(cand);
          if (cand.z <= last.z + kIntTol) return Outcome::Done;
          ModelPoint lpPoint = cand;
          lpPoint.z = last.z;
          check = checkIntegralFeasible(d_, p_.config, lpPoint, p_.staticRows);
        }
        if (!check.witness || addCuts({std::move(*check.witness)}) == 0) return Outcome::Branch;
        continue;
      }

      if (round + 1 >= o_.maxCutRounds) return Outcome::Branch;
      if (addCuts(separate(last)) == 0) return Outcome::Branch;
      const auto& b = trace.bounds;
      if (b.size() > kTailingRounds &&
          b.back() - b[b.size() - 1 - kTailingRounds] < kTailingImprovement)
        return Outcome::Branch;
    }
  }

  // Children of a node, plunge child first; empty when nothing can be fixed.
  std::vector<Node> branch(const Node& node, const ModelPoint& point) {
    std::vector<char> fixed(arcs_, 0);
    for (int a : node.forcedOne) fixed[a] = 1;
    for (int a : node.forcedZero) fixed[a] = 1;

    int bestEdge = -1;
    double bestScore = -1.0;
    for (int e = 0; e < d_.base().edgeCount(); ++e) {
      const int f = 2 * e, r = 2 * e + 1;
      if (fixed[f] && fixed[r]) continue;
      double score;
      if (p_.config.edgeRequired(e)) {
        score = std::min(point.w[f], point.w[r]);
      } else {
        score = std::max(std::min(point.w[f], 1.0 - point.w[f]),
                         std::min(point.w[r], 1.0 - point.w[r]));
      }
      if (score > bestScore + 1e-12) {
        bestScore = score;
        bestEdge = e;
      }
    }
    if (bestEdge < 0) return {};

    const int f = 2 * bestEdge, r = 2 * bestEdge + 1;
    std::vector<Node> kids;
    auto child = [&](std::vector<int> one, std::vector<int> zero) {
      Node c;
      c.bound = node.bound;
      c.forcedOne = node.forcedOne;
      c.forcedZero = node.forcedZero;
      c.forcedOne.insert(c.forcedOne.end(), one.begin(), one.end());
      c.forcedZero.insert(c.forcedZero.end(), zero.begin(), zero.end());
      if (isAcyclic(d_, ArcSet(arcs_, c.forcedOne))) kids.push_back(std::move(c));
    };
    if (p_.config.edgeRequired(bestEdge)) {
      const bool forwardFirst = point.w[f] >= point.w[r];
      const int first = forwardFirst ? f : r, second = forwardFirst ? r : f;
      child({first}, {second});
      child({second}, {first});
    } else {
      const int a = std::min(point.w[f], 1.0 - point.w[f]) >=
                            std::min(point.w[r], 1.0 - point.w[r])
                        ? f
                        : r;
      const int rev = BidirectedDigraph::reverseOf(a);
      if (point.w[a] >= 0.5) {
        child({a}, {rev});
        child({}, {a});
      } else {
        child({}, {a});
        child({a}, {rev});
      }
    }
    return kids;
  }

  void workerLoop() {
    Worker w(arcs_ + 1);
    initWorker(w);
    std::optional<Node> plunge;
    while (true) {
      Node node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return stop_ || !open_.empty() || active_ == 0; });
        if (stop_ || open_.empty()) {
          cv_.notify_all();
          return;
        }
        node = open_.top();
        open_.pop();
        ++active_;
      }

      Outcome outcome = Outcome::Done;
      ModelPoint last;
      NodeTrace trace;
      {
        std::lock_guard lock(mu_);
        trace.id = node.id;
        ++nodes_;
      }
      if (node.id == 0 || !prunable(node.bound)) outcome = processNode(node, w, last, trace);

      std::vector<Node> kids;
      if (outcome == Outcome::Branch) kids = branch(node, last);

      std::lock_guard lock(mu_);
      if (node.id == 0) rootHistory_ = trace.bounds;
      if (o_.recordNodeTraces) traces_.push_back(std::move(trace));
      if (outcome == Outcome::Stopped) {
        --active_;
        cv_.notify_all();
        return;
      }
      for (auto& k : kids) k.id = nextId_++;
      if (!kids.empty()) {
        plunge = std::move(kids.front());
        for (std::size_t k = 1; k < kids.size(); ++k) open_.push(std::move(kids[k]));
        cv_.notify_all();
      } else {
        --active_;
        if (active_ == 0) cv_.notify_all();
      }
    }
  }

  const OrientationProblem& p_;
  const SolveOptions& o_;
  const BidirectedDigraph& d_;
  const int arcs_;
  const int zCol_;
  const Clock::time_point start_;
  std::vector<double> arcCost_;
  bool integralObjective_ = false;
  std::optional<TemplateCatalog> catalog_;

  std::mutex mu_;
  std::condition_variable cv_;
  CutPool pool_;
  std::priority_queue<Node, std::vector<Node>, WorseBound> open_;
  int active_ = 0;
  bool stop_ = false;
  bool timedOut_ = false;
  long nextId_ = 0;
  long nodes_ = 0;
  std::optional<ModelPoint> incumbent_;
  std::atomic<double> incumbentValue_{kInf};
  std::array<long, kRowClassCount> cutCounts_{};
  std::vector<double> rootHistory_;
  std::vector<NodeTrace> traces_;
  std::vector<ModelPoint> incumbents_;
};

}  // namespace

SolveReport solveOrientationProblem(const OrientationProblem& problem,
                                    const SolveOptions& options) {
  return BranchAndCut(problem, options).run();
}

SolveReport solveAO(const UndirectedGraph& g, int kappa, const SolveOptions& options) {
  OrientationProblem problem;
  problem.digraph = BidirectedDigraph(g);
  problem.config.kappa = kappa;
  problem.config.variant = Variant::AO;
  problem.config.validate();
  const auto colors = greedyColoring(g);
  problem.initialIncumbent = ModelPoint::fromArcSet(orientByLabels(g, colors).toArcSet(), 0.0);
  const int clique = static_cast<int>(greedyClique(g).size());
  problem.objectiveLowerBound = std::min(kappa, std::max(clique - 1, 0));
  return solveOrientationProblem(problem, options);
}

namespace {

// Minimum diameter of a connected graph.
DiameterResult solveComponent(const UndirectedGraph& g, std::optional<int> upperBound,
                              const SolveOptions& options, Clock::time_point start) {
  DiameterResult result;
  const BidirectedDigraph d(g);
  result.orientation = orientByLabels(g, greedyColoring(g));
  result.diameter = dagLongestPath(d, result.orientation.toArcSet());

  // z* < kappa means no kappa-arc path is fully oriented, so the optimal
  // orientation has diameter below kappa.
  auto probe = [&](int kappa) -> std::optional<bool> {
    SolveOptions opts = options;
    opts.timeLimitSeconds =
        options.timeLimitSeconds - std::chrono::duration<double>(Clock::now() - start).count();
    result.kappaSequence.push_back(kappa);
    if (opts.timeLimitSeconds <= 0) {
      result.status = SolveStatus::TimeLimit;
      return std::nullopt;
    }
    result.reports.push_back(solveAO(g, kappa, opts));
    const SolveReport& report = result.reports.back();
    if (report.status != SolveStatus::Optimal || !report.bestPoint) {
      result.status =
          report.status == SolveStatus::Optimal ? SolveStatus::Infeasible : report.status;
      return std::nullopt;
    }
    if (report.objective >= kappa - kIntTol) return false;
    const ArcSet arcs = report.bestPoint->support();
    result.orientation = Orientation::fromArcSet(d, arcs);
    result.diameter = dagLongestPath(d, arcs);
    if (result.diameter >= kappa) throw SolverError("orientation diameter did not decrease");
    return true;
  };

  int kappa = result.diameter;
  if (upperBound) kappa = std::min(kappa, *upperBound);
  while (kappa >= 1) {
    const auto improved = probe(kappa);
    if (!improved) return result;
    if (*improved) {
      kappa = result.diameter;
      continue;
    }
    // Diameter is at least kappa. With a caller bound below the greedy
    // diameter an orientation attaining kappa may still be missing.
    if (result.diameter > kappa) {
      const auto found = probe(kappa + 1);
      if (!found) return result;
      if (!*found) throw InputError("upper bound is below the minimum diameter");
    }
    break;
  }
  result.status = SolveStatus::Optimal;
  return result;
}

}  // namespace

DiameterResult minDiameterOrientation(const UndirectedGraph& g, std::optional<int> upperBound,
                                      const SolveOptions& options) {
  const auto start = Clock::now();
  DiameterResult merged;
  merged.orientation.forward.assign(g.edgeCount(), true);
  for (const auto& comp : connectedComponents(g)) {
    const UndirectedGraph sub = inducedSubgraph(g, comp);
    if (sub.edgeCount() == 0) continue;
    DiameterResult part = solveComponent(sub, upperBound, options, start);
    merged.kappaSequence.insert(merged.kappaSequence.end(), part.kappaSequence.begin(),
                                part.kappaSequence.end());
    for (auto& r : part.reports) merged.reports.push_back(std::move(r));
    if (part.status != SolveStatus::Optimal) {
      merged.status = part.status;
      return merged;
    }
    for (int e = 0; e < sub.edgeCount(); ++e) {
      const Edge& le = sub.edge(e);
      const int u = comp[le.u], v = comp[le.v];
      const int ge = g.edgeIndex(u, v);
      // Local order of comp is increasing, so local u<v maps to global u<v.
      merged.orientation.forward[ge] = part.orientation.forward[e];
    }
    merged.diameter = std::max(merged.diameter, part.diameter);
  }
  merged.status = SolveStatus::Optimal;
  return merged;
}

ColoringResult chromaticNumber(const UndirectedGraph& g, const SolveOptions& options) {
  ColoringResult result;
  result.diameter = minDiameterOrientation(g, std::nullopt, options);
  result.status = result.diameter.status;
  if (result.status != SolveStatus::Optimal) return result;
  const BidirectedDigraph d(g);
  result.classes = sourceDecomposition(d, result.diameter.orientation.toArcSet());
  result.chromatic = static_cast<int>(result.classes.size());
  return result;
}

bool checkDiameterLoadBound(const UndirectedGraph& g, int kappa, const Orientation& orientation) {
  const BidirectedDigraph d(g);
  const ArcSet arcs = orientation.toArcSet();
  const int q = dagLongestPath(d, arcs);
  if (kappa < q + 1) throw ContractViolation("kappa must exceed the orientation's diameter");
  ModelConfig cfg;
  cfg.kappa = kappa;
  cfg.variant = Variant::AO;
  const double z = kappa - kappa / (q + 1);
  return checkIntegralFeasible(d, cfg, ModelPoint::fromArcSet(arcs, z)).feasible;
}

}  // namespace aopc
