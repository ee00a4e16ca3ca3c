// Command-line front end: color, orient, fap and polytope subcommands, each
// printing one JSON report on stdout and a short summary on stderr.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <json.hpp>
#include <sstream>

#include "aopc/errors.hpp"
#include "aopc/exact_rank.hpp"
#include "aopc/fap.hpp"
#include "aopc/io.hpp"
#include "aopc/polytope_lab.hpp"
#include "aopc/solver.hpp"

namespace {

using nlohmann::json;
using namespace aopc;

constexpr int kExitOptimal = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitOracleMismatch = 4;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[md[k] >> 4]);
    out.push_back(hex[md[k] & 15]);
  }
  return out;
}

int exitFor(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::TimeLimit: return kExitTimeout;
  }
  return kExitError;
}

struct Common {
  double timeLimit = 300.0;
  std::uint64_t seed = 1;
  int threads = 1;
  bool oracle = false;

  SolveOptions options() const {
    SolveOptions o;
    o.timeLimitSeconds = timeLimit;
    o.seed = seed;
    o.separation.seed = seed;
    o.threads = threads;
    return o;
  }
};

json instanceJson(const std::string& path, const std::string& text) {
  return {{"file", path}, {"sha256", sha256Hex(text)}};
}

json graphInstanceJson(const std::string& path, const std::string& text,
                       const UndirectedGraph& g) {
  json j = instanceJson(path, text);
  j["vertices"] = g.vertexCount();
  j["edges"] = g.edgeCount();
  return j;
}

// Bound histories and cut counts of a sequence of solves.
void mergeReports(json& out, const std::vector<SolveReport>& reports) {
  std::array<long, kRowClassCount> cuts{};
  long nodes = 0;
  json history = json::array();
  for (const auto& r : reports) {
    for (int c = 0; c < kRowClassCount; ++c) cuts[c] += r.cutCounts[c];
    nodes += r.nodes;
    history.push_back(r.boundHistory);
  }
  out["boundHistory"] = history;
  out["cutCounts"] = io::cutCountsJson(cuts);
  out["nodes"] = nodes;
}

int emit(const json& report, int code) {
  std::cout << report.dump(2) << "\n";
  return code;
}

int runColor(const std::string& path, const Common& c) {
  const std::string text = readFile(path);
  const UndirectedGraph g = io::parseDimacs(text);
  const BidirectedDigraph d(g);
  const ColoringResult res = chromaticNumber(g, c.options());

  json out{{"command", "color"}, {"instance", graphInstanceJson(path, text, g)}};
  out["status"] = solveStatusName(res.status);
  mergeReports(out, res.diameter.reports);
  out["kappaSequence"] = res.diameter.kappaSequence;
  if (res.status == SolveStatus::Optimal) {
    std::vector<int> color(g.vertexCount(), -1);
    for (std::size_t k = 0; k < res.classes.size(); ++k)
      for (int v : res.classes[k]) color[v] = static_cast<int>(k);
    for (const Edge& e : g.edges())
      if (color[e.u] == color[e.v]) throw SolverError("emitted coloring is not proper");
    if (!isAcyclic(d, res.diameter.orientation.toArcSet()))
      throw SolverError("emitted orientation is cyclic");
    out["chromatic"] = res.chromatic;
    out["classes"] = res.classes;
    out["diameter"] = res.diameter.diameter;
    out["orientation"] = io::orientationJson(g, res.diameter.orientation);
  }
  std::cerr << "color: " << solveStatusName(res.status) << ", chromatic " << res.chromatic
            << "\n";
  int code = exitFor(res.status);
  if (c.oracle) {
    const int brute = lab::bruteForceChromatic(g);
    const bool agree = res.status == SolveStatus::Optimal && brute == res.chromatic;
    out["oracle"] = {{"chromatic", brute}, {"agrees", agree}};
    if (!agree && code == kExitOptimal) code = kExitOracleMismatch;
  }
  return emit(out, code);
}

int runOrient(const std::string& path, int kappa, const Common& c) {
  const std::string text = readFile(path);
  const UndirectedGraph g = io::parseDimacs(text);
  const BidirectedDigraph d(g);
  const SolveReport rep = solveAO(g, kappa, c.options());

  json out{{"command", "orient"}, {"instance", graphInstanceJson(path, text, g)},
           {"kappa", kappa}};
  out["status"] = solveStatusName(rep.status);
  mergeReports(out, {rep});
  out["boundHistory"] = rep.boundHistory;
  if (rep.bestPoint) {
    ModelConfig cfg;
    cfg.kappa = kappa;
    if (!checkIntegralFeasible(d, cfg, *rep.bestPoint).feasible)
      throw SolverError("emitted orientation fails the feasibility check");
    out["z"] = rep.objective;
    out["orientation"] = io::orientationJson(g, Orientation::fromArcSet(d, rep.bestPoint->support()));
  }
  std::cerr << "orient: " << solveStatusName(rep.status) << ", z " << rep.objective << ", "
            << rep.nodes << " nodes\n";
  int code = exitFor(rep.status);
  if (c.oracle) {
    const int brute = lab::bruteForceAO(g, kappa);
    const bool agree = rep.status == SolveStatus::Optimal && brute == rep.objective;
    out["oracle"] = {{"z", brute}, {"agrees", agree}};
    if (!agree && code == kExitOptimal) code = kExitOracleMismatch;
  }
  return emit(out, code);
}

int runFap(const std::string& path, const Common& c) {
  const std::string text = readFile(path);
  const fap::FapInstance inst = io::parseFapJson(text);
  const fap::FapResult res = fap::solve(inst, c.options());
  const char* mode = !inst.spectrum          ? "min-spectrum"
                     : !inst.hasSoftPairs() ? "fixed-spectrum"
                                            : "soft-cost";

  json out{{"command", "fap"}, {"instance", instanceJson(path, text)}, {"mode", mode}};
  out["status"] = solveStatusName(res.status);
  mergeReports(out, res.reports);
  if (res.assignment) {
    if (!fap::assignmentFeasible(inst, *res.assignment, res.spectrum))
      throw SolverError("emitted frequency assignment is infeasible");
    out["spectrum"] = res.spectrum;
    out["frequencies"] = res.assignment->freq;
    out["violatedPairs"] = res.assignment->violatedPairs;
    out["cost"] = res.assignment->totalCost;
  }
  std::cerr << "fap (" << mode << "): " << solveStatusName(res.status) << "\n";
  int code = exitFor(res.status);
  if (c.oracle) {
    const auto brute = lab::bruteForceFap(inst);
    std::optional<double> mine;
    if (res.status == SolveStatus::Optimal)
      mine = !inst.spectrum ? res.spectrum : res.assignment->totalCost;
    // The oracle only looks at frequencies up to 6, so an empty oracle
    // answer is consistent with a minimum spectrum above 6.
    const bool agree = brute ? mine && *mine == *brute
                       : !inst.spectrum ? mine && *mine > 6
                                        : res.status == SolveStatus::Infeasible;
    out["oracle"] = {{"value", brute ? json(*brute) : json(nullptr)}, {"agrees", agree}};
    if (!agree && (code == kExitOptimal || code == kExitInfeasible)) code = kExitOracleMismatch;
  }
  return emit(out, code);
}

int runPolytope(const std::string& path, int kappa, const std::string& cls, const Common& c) {
  const std::string text = readFile(path);
  const UndirectedGraph g = io::parseDimacs(text);
  const auto points = lab::enumerateFeasiblePoints(g, kappa);
  const int dim = exact::affineDimension(points);

  json out{{"command", "polytope"}, {"instance", graphInstanceJson(path, text, g)},
           {"kappa", kappa}, {"status", "optimal"}};
  out["points"] = points.size();
  out["dimension"] = dim;
  if (!cls.empty()) {
    json rows = json::array();
    std::map<std::string, int> tally;
    for (const LinearRow& row : lab::rowsOfClass(g, kappa, cls)) {
      const auto face = lab::classifyFace(points, dim, row);
      json coeffs = json::array();
      for (const auto& [a, v] : row.coeffs) coeffs.push_back({a, v});
      rows.push_back({{"coeffs", coeffs},
                      {"zCoeff", row.zCoeff},
                      {"rhs", row.rhs},
                      {"class", lab::faceClassName(face.cls)},
                      {"tightDimension", face.tightDimension}});
      ++tally[std::string(lab::faceClassName(face.cls))];
    }
    out["classify"] = {{"rowClass", cls}, {"counts", tally}, {"rows", rows}};
  }
  std::cerr << "polytope: " << points.size() << " points, dimension " << dim << "\n";
  int code = kExitOptimal;
  if (c.oracle) {
    const int expected = 2 * g.edgeCount() + 1;
    out["oracle"] = {{"expectedDimension", expected}, {"agrees", dim == expected}};
    if (dim != expected) code = kExitOracleMismatch;
  }
  return emit(out, code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acyclic-orientation branch-and-cut for coloring and frequency assignment"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--time-limit", common.timeLimit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Seed for template sampling");
  app.add_option("--threads", common.threads, "Branch-and-bound workers")
      ->check(CLI::Range(1, 256));
  app.add_flag("--oracle", common.oracle, "Cross-check against brute force (small inputs)");

  std::string file;
  int kappa = 1;
  std::string cls;
  auto* color = app.add_subcommand("color", "Chromatic number and coloring");
  color->add_option("file", file, "DIMACS .col file")->required();
  auto* orient = app.add_subcommand("orient", "Solve AO(G, kappa)");
  orient->add_option("file", file, "DIMACS .col file")->required();
  orient->add_option("--kappa", kappa, "Path length bound")->required()->check(CLI::PositiveNumber);
  auto* fapCmd = app.add_subcommand("fap", "Frequency assignment from a JSON instance");
  fapCmd->add_option("file", file, "FAP JSON file")->required();
  auto* poly = app.add_subcommand("polytope", "Dimension and face classification");
  poly->add_option("file", file, "DIMACS .col file")->required();
  poly->add_option("--kappa", kappa, "Path length bound")->required()->check(CLI::PositiveNumber);
  poly->add_option("--classify", cls, "Row class to classify");

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {color, orient, fapCmd, poly}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*color) return runColor(file, common);
    if (*orient) return runOrient(file, kappa, common);
    if (*fapCmd) return runFap(file, common);
    if (*poly) return runPolytope(file, kappa, cls, common);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
