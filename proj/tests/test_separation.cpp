#include <doctest.h>

#include <random>

#include "aopc/named_graphs.hpp"
#include "aopc/separation.hpp"
#include "oracles.hpp"

using namespace aopc;

namespace {

ModelPoint uniform(const BidirectedDigraph& d, double w, double z) {
  return {std::vector<double>(d.arcCount(), w), z};
}

// Largest violation over every elementary cycle, by exhaustive listing.
double worstCycle(const UndirectedGraph& g, const ModelPoint& p) {
  double worst = -1e9;
  oracle::forEachCycle(g, [&](const std::vector<int>& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
      s += p.w[oracle::arcOf(g, c[k], c[(k + 1) % c.size()])];
    worst = std::max(worst, s - (static_cast<double>(c.size()) - 1.0));
  });
  return worst;
}

double worstPath(const UndirectedGraph& g, const ModelPoint& p, int kappa) {
  double worst = -1e9;
  oracle::forEachPath(g, kappa, [&](const std::vector<int>& q) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) s += p.w[oracle::arcOf(g, q[k], q[k + 1])];
    worst = std::max(worst, s - p.z);
  });
  return worst;
}

std::vector<UndirectedGraph> smallGraphs() {
  std::vector<UndirectedGraph> out;
  for (int n = 2; n <= 5; ++n)
    for (auto& g : oracle::connectedGraphs(n))
      if (g.edgeCount() <= 6) out.push_back(std::move(g));
  return out;
}

}  // namespace

TEST_CASE("separateCycle examples") {
  const BidirectedDigraph k3(graphs::complete(3));
  const auto rows = separateCycle(k3, uniform(k3, 0.9, 0.0));
  int two = 0, three = 0;
  for (const auto& r : rows) {
    if (r.coeffs.size() == 2) {
      ++two;
      CHECK(r.violation(uniform(k3, 0.9, 0.0)) == doctest::Approx(0.8));
    }
    if (r.coeffs.size() == 3) {
      ++three;
      CHECK(r.violation(uniform(k3, 0.9, 0.0)) == doctest::Approx(0.7));
    }
  }
  CHECK(two == 3);
  CHECK(three == 2);
  CHECK(separateCycle(k3, uniform(k3, 0.5, 0.0)).empty());
}

TEST_CASE("separatePathK examples") {
  const BidirectedDigraph k3(graphs::complete(3));
  const auto p = uniform(k3, 0.5, 0.75);
  const auto rows = separatePathK(k3, p, 2);
  CHECK(rows.size() == 6);
  for (const auto& r : rows) CHECK(r.violation(p) == doctest::Approx(0.25));

  const auto k3g = graphs::complete(3);
  const auto trans = ModelPoint::fromArcSet(orientByLabels(k3g, std::vector<int>{0, 1, 2}).toArcSet(), 2.0);
  CHECK(separatePathK(k3, trans, 2).empty());

  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    auto q = oracle::randomPoint(k3.arcCount(), 2, rng);
    q.z = 2.0;
    CHECK(separatePathK(k3, q, 2).empty());
  }
}

TEST_CASE("template separation examples") {
  const BidirectedDigraph k3(graphs::complete(3));
  const auto p = uniform(k3, 2.0 / 3.0, 1.9);
  const auto rows = separateTemplateClasses(k3, p, 2);
  bool found = false;
  for (const auto& r : rows)
    if (r.tag == RowClass::CycleZ) {
      found = true;
      CHECK(r.violation(p) == doctest::Approx(0.1));
    }
  CHECK(found);

  // A star has no triangles, so no apex structure for the kappa-1 paths.
  const BidirectedDigraph star(graphs::star(4));
  CHECK(pathKm1Rows(star, 3).empty());
}

TEST_CASE("cycle and path separation are exact on small graphs") {
  std::mt19937_64 rng(11);
  for (const auto& g : smallGraphs()) {
    const BidirectedDigraph d(g);
    for (int t = 0; t < 60; ++t) {
      const int kappa = 1 + static_cast<int>(rng() % 3);
      const ModelPoint p = oracle::randomPoint(d.arcCount(), kappa, rng);
      const auto cyc = separateCycle(d, p);
      CHECK(cyc.empty() == (worstCycle(g, p) <= 1e-6));
      for (const auto& r : cyc) CHECK(r.violation(p) > 1e-6);

      SeparationConfig cfg;
      cfg.maxCutsPerClass = 1000;
      const auto paths = separatePathK(d, p, kappa, cfg);
      const double worst = worstPath(g, p, kappa);
      CHECK(paths.empty() == (worst <= 1e-6));
      for (const auto& r : paths) CHECK(r.violation(p) > 1e-6);
      if (!paths.empty()) {
        double best = 0.0;
        for (const auto& r : paths) best = std::max(best, r.violation(p));
        CHECK(best == doctest::Approx(worst));
      }
    }
  }
}

TEST_CASE("separated rows are valid for every feasible integral point") {
  std::mt19937_64 rng(13);
  for (auto name : {"K3", "K4", "C4", "paw", "P4", "C5"}) {
    const auto g = graphs::byName(name);
    const BidirectedDigraph d(g);
    for (int kappa = 2; kappa <= 3; ++kappa) {
      const auto feasible = oracle::feasiblePoints(g, kappa);
      for (int t = 0; t < 30; ++t) {
        const auto p = oracle::randomPoint(d.arcCount(), kappa, rng);
        std::vector<LinearRow> rows = separateCycle(d, p);
        for (auto& r : separatePathK(d, p, kappa)) rows.push_back(r);
        for (auto& r : separateTemplateClasses(d, p, kappa)) rows.push_back(r);
        for (const auto& r : rows) {
          CHECK(r.violation(p) > 1e-6);
          for (const auto& f : feasible) CHECK(r.violation(f) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("integral feasible points are never separated") {
  for (auto name : {"K4", "C5", "paw"}) {
    const auto g = graphs::byName(name);
    const BidirectedDigraph d(g);
    for (int kappa = 1; kappa <= 3; ++kappa)
      for (const auto& f : oracle::feasiblePoints(g, kappa)) {
        CHECK(separateCycle(d, f).empty());
        CHECK(separatePathK(d, f, kappa).empty());
        CHECK(separateTemplateClasses(d, f, kappa).empty());
      }
  }
}

TEST_CASE("template catalog sampling respects the cap") {
  const BidirectedDigraph d(graphs::byName("petersen"));
  SeparationConfig cfg;
  cfg.templateCap = 5;
  const TemplateCatalog cat(d, 3, cfg);
  for (auto c : {RowClass::CycleZ, RowClass::PathKm1, RowClass::PathKm2, RowClass::CycleArcs,
                 RowClass::AdjacentPaths}) {
    CHECK(cat.rows(c).size() <= 5);
    for (const auto& r : cat.rows(c)) CHECK(r.tag == c);
  }
  const TemplateCatalog again(d, 3, cfg);
  CHECK(again.totalRows() == cat.totalRows());
  for (std::size_t k = 0; k < cat.rows(RowClass::PathKm2).size(); ++k)
    CHECK(cat.rows(RowClass::PathKm2)[k].sameInequality(again.rows(RowClass::PathKm2)[k]));
}
