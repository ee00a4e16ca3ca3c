#include <doctest.h>

#include <algorithm>
#include <set>

#include "aopc/errors.hpp"
#include "aopc/exact_rank.hpp"
#include "aopc/named_graphs.hpp"
#include "aopc/polytope_lab.hpp"
#include "oracles.hpp"

using namespace aopc;

namespace {

using Key = std::pair<std::vector<double>, double>;

std::set<Key> keys(const std::vector<ModelPoint>& pts) {
  std::set<Key> out;
  for (const auto& p : pts) out.insert({p.w, p.z});
  return out;
}

lab::FaceClass classOf(const UndirectedGraph& g, int kappa, const LinearRow& row) {
  return lab::classifyFace(g, kappa, row).cls;
}

}  // namespace

TEST_CASE("affine dimension basics") {
  const ModelPoint o{{0.0, 0.0, 0.0}, 0.0};
  const ModelPoint a{{1.0, 0.0, 0.0}, 0.0};
  const ModelPoint b{{0.0, 1.0, 0.0}, 0.0};
  const ModelPoint c{{1.0, 1.0, 0.0}, 0.0};
  CHECK(exact::affineDimension(std::vector<ModelPoint>{o}) == 0);
  CHECK(exact::affineDimension(std::vector<ModelPoint>{o, a, b, c}) == 2);
  CHECK(exact::affineDimension(std::vector<ModelPoint>{a, a, a}) == 0);
  // Dyadic fractions are taken exactly: three collinear points stay a line.
  const ModelPoint h{{0.5, 0.0, 0.0}, 0.25};
  const ModelPoint q{{0.25, 0.0, 0.0}, 0.125};
  CHECK(exact::affineDimension(std::vector<ModelPoint>{o, h, q}) == 1);
  // 1e-12 off the line is still off the line.
  const ModelPoint off{{0.25, 0.0, 0.0}, 0.125 + 1e-12};
  CHECK(exact::affineDimension(std::vector<ModelPoint>{o, h, off}) == 2);
}

TEST_CASE("affine dimension agrees with the integer oracle and ignores order") {
  std::mt19937_64 rng(17);
  for (auto name : {"edge", "P3", "K3", "C4", "paw", "star3"}) {
    const auto g = graphs::byName(name);
    for (int kappa = 1; kappa <= 3; ++kappa) {
      auto pts = oracle::feasiblePoints(g, kappa);
      const int ref = oracle::affineRankIntegral(pts);
      CHECK(exact::affineDimension(pts) == ref);
      std::shuffle(pts.begin(), pts.end(), rng);
      CHECK(exact::affineDimension(pts) == ref);
      pts.resize(pts.size() / 2 + 1);
      CHECK(exact::affineDimension(pts) == oracle::affineRankIntegral(pts));
    }
  }
}

TEST_CASE("feasible point enumeration") {
  const auto edge = graphs::singleEdge();
  const auto pts = lab::enumerateFeasiblePoints(edge, 1);
  CHECK(keys(pts) == std::set<Key>{{{0.0, 0.0}, 0.0},
                                   {{0.0, 0.0}, 1.0},
                                   {{1.0, 0.0}, 1.0},
                                   {{0.0, 1.0}, 1.0}});

  const auto k3 = lab::enumerateFeasiblePoints(graphs::complete(3), 2);
  std::set<std::vector<double>> arcSets;
  for (const auto& p : k3) arcSets.insert(p.w);
  CHECK(arcSets.size() == 25);

  for (auto name : {"P3", "K3", "C4", "paw", "K4", "star3"})
    for (int kappa = 1; kappa <= 4; ++kappa) {
      const auto g = graphs::byName(name);
      const auto mine = lab::enumerateFeasiblePoints(g, kappa);
      CHECK(keys(mine) == keys(oracle::feasiblePoints(g, kappa)));
      CHECK(keys(mine).size() == mine.size());
      CHECK(keys(mine).count({std::vector<double>(2 * g.edgeCount(), 0.0), 0.0}) == 1);
    }

  CHECK_THROWS_AS(lab::enumerateFeasiblePoints(graphs::byName("petersen"), 2),
                  UnsupportedInstance);
}

TEST_CASE("polytope dimension examples") {
  CHECK(lab::polytopeDimension(graphs::singleEdge(), 1) == 3);
  CHECK(lab::polytopeDimension(graphs::path(3), 2) == 5);
  CHECK(lab::polytopeDimension(graphs::complete(3), 2) == 7);
}

TEST_CASE("integral z values span the same affine hull as a rational z grid") {
  // Between L(B) and kappa every rational z is feasible; adding a 1/8 grid
  // must not raise the dimension.
  for (auto name : {"edge", "P3", "K3"})
    for (int kappa = 1; kappa <= 3; ++kappa) {
      const auto g = graphs::byName(name);
      const auto integral = lab::enumerateFeasiblePoints(g, kappa);
      std::vector<ModelPoint> dense;
      std::set<std::vector<double>> seen;
      for (const auto& p : integral) {
        if (!seen.insert(p.w).second) continue;
        double lo = kappa;
        for (const auto& r : integral)
          if (r.w == p.w) lo = std::min(lo, r.z);
        for (double z = lo; z <= kappa + 1e-12; z += 0.125) dense.push_back({p.w, z});
      }
      CHECK(dense.size() > integral.size());
      CHECK(exact::affineDimension(dense) == exact::affineDimension(integral));
    }
}

TEST_CASE("face classification examples") {
  const auto edge = graphs::singleEdge();
  CHECK(classOf(edge, 1, arcLowerBoundRow(0)) == lab::FaceClass::Facet);
  CHECK(classOf(edge, 1, arcUpperBoundRow(0)) == lab::FaceClass::ValidNotFacet);
  CHECK(classOf(edge, 1, zUpperBoundRow(1)) == lab::FaceClass::Facet);
  CHECK(classOf(edge, 1, zLowerBoundRow()) == lab::FaceClass::ValidNotFacet);

  const auto k3 = graphs::complete(3);
  const BidirectedDigraph dk3(k3);
  const VertexPath tri{0, 1, 2};
  CHECK(classOf(k3, 3, buildRowCycle(dk3, tri)) == lab::FaceClass::Facet);
  CHECK(classOf(k3, 2, buildRowCycle(dk3, tri)) == lab::FaceClass::ValidNotFacet);

  const auto p3 = graphs::path(3);
  const BidirectedDigraph dp3(p3);
  CHECK(classOf(p3, 2, buildRowPath(dp3, VertexPath{0, 1, 2}, 2)) == lab::FaceClass::Facet);
  CHECK(classOf(k3, 2, buildRowPath(dk3, VertexPath{0, 1, 2}, 2)) ==
        lab::FaceClass::ValidNotFacet);

  // w_01 <= 0 cuts off a feasible point.
  LinearRow bad;
  bad.coeffs = {{0, 1.0}};
  const auto rep = lab::classifyFace(edge, 1, bad);
  CHECK(rep.cls == lab::FaceClass::Invalid);
  REQUIRE(rep.counterexample);
  CHECK(bad.violation(*rep.counterexample) > 0.0);

  CHECK(lab::faceClassName(lab::FaceClass::Facet) == "facet");
  CHECK(lab::faceClassName(lab::FaceClass::ValidNotFacet) == "valid-not-facet");
  CHECK_THROWS_AS(lab::rowsOfClass(k3, 2, "bogus"), InputError);
}

TEST_CASE("brute-force examples") {
  CHECK(lab::bruteForceMinDiameter(graphs::cycle(5)) == 2);
  CHECK(lab::bruteForceMinDiameter(graphs::complete(4)) == 3);
  CHECK(lab::bruteForceMinDiameter(graphs::star(3)) == 1);
  CHECK(lab::bruteForceMinDiameter(graphs::byName("petersen")) == 2);
  CHECK(lab::bruteForceChromatic(graphs::byName("petersen")) == 3);
  CHECK(lab::bruteForceChromatic(graphs::cycle(5)) == 3);
  CHECK(lab::bruteForceChromatic(UndirectedGraph(3, {})) == 1);
}

TEST_CASE("brute force agrees with the test oracles") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : oracle::connectedGraphs(n)) {
      const int chi = lab::bruteForceChromatic(g);
      CHECK(chi == oracle::chromatic(g));
      CHECK(lab::bruteForceMinDiameter(g) == oracle::minDiameter(g));
      CHECK(chi == 1 + lab::bruteForceMinDiameter(g));
      for (int kappa = 1; kappa <= 3 && g.edgeCount() <= 7; ++kappa)
        CHECK(lab::bruteForceAO(g, kappa) == oracle::aoOptimum(g, kappa));
    }
}
