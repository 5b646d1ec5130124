#include <gtest/gtest.h>

#include <map>

#include "potts/homotopy.hpp"

using namespace potts;

namespace {

EdgeMask ring(const TorusGraph& g, EdgeFamily family, int fixed) {
  EdgeMask m = 0;
  const int count = family == EdgeFamily::kLongitudinal ? g.length() : g.width();
  for (int i = 0; i < count; ++i) {
    const int e = family == EdgeFamily::kLongitudinal ? g.edge_index(family, i, fixed) : g.edge_index(family, fixed, i);
    m |= EdgeMask{1} << e;
  }
  return m;
}

EdgeMask full(const TorusGraph& g) { return g.edge_count() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << g.edge_count()) - 1; }

/// Incremental tracker summary for one subset.
ConfigSummary tracked(const TorusGraph& g, EdgeMask m, int* violations = nullptr) {
  ClusterTracker t(g);
  int bonds = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if ((m >> e) & 1U) {
      t.push(e);
      ++bonds;
    }
  }
  if (violations) *violations = t.violations();
  return t.summary(bonds);
}

}  // namespace

TEST(WindingLattice, HermiteReduction) {
  EXPECT_EQ(WindingLattice::span({}).rank, 0);
  auto w = WindingLattice::span({{-2, -1}});
  EXPECT_EQ(w.rank, 1);
  EXPECT_EQ(w.b1, (Vec2{2, 1}));
  w = WindingLattice::span({{0, -3}, {0, 6}});
  EXPECT_EQ(w.rank, 1);
  EXPECT_EQ(w.b1, (Vec2{0, 3}));
  w = WindingLattice::span({{1, 0}, {0, 1}});
  EXPECT_EQ(w.rank, 2);
  w = WindingLattice::span({{2, 1}, {4, 2}, {-2, -1}});
  EXPECT_EQ(w.rank, 1);
  EXPECT_EQ(w.b1, (Vec2{2, 1}));
  w = WindingLattice::span({{2, 0}, {3, 0}});
  EXPECT_EQ(w.rank, 1);
  EXPECT_EQ(w.b1, (Vec2{1, 0}));
  w = WindingLattice::span({{2, 1}, {1, 1}});
  EXPECT_EQ(w.rank, 2);
  EXPECT_EQ(w.b1, (Vec2{1, 0}));
  EXPECT_EQ(w.b2, (Vec2{0, 1}));
}

TEST(FindClusters, Examples) {
  const auto g = build_torus(LatticeKind::kSquare, 3, 3, BigRat(1));
  auto empty = find_clusters(g, 0);
  EXPECT_EQ(empty.size(), 9U);
  for (const auto& c : empty) EXPECT_EQ(c.winding.rank, 0);
  auto all = find_clusters(g, full(g));
  ASSERT_EQ(all.size(), 1U);
  EXPECT_EQ(all[0].winding.rank, 2);
  auto r = find_clusters(g, ring(g, EdgeFamily::kLongitudinal, 0));
  int winding = 0;
  for (const auto& c : r) {
    if (c.winding.rank == 1) {
      ++winding;
      EXPECT_EQ(c.winding.b1, (Vec2{1, 0}));
    }
  }
  EXPECT_EQ(winding, 1);
}

TEST(ClassifyCluster, Examples) {
  EXPECT_EQ(classify_cluster(ClusterInfo{{0}, {}}).tag, HomotopyClass::Tag::kTrivial);
  ClusterInfo c;
  c.winding = WindingLattice::span({{2, 1}});
  EXPECT_EQ(classify_cluster(c), (HomotopyClass{HomotopyClass::Tag::kWind, 2, 1}));
  c.winding = WindingLattice::span({{1, 0}, {0, 1}});
  EXPECT_EQ(classify_cluster(c).tag, HomotopyClass::Tag::kCross);
  c.winding.rank = 1;
  c.winding.b1 = {2, 2};
  EXPECT_THROW(classify_cluster(c), std::logic_error);
}

TEST(SummarizeConfig, Examples) {
  const auto g = build_torus(LatticeKind::kSquare, 3, 3, BigRat(1));
  EXPECT_EQ(summarize_config(g, 0), (ConfigSummary{0, 9, 0, 0}));
  EXPECT_EQ(summarize_config(g, ring(g, EdgeFamily::kLongitudinal, 1)), (ConfigSummary{3, 7, 1, 1}));
  EXPECT_EQ(summarize_config(g, ring(g, EdgeFamily::kTransverse, 1)), (ConfigSummary{3, 7, 0, 0}));
  EXPECT_EQ(summarize_config(g, full(g)), (ConfigSummary{18, 1, 1, 1}));
  const EdgeMask two = ring(g, EdgeFamily::kLongitudinal, 0) | ring(g, EdgeFamily::kLongitudinal, 2);
  EXPECT_EQ(summarize_config(g, two), (ConfigSummary{6, 5, 2, 1}));
}

TEST(FindClusters, DiagonalWinding) {
  // Staircase (0,0) -> (1,0) -> (1,1) -> (0,1) -> (0,0) wraps once each way.
  const auto g = build_torus(LatticeKind::kSquare, 2, 2, BigRat(1));
  const EdgeMask m = (EdgeMask{1} << g.edge_index(EdgeFamily::kLongitudinal, 0, 0)) |
                     (EdgeMask{1} << g.edge_index(EdgeFamily::kTransverse, 1, 0)) |
                     (EdgeMask{1} << g.edge_index(EdgeFamily::kLongitudinal, 1, 1)) |
                     (EdgeMask{1} << g.edge_index(EdgeFamily::kTransverse, 0, 1));
  const auto clusters = find_clusters(g, m);
  bool found = false;
  for (const auto& c : clusters) {
    if (c.winding.rank == 1) {
      EXPECT_EQ(c.winding.b1, (Vec2{1, 1}));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Homotopy, RoutesAgreeAndRootInvariance) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    for (auto [L, N] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
      const auto g = build_torus(kind, L, N, BigRat(1));
      if (g.edge_count() > 18) continue;
      for (EdgeMask m = 0; m < (EdgeMask{1} << g.edge_count()); ++m) {
        int violations = -1;
        const ConfigSummary s = summarize_config(g, m);
        ASSERT_EQ(tracked(g, m, &violations), s) << g.describe() << " mask " << m;
        ASSERT_EQ(violations, 0);
        ASSERT_LE(s.j * s.n1, L);
        if (m % 7 == 0) {
          const auto a = find_clusters(g, m, 0);
          const auto b = find_clusters(g, m, 5);
          ASSERT_EQ(a.size(), b.size());
          std::map<std::vector<int>, WindingLattice> wa;
          for (const auto& c : a) wa[c.vertices] = c.winding;
          for (const auto& c : b) ASSERT_EQ(wa.at(c.vertices), c.winding);
        }
      }
    }
  }
}

TEST(Homotopy, TrackerPopRestores) {
  const auto g = build_torus(LatticeKind::kTriangular, 2, 2, BigRat(1));
  ClusterTracker t(g);
  for (int e = 0; e < g.edge_count(); ++e) t.push(e);
  EXPECT_EQ(t.clusters(), 1);
  EXPECT_EQ(t.cross_clusters(), 1);
  for (int e = 0; e < g.edge_count(); ++e) t.pop();
  EXPECT_EQ(t.clusters(), g.vertex_count());
  EXPECT_EQ(t.summary(0), (ConfigSummary{0, 4, 0, 0}));
}
