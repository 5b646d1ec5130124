#include <gtest/gtest.h>

#include <random>

#include "potts/oracle.hpp"
#include "potts/transfer.hpp"

using namespace potts;

namespace {

BigRat R(const char* s) { return BigRat::parse(s); }

StateVector<BigRat> unit(const ConnState& s) { return {{s, BigRat(1)}}; }

StateVector<BigRat> shifted(const StateVector<BigRat>& v, int l, int a) {
  StateVector<BigRat> out;
  for (const auto& [s, c] : v) out.emplace(apply_mark_shift(s, {l, a}), c);
  return out;
}

int unmarked_blocks(const ConnState& s) { return s.blocks() - s.level(); }

}  // namespace

TEST(Transfer, ZeroCouplingRow) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    const auto g = build_torus(kind, 4, 2, BigRat(0));
    const BigRat q = R("5/2");
    for (int l = 0; l <= 4; ++l) {
      TransferEngine<FixedQ> engine(g, l, FixedQ(q));
      for (const auto& s : engine.basis()) {
        const auto image = engine.apply_row(unit(s), 0);
        if (l > 0) {
          EXPECT_TRUE(image.empty());
          continue;
        }
        ASSERT_EQ(image.size(), 1U);
        const ConnState fresh{{0, 1, 2, 3}, {-1, -1, -1, -1}};
        EXPECT_EQ(image.begin()->first, fresh);
        EXPECT_EQ(image.begin()->second, q.pow(static_cast<unsigned>(unmarked_blocks(s))));
      }
    }
  }
}

TEST(Transfer, AllMarkedRow) {
  // Square: only the longitudinal keep survives. Triangular: all bridges may
  // also step along the diagonals together, moving every label back by one.
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    const auto g = build_torus(kind, 3, 2, EdgeCouplingSpec{Seeded{5}});
    TransferEngine<FixedQ> engine(g, 3, FixedQ(BigRat(2)));
    for (int x = 0; x < 2; ++x) {
      BigRat keep(1);
      BigRat diagonal(1);
      for (int y = 0; y < 3; ++y) {
        keep *= g.edge(g.edge_index(EdgeFamily::kLongitudinal, x, y)).coupling;
        if (kind == LatticeKind::kTriangular) diagonal *= g.edge(g.edge_index(EdgeFamily::kDiagonal, x, y)).coupling;
      }
      for (const auto& s : enumerate_labeled_states(3, 3)) {
        StateVector<BigRat> want{{s, keep}};
        if (kind == LatticeKind::kTriangular) want.emplace(apply_mark_shift(s, {3, 2}), diagonal);
        EXPECT_EQ(engine.apply_row(unit(s), x), want) << to_string(kind) << " " << to_string(s, true);
      }
    }
  }
}

TEST(Transfer, CommutesWithMarkShiftExhaustive) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    const auto g = build_torus(kind, 3, 2, EdgeCouplingSpec{Seeded{2}});
    for (int l = 1; l <= 3; ++l) {
      TransferEngine<FixedQ> engine(g, l, FixedQ(R("7/3")));
      for (const auto& s : enumerate_labeled_states(3, l)) {
        for (int a = 1; a < l; ++a) {
          EXPECT_EQ(engine.apply_row(unit(apply_mark_shift(s, {l, a})), 0), shifted(engine.apply_row(unit(s), 0), l, a));
        }
      }
    }
  }
}

TEST(Transfer, CommutesWithMarkShiftSampled) {
  std::mt19937 rng(11);
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    const auto g = build_torus(kind, 4, 2, R("3/7"));
    for (int l = 2; l <= 4; ++l) {
      TransferEngine<FixedQ> engine(g, l, FixedQ(BigRat(3)));
      const auto labeled = enumerate_labeled_states(4, l);
      for (int trial = 0; trial < 20; ++trial) {
        const ConnState& s = labeled[rng() % labeled.size()];
        const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(l - 1));
        EXPECT_EQ(engine.apply_row(unit(apply_mark_shift(s, {l, a})), 1), shifted(engine.apply_row(unit(s), 1), l, a));
      }
    }
  }
}

TEST(Transfer, ImagesStayInBasis) {
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    const auto g = build_torus(kind, 4, 1, BigRat(1));
    for (int l = 0; l <= 4; ++l) {
      TransferEngine<PolyInQ> engine(g, l, PolyInQ{});
      std::set<ConnState> basis;
      for (const auto& s : enumerate_labeled_states(4, l)) basis.insert(s);
      for (const auto& s : engine.basis()) {
        StateVector<PolyQ> v{{s, PolyQ(BigRat(1))}};
        for (const auto& [t, c] : engine.apply_row(v, 0)) {
          EXPECT_EQ(t.level(), l);
          EXPECT_TRUE(basis.count(t)) << to_string(t, true);
        }
      }
    }
  }
}

TEST(Transfer, CharactersMatchOracle) {
  const std::vector<TorusGraph> graphs = {
      build_torus(LatticeKind::kSquare, 2, 2, BigRat(1)),
      build_torus(LatticeKind::kSquare, 3, 3, R("-1/2")),
      build_torus(LatticeKind::kTriangular, 3, 2, R("3/7")),
      build_torus(LatticeKind::kTriangular, 2, 3, EdgeCouplingSpec{Seeded{1}}),
      build_torus(LatticeKind::kSquare, 4, 2, BigRat(1)),
  };
  for (const auto& g : graphs) {
    const FixedQ mode(R("5/2"));
    const auto oracle = characters_from_Z(restricted_partition_functions(g, mode), g.width(), mode);
    const auto transfer = transfer_characters(g, mode);
    EXPECT_EQ(transfer.level, oracle.level) << g.describe();
    EXPECT_EQ(transfer.cls, oracle.cls) << g.describe();
  }
}

TEST(Transfer, PolyCharactersMatchOracle) {
  const auto g = build_torus(LatticeKind::kTriangular, 2, 2, R("3/7"));
  const PolyInQ mode;
  const auto oracle = characters_from_Z(restricted_partition_functions(g, mode), 2, mode);
  const auto transfer = transfer_characters(g, mode);
  EXPECT_EQ(transfer.level, oracle.level);
  EXPECT_EQ(transfer.cls, oracle.cls);
}

TEST(Transfer, LabeledTrace) {
  const auto g = build_torus(LatticeKind::kTriangular, 3, 2, R("2/5"));
  for (int l = 1; l <= 3; ++l) {
    TransferEngine<FixedQ> engine(g, l, FixedQ(BigRat(3)));
    EXPECT_EQ(engine.labeled_trace(), engine.twisted_traces()[0] * BigRat(l));
  }
}

TEST(Transfer, TwistedTraceSymmetry) {
  const auto sq = transfer_characters(build_torus(LatticeKind::kSquare, 3, 3, BigRat(1)), FixedQ(BigRat(2)));
  EXPECT_EQ(sq.twisted[3][1], sq.twisted[3][2]);
  // The triangular lattice is chiral: the twisted traces of E and E^-1 differ.
  const auto tri = transfer_characters(build_torus(LatticeKind::kTriangular, 3, 2, BigRat(1)), FixedQ(BigRat(2)));
  EXPECT_EQ(tri.twisted[3], (std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(2)}));
}

TEST(Transfer, CharacterTransformRoundTrip) {
  const auto t = transfer_characters(build_torus(LatticeKind::kSquare, 4, 2, R("1/3")), FixedQ(BigRat(3)));
  for (int l = 1; l <= 4; ++l) {
    const auto& tt = t.twisted[static_cast<std::size_t>(l)];
    std::vector<ComplexF> chars;
    ComplexF sum{};
    for (int k = 1; k <= l; ++k) {
      chars.push_back(character_K(tt, l, k));
      sum += chars.back();
    }
    EXPECT_NEAR(std::abs(sum - t.level[static_cast<std::size_t>(l)].to_double()), 0.0, 1e-9);
    const auto back = twisted_from_characters(chars);
    for (int a = 0; a < l; ++a) EXPECT_NEAR(std::abs(back[static_cast<std::size_t>(a)] - tt[static_cast<std::size_t>(a)].to_double()), 0.0, 1e-9);
  }
  EXPECT_THROW(character_K(t.twisted[2], 2, 3), std::invalid_argument);
}
