#include <gtest/gtest.h>

#include "potts/spectrum.hpp"

using namespace potts;

TEST(Spectrum, SectorsOfSquareTwoByThree) {
  const auto g = build_torus(LatticeKind::kSquare, 2, 3, BigRat(1));
  const BigRat q(2);
  const auto t = transfer_characters(g, FixedQ(q));
  for (int l = 0; l <= 2; ++l) {
    for (int k = 1; k <= std::max(l, 1); ++k) {
      const auto sp = sector_spectrum(g, l, k, q);
      EXPECT_EQ(mpz_class(sp.dimension), nt::n_tor(2, l));
      EXPECT_EQ(static_cast<int>(sp.eigenvalues.size()), sp.dimension);
      EXPECT_EQ(sp.power, 3);
      EXPECT_LT(sp.projector_idempotence, 1e-12);
      EXPECT_NEAR(sp.projector_rank, sp.dimension, 1e-12);
      const ComplexF target = l == 0 ? ComplexF(t.level[0].to_double(), 0.0) : character_K(t.twisted[static_cast<std::size_t>(l)], l, k);
      EXPECT_LT(std::abs(sp.power_sum() - target) / std::max(1.0, std::abs(target)), 1e-9) << l << "," << k;
      if (l > 0) {
        EXPECT_LT(std::abs(projected_trace(g, l, k, q) - target) / std::max(1.0, std::abs(target)), 1e-9);
      }
      for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i) {
        EXPECT_GE(std::abs(sp.eigenvalues[i - 1]) + 1e-9, std::abs(sp.eigenvalues[i]));
      }
    }
  }
}

TEST(Spectrum, InhomogeneousUsesPeriodProduct) {
  const auto g = build_torus(LatticeKind::kTriangular, 2, 2, EdgeCouplingSpec{Seeded{1}});
  const BigRat q(3);
  const auto t = transfer_characters(g, FixedQ(q));
  for (int k = 1; k <= 2; ++k) {
    const auto sp = sector_spectrum(g, 2, k, q);
    EXPECT_EQ(sp.power, 1);
    const ComplexF target = character_K(t.twisted[2], 2, k);
    EXPECT_LT(std::abs(sp.power_sum() - target) / std::max(1.0, std::abs(target)), 1e-9);
  }
}

TEST(Spectrum, Guards) {
  const auto g = build_torus(LatticeKind::kSquare, 2, 2, BigRat(1));
  EXPECT_THROW(sector_spectrum(g, 2, 1, BigRat(0)), std::invalid_argument);
  EXPECT_THROW(sector_spectrum(g, 2, 3, BigRat(2)), std::invalid_argument);
  const auto big = build_torus(LatticeKind::kSquare, 8, 1, BigRat(1));
  EXPECT_THROW(sector_spectrum(big, 2, 1, BigRat(2)), std::invalid_argument);
}

TEST(Spectrum, EigenvalueOrder) {
  std::vector<ComplexF> v = {{1, 0}, {-3, 0}, {0, 2}, {2, 0}};
  sort_eigenvalues(v);
  EXPECT_EQ(v[0], ComplexF(-3, 0));
  EXPECT_EQ(v[1], ComplexF(2, 0));
  EXPECT_EQ(v[2], ComplexF(0, 2));
  EXPECT_EQ(v[3], ComplexF(1, 0));
}
