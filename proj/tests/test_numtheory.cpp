#include <gtest/gtest.h>

#include <numeric>

#include "potts/numtheory.hpp"

using namespace potts;

TEST(Divisors, Examples) {
  EXPECT_EQ(nt::divisors(12), (std::vector<int>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(nt::divisors(1), (std::vector<int>{1}));
  EXPECT_EQ(nt::divisors(6), (std::vector<int>{1, 2, 3, 6}));
  EXPECT_THROW(nt::divisors(0), std::invalid_argument);
}

TEST(Mobius, Examples) {
  EXPECT_EQ(nt::mobius(1), 1);
  EXPECT_EQ(nt::mobius(6), 1);
  EXPECT_EQ(nt::mobius(4), 0);
  EXPECT_EQ(nt::mobius(30), -1);
  EXPECT_THROW(nt::mobius(0), std::invalid_argument);
}

TEST(Totient, Examples) {
  EXPECT_EQ(nt::totient(1), 1);
  EXPECT_EQ(nt::totient(6), 2);
  EXPECT_EQ(nt::totient(9), 6);
  EXPECT_THROW(nt::totient(0), std::invalid_argument);
}

TEST(Totient, DivisorSumIdentity) {
  for (int l = 1; l <= 200; ++l) {
    int s = 0;
    for (int d : nt::divisors(l)) s += nt::totient(l / d);
    EXPECT_EQ(s, l);
  }
}

TEST(ClassMembers, Examples) {
  EXPECT_EQ(nt::class_members(6, 2), (std::vector<int>{2, 4}));
  EXPECT_EQ(nt::class_members(6, 6), (std::vector<int>{6}));
  EXPECT_EQ(nt::class_members(4, 1), (std::vector<int>{1, 3}));
  EXPECT_EQ(nt::class_members(6, 1), (std::vector<int>{1, 5}));
  EXPECT_THROW(nt::class_members(6, 4), std::invalid_argument);
}

TEST(ClassMembers, PartitionOneToL) {
  for (int l = 1; l <= 30; ++l) {
    std::vector<int> all;
    for (int d : nt::divisors(l)) {
      auto m = nt::class_members(l, d);
      EXPECT_EQ(static_cast<int>(m.size()), nt::totient(l / d));
      all.insert(all.end(), m.begin(), m.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<int> expect(static_cast<std::size_t>(l));
    std::iota(expect.begin(), expect.end(), 1);
    EXPECT_EQ(all, expect);
  }
}

TEST(ClassCharSum, Examples) {
  EXPECT_EQ(nt::class_char_sum(6, 1, 6), 2);
  EXPECT_EQ(nt::class_char_sum(2, 1, 1), -1);
  EXPECT_EQ(nt::class_char_sum(4, 2, 4), 1);
}

TEST(ClassCharSum, ClosedFormMatchesDirectSum) {
  for (int l = 1; l <= 24; ++l) {
    for (int d : nt::divisors(l)) {
      for (int k = 1; k <= l; ++k) {
        const ComplexF direct = nt::class_char_sum_direct(l, d, k);
        EXPECT_LT(std::abs(direct - ComplexF(static_cast<double>(nt::class_char_sum(l, d, k)), 0.0)), 1e-9)
            << l << " " << d << " " << k;
      }
    }
  }
}

TEST(Binomial, NTor) {
  EXPECT_EQ(nt::n_tor(3, 1), 10);
  EXPECT_EQ(nt::n_tor(4, 0), 14);
  EXPECT_EQ(nt::n_tor(4, 2), 28);
  EXPECT_EQ(nt::n_tor(2, 1), 3);
  EXPECT_EQ(nt::n_tor(2, 3), 0);
  EXPECT_EQ(nt::n_tor(0, 0), 1);
}

TEST(LoopWeight, Examples) {
  EXPECT_EQ(nt::loop_weight(1), (PolyQ{-2, 1}));
  EXPECT_EQ(nt::loop_weight(2), (PolyQ{2, -4, 1}));
  for (int d = 0; d <= 12; ++d) {
    EXPECT_EQ(nt::loop_weight(d).eval(BigRat(4)), BigRat(2));
    EXPECT_EQ(nt::loop_weight(d).degree(), d);
    // Q = 0 is e0 = 1/2.
    EXPECT_EQ(nt::loop_weight(d).eval(BigRat(0)), nt::loop_weight_at_half(d));
  }
}

TEST(LevelSum, Examples) {
  EXPECT_EQ(nt::b_level(0), PolyQ(1));
  EXPECT_EQ(nt::b_level(1), (PolyQ{-1, 1}));
  EXPECT_EQ(nt::b_level(2), (PolyQ{1, -3, 1}));
  EXPECT_EQ(nt::detail::level_sum_first_branch(2), nt::detail::level_sum_second_branch(2));
}

TEST(LevelSum, Terms) {
  EXPECT_EQ(nt::b_level_term(2, 2), PolyQ::monomial(BigRat(1), 2));
  EXPECT_EQ(nt::b_level_term(2, 1), PolyQ::monomial(BigRat(-3), 1));
  EXPECT_THROW(nt::b_level_term(2, 3), std::invalid_argument);
  for (int l = 0; l <= 10; ++l) {
    PolyQ s;
    for (int j = 0; j <= l; ++j) s += nt::b_level_term(l, j);
    EXPECT_EQ(s, nt::b_level(l));
  }
}

TEST(LevelSum, PureSummandDiffersOnlyByTail) {
  for (int l = 2; l <= 10; ++l) {
    PolyQ pure;
    for (int j = 0; j <= l; ++j) pure += nt::binomial_summand(l, j);
    EXPECT_EQ(nt::b_level(l) - pure, (PolyQ{-1, 1} * BigRat(nt::sign_power(l))));
  }
}

TEST(LevelSum, InvertsNTorMatrix) {
  // sum_{l=j}^{m} b_j^(l) n_tor(m, l) = delta_{jm} Q^j-coefficient wise.
  for (int m = 0; m <= 8; ++m) {
    for (int j = 0; j <= m; ++j) {
      BigRat s;
      for (int l = j; l <= m; ++l) {
        s += nt::b_level(l).coefficient(static_cast<std::size_t>(j)) * BigRat(nt::n_tor(m, l));
      }
      EXPECT_EQ(s, BigRat(j == m ? 1 : 0)) << m << " " << j;
    }
  }
}

TEST(BTilde, Examples) {
  EXPECT_EQ(nt::b_tilde(1), PolyQ(-1));
  EXPECT_EQ(nt::b_tilde(2), (PolyQ{1, -3, 1}));
  EXPECT_EQ(nt::b_tilde(3), (PolyQ{-1, 8, -6, 1}));
  for (int l = 2; l <= 12; ++l) EXPECT_EQ(nt::b_tilde(l), nt::b_level(l));
  EXPECT_THROW(nt::b_tilde(0), std::invalid_argument);
}

TEST(Amplitude, Examples) {
  EXPECT_EQ(nt::amplitude_character(0, 1), PolyQ(1));
  EXPECT_EQ(nt::amplitude_character(1, 1), (PolyQ{-1, 1}));
  EXPECT_EQ(nt::amplitude_character(2, 2), PolyQ({0, -3, 1}) / BigRat(2));
  EXPECT_EQ(nt::amplitude_character(2, 1), PolyQ({2, -3, 1}) / BigRat(2));
  EXPECT_THROW(nt::amplitude_character(3, 4), std::invalid_argument);
}

TEST(Amplitude, LoopFormulaExamples) {
  EXPECT_EQ(nt::amplitude_loop_formula(2, 1), PolyQ({0, -3, 1}) / BigRat(2));
  EXPECT_EQ(nt::amplitude_loop_formula(2, 2), PolyQ({2, -3, 1}) / BigRat(2));
  EXPECT_THROW(nt::amplitude_loop_formula(1, 1), std::invalid_argument);
  EXPECT_THROW(nt::amplitude_loop_formula(6, 4), std::invalid_argument);
}

TEST(Amplitude, PrintedCrossTermOffByQMinusOne) {
  const PolyQ printed = nt::amplitude_loop_formula(2, 2, nt::CrossTermNormalization::kPrinted);
  EXPECT_EQ(printed - nt::amplitude_character(2, 1), (PolyQ{-1, 1}));
  EXPECT_EQ(printed, PolyQ({0, -1, 1}) / BigRat(2));
}

TEST(Amplitude, RoutesAgree) {
  for (int l = 2; l <= 12; ++l) {
    for (int k = 1; k <= l; ++k) {
      EXPECT_EQ(nt::amplitude_loop_formula(l, nt::amplitude_label(l, k)), nt::amplitude_character(l, k)) << l << " " << k;
      EXPECT_EQ(nt::amplitude_loop_formula(l, nt::amplitude_label(l, k)).eval(BigRat(1)),
                nt::amplitude_character(l, k).eval(BigRat(1)));
    }
  }
}

TEST(Amplitude, DependsOnlyOnGcd) {
  for (int l = 1; l <= 12; ++l) {
    for (int k = 1; k <= l; ++k) {
      for (int k2 = 1; k2 <= l; ++k2) {
        if (std::gcd(k, l) == std::gcd(k2, l)) {
          EXPECT_EQ(nt::amplitude_character(l, k), nt::amplitude_character(l, k2));
        }
      }
    }
  }
}

TEST(Amplitude, SumRule) {
  EXPECT_EQ(nt::amplitude_sum_rule(1), (PolyQ{-1, 1}));
  EXPECT_EQ(nt::amplitude_sum_rule(2), (PolyQ{1, -3, 1}));
  for (int l = 1; l <= 12; ++l) EXPECT_EQ(nt::amplitude_sum_rule(l), nt::b_level(l));
}

TEST(Amplitude, SumRulePerPower) {
  for (int l = 1; l <= 12; ++l) {
    for (int j = 0; j <= l; ++j) {
      PolyQ s;
      for (int k = 1; k <= l; ++k) s += nt::amplitude_character_term(l, k, j);
      EXPECT_EQ(s, nt::b_level_term(l, j));
    }
  }
}

TEST(Amplitude, DistinctCountIsDivisorCount) {
  EXPECT_EQ(nt::distinct_amplitude_count(6), 4);
  EXPECT_EQ(nt::amplitude_character(6, 1), nt::amplitude_character(6, 5));
  EXPECT_EQ(nt::amplitude_character(6, 2), nt::amplitude_character(6, 4));
  EXPECT_EQ(nt::distinct_amplitude_count(4), 3);
  for (int l = 1; l <= 12; ++l) EXPECT_EQ(nt::distinct_amplitude_count(l), nt::divisor_count(l));
}

TEST(Amplitude, PrimeClosedForms) {
  for (int p : {2, 3, 5, 7, 11}) {
    const PolyQ b = nt::b_level(p);
    EXPECT_EQ(nt::amplitude_character(p, p), (b - PolyQ(p - 1)) / BigRat(p));
    for (int k = 1; k < p; ++k) EXPECT_EQ(nt::amplitude_character(p, k), (b + PolyQ(1)) / BigRat(p));
  }
}
