#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/exact.hpp"

namespace potts {

/// Conjugacy class (under S_l) of cyclic-group elements: d cycles of length
/// n1, level l = d * n1.
struct ClassLabel {
  int d = 1;
  int n1 = 1;
  int level() const { return d * n1; }
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// Irreducible representation D_k of C_l; k = l is the identity irrep.
struct IrrepLabel {
  int l = 1;
  int k = 1;
};

namespace nt {

namespace detail {
inline void require_positive(long n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": argument must be >= 1");
}
}  // namespace detail

inline std::vector<int> divisors(int n) {
  detail::require_positive(n, "divisors");
  std::vector<int> small, large;
  for (int d = 1; static_cast<long>(d) * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Number of divisors.
inline int divisor_count(int n) { return static_cast<int>(divisors(n).size()); }

inline int mobius(int n) {
  detail::require_positive(n, "mobius");
  int result = 1;
  for (int p = 2; static_cast<long>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

inline int totient(int n) {
  detail::require_positive(n, "totient");
  int result = n;
  for (int p = 2; static_cast<long>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

inline void require_divisor(int l, int d) {
  detail::require_positive(l, "level");
  if (d < 1 || l % d != 0) {
    throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(l));
  }
}

/// Exponents a in 1..l for which E_l^a consists of d cycles of length l/d.
inline std::vector<int> class_members(int l, int d) {
  require_divisor(l, d);
  std::vector<int> out;
  const int m = l / d;
  for (int n = 1; n <= m; ++n) {
    if (std::gcd(n, m) == 1) out.push_back(d * n);
  }
  return out;
}

/// Sum over a in A_d of exp(2 pi i k a / l), evaluated with the Ramanujan-sum
/// closed form. Always a rational integer.
inline long class_char_sum(int l, int d, int k) {
  require_divisor(l, d);
  if (k < 1 || k > l) throw std::invalid_argument("irrep index out of range 1..l");
  const int m = l / std::gcd(k, l);
  const int r = m / std::gcd(m, d);
  const long num = static_cast<long>(mobius(r)) * totient(l / d);
  if (num % totient(r) != 0) throw std::logic_error("class_char_sum: non-integral closed form");
  return num / totient(r);
}

/// Direct complex-exponential evaluation of class_char_sum.
inline ComplexF class_char_sum_direct(int l, int d, int k) {
  ComplexF acc{0.0, 0.0};
  for (int a : class_members(l, d)) {
    // Reduce k*a mod l first so the angle stays small.
    const double angle = 2.0 * M_PI * static_cast<double>((static_cast<long>(k) * a) % l) / l;
    acc += std::polar(1.0, angle);
  }
  return acc;
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// Dimension of the level-l connectivity space for width L (indistinguishable
/// marks).
inline mpz_class n_tor(int width, int level) {
  if (width < 0 || level < 0) throw std::invalid_argument("n_tor: negative argument");
  if (level > width) return 0;
  if (level == 0) return mpz_class(binomial(2L * width, width) / (width + 1));
  if (level == 1) return width == 0 ? mpz_class(0) : binomial(2L * width - 1, width - 1);
  return binomial(2L * width, width - level);
}

/// 2 cos(2 pi d e0) as a polynomial in Q, with sqrt(Q) = 2 cos(pi e0).
inline PolyQ loop_weight(int d) {
  if (d < 0) throw std::invalid_argument("loop_weight: d must be >= 0");
  const PolyQ step = PolyQ{-2, 1};
  PolyQ prev{2};
  if (d == 0) return prev;
  PolyQ cur = step;
  for (int i = 1; i < d; ++i) {
    PolyQ next = step * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// The e0 = 1/2 specialization of loop_weight: 2 cos(pi d) = 2 (-1)^d.
inline BigRat loop_weight_at_half(int d) { return BigRat(d % 2 == 0 ? 2 : -2); }

inline long sign_power(long e) { return e % 2 == 0 ? 1 : -1; }

/// (-1)^(l-j) * 2l/(l+j) * C(l+j, l-j), the coefficient of Q^j in the
/// Chebyshev part of the level sum (no (Q-1) tail). Requires l >= 1.
inline BigRat binomial_summand_coefficient(int l, int j) {
  if (l < 1 || j < 0 || j > l) throw std::invalid_argument("binomial summand: need 0 <= j <= l, l >= 1");
  BigRat c(mpz_class(binomial(l + j, l - j) * (2L * l)), mpz_class(l + j));
  return c * BigRat(sign_power(l - j));
}

inline PolyQ binomial_summand(int l, int j) {
  return PolyQ::monomial(binomial_summand_coefficient(l, j), static_cast<std::size_t>(j));
}

namespace detail {
inline PolyQ level_sum_first_branch(int l) {
  PolyQ out;
  for (int j = 0; j <= l; ++j) out += binomial_summand(l, j);
  out += PolyQ{-1, 1} * BigRat(sign_power(l));
  return out;
}
inline PolyQ level_sum_second_branch(int l) {
  PolyQ out;
  for (int j = 0; j <= l; ++j) {
    out += PolyQ::monomial(BigRat(mpz_class(binomial(l + j, l - j) * sign_power(l - j))),
                           static_cast<std::size_t>(j));
  }
  return out;
}
}  // namespace detail

/// Sum of all amplitudes at level l.
inline PolyQ b_level(int l) {
  if (l < 0) throw std::invalid_argument("b_level: l must be >= 0");
  if (l < 2) return detail::level_sum_second_branch(l);
  PolyQ first = detail::level_sum_first_branch(l);
  if (l == 2 && first != detail::level_sum_second_branch(2)) {
    throw std::logic_error("b_level: branches disagree at l = 2");
  }
  return first;
}

/// The Q^j monomial of b_level(l), tail included. These are the coefficients
/// that invert the n_tor matrix, so they are the ones the restricted
/// partition function reconstructions use.
inline PolyQ b_level_term(int l, int j) {
  if (j < 0 || j > l) throw std::invalid_argument("b_level_term: need 0 <= j <= l");
  return PolyQ::monomial(b_level(l).coefficient(static_cast<std::size_t>(j)),
                         static_cast<std::size_t>(j));
}

/// b-tilde for l >= 1, computed from the binomial sum and, independently,
/// from the Chebyshev loop weight; the two must agree exactly.
inline PolyQ b_tilde(int l) {
  if (l < 1) throw std::invalid_argument("b_tilde: l must be >= 1");
  PolyQ from_sum = detail::level_sum_first_branch(l);
  PolyQ from_cos = loop_weight(l) + PolyQ{-1, 1} * BigRat(sign_power(l));
  if (from_sum != from_cos) {
    throw std::logic_error("b_tilde: binomial and Chebyshev routes disagree at l = " +
                           std::to_string(l));
  }
  return from_sum;
}

/// Q^j monomial of b_tilde(d).
inline PolyQ b_tilde_term(int d, int j) {
  if (j < 0 || j > d) return {};
  return PolyQ::monomial(b_tilde(d).coefficient(static_cast<std::size_t>(j)),
                         static_cast<std::size_t>(j));
}

inline void require_irrep(int l, int k) {
  if (l < 1 || k < 1 || k > l) throw std::invalid_argument("irrep index must satisfy 1 <= k <= l");
}

/// Amplitude of the eigenvalues in sector D_k at level l, from the
/// characters of C_l.
inline PolyQ amplitude_character(int l, int k) {
  if (l < 0) throw std::invalid_argument("amplitude_character: l must be >= 0");
  if (l == 0) return PolyQ{1};
  require_irrep(l, k);
  if (l == 1) return b_level(1);
  PolyQ out = b_level(l) / BigRat(l);
  for (int d : divisors(l)) {
    if (d == l) continue;
    long s = class_char_sum(l, d, k);
    if (s != 0) out += b_tilde(d) * BigRat(s, l);
  }
  return out;
}

/// Per-j piece of amplitude_character: summing over j gives the amplitude,
/// summing over k gives b_level_term(l, j).
inline PolyQ amplitude_character_term(int l, int k, int j) {
  if (l == 0) return j == 0 ? PolyQ{1} : PolyQ{};
  require_irrep(l, k);
  if (j < 0 || j > l) return {};
  PolyQ out = b_level_term(l, j) / BigRat(l);
  for (int d : divisors(l)) {
    if (d == l) continue;
    long s = class_char_sum(l, d, k);
    if (s != 0) out += b_tilde_term(d, j) * BigRat(s, l);
  }
  return out;
}

/// Label m = l / gcd(k, l) of the irrep D_k; equal labels share an amplitude.
inline int amplitude_label(int l, int k) {
  require_irrep(l, k);
  return l / std::gcd(k, l);
}

enum class CrossTermNormalization {
  /// Cross term (Q-1) * Lambda(l, m; 1/2) / 2, consistent with the sum rule.
  kNormalized,
  /// Cross term (Q-1) * Lambda(l, m; 1/2) with Lambda's leading factor 2.
  kPrinted,
};

/// Amplitude b^(l,m) from the loop-weight formula, for l >= 2 and m | l.
inline PolyQ amplitude_loop_formula(int l, int m,
                                   CrossTermNormalization norm = CrossTermNormalization::kNormalized) {
  if (l < 2) throw std::invalid_argument("amplitude_loop_formula: l must be >= 2");
  require_divisor(l, m);
  // Lambda(l, m; e0) = sum_d coef_d * 2cos(2 pi d e0) = sum_d coef_d * w_d.
  PolyQ lambda;
  BigRat lambda_half;
  for (int d : divisors(l)) {
    const int r = m / std::gcd(m, d);
    const int mu = mobius(r);
    if (mu == 0) continue;
    BigRat coef(static_cast<long>(mu) * totient(l / d), static_cast<long>(l) * totient(r));
    lambda += loop_weight(d) * coef;
    lambda_half += loop_weight_at_half(d) * coef;
  }
  if (norm == CrossTermNormalization::kNormalized) lambda_half /= BigRat(2);
  return lambda + PolyQ{-1, 1} * lambda_half;
}

inline PolyQ amplitude_sum_rule(int l) {
  if (l < 1) throw std::invalid_argument("amplitude_sum_rule: l must be >= 1");
  PolyQ out;
  for (int k = 1; k <= l; ++k) out += amplitude_character(l, k);
  return out;
}

/// Number of pairwise distinct polynomials among amplitude_character(l, 1..l).
inline int distinct_amplitude_count(int l) {
  std::vector<PolyQ> seen;
  for (int k = 1; k <= l; ++k) {
    PolyQ a = amplitude_character(l, k);
    bool found = false;
    for (const auto& s : seen) found = found || s == a;
    if (!found) seen.push_back(std::move(a));
  }
  return static_cast<int>(seen.size());
}

}  // namespace nt
}  // namespace potts
