#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potts/numtheory.hpp"
#include "potts/oracle.hpp"
#include "potts/spectrum.hpp"
#include "potts/transfer.hpp"

namespace potts {

struct Check {
  std::string id;
  bool exact = true;
  /// Exact residual (rational or polynomial string) for exact checks.
  std::string residual;
  /// Numeric residual and tolerance for numeric checks.
  double numeric_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string subject;
  std::string mode;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
  void append(const VerificationReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

namespace detail {

template <class S>
Check exact_check(std::string id, const S& expected, const S& got) {
  Check c;
  c.id = std::move(id);
  c.exact = true;
  c.pass = expected == got;
  c.residual = scalar_string(S(got - expected));
  return c;
}

inline Check numeric_check(std::string id, double residual, double tolerance, std::string detail = {}) {
  Check c;
  c.id = std::move(id);
  c.exact = false;
  c.numeric_residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual < tolerance;
  c.detail = std::move(detail);
  return c;
}

inline Check bool_check(std::string id, bool ok, std::string detail = {}) {
  Check c;
  c.id = std::move(id);
  c.exact = true;
  c.pass = ok;
  c.residual = ok ? "0" : "mismatch";
  c.detail = std::move(detail);
  return c;
}

inline std::string pair_tag(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
inline std::string one_tag(int a) { return "(" + std::to_string(a) + ")"; }

template <class S>
OracleCharacters<S> as_oracle_characters(const TransferCharacters<S>& t) {
  OracleCharacters<S> out;
  out.width = t.width;
  out.level = t.level;
  out.cls = t.cls;
  return out;
}

}  // namespace detail

struct GraphVerifyOptions {
  std::vector<BigRat> q_points;
  bool poly_q = true;
  /// Dense sector spectra; only when Q > 0 and the labeled space is small.
  bool spectra = true;
};

/// Exact chain for one graph at one evaluation mode.
template <class Mode>
VerificationReport verify_graph_mode(const TorusGraph& g, const Mode& mode, const std::string& prefix) {
  using S = typename Mode::Scalar;
  VerificationReport r;
  const int L = g.width();
  const auto table = restricted_partition_functions(g, mode);
  const auto oracle = characters_from_Z(table, L, mode);
  const auto transfer = transfer_characters(g, mode);

  for (int l = 0; l <= L; ++l) {
    r.checks.push_back(detail::exact_check(prefix + "k-level-routes" + detail::one_tag(l),
                                           oracle.level[static_cast<std::size_t>(l)],
                                           transfer.level[static_cast<std::size_t>(l)]));
  }
  for (const auto& [key, value] : oracle.cls) {
    auto it = transfer.cls.find(key);
    r.checks.push_back(detail::exact_check(prefix + "k-class-routes" + detail::pair_tag(key.first, key.second),
                                           value, it == transfer.cls.end() ? S{} : it->second));
  }
  if (g.kind() == LatticeKind::kSquare) {
    for (int l = 2; l <= L; ++l) {
      const auto& tt = transfer.twisted[static_cast<std::size_t>(l)];
      bool ok = true;
      for (int a = 1; a < l; ++a) ok = ok && tt[static_cast<std::size_t>(a)] == tt[static_cast<std::size_t>(l - a)];
      r.checks.push_back(detail::bool_check(prefix + "twisted-inverse-symmetry" + detail::one_tag(l), ok));
    }
  }
  const auto back = class_round_trip(oracle, mode);
  for (const auto& [key, value] : oracle.cls) {
    r.checks.push_back(detail::exact_check(prefix + "class-round-trip" + detail::pair_tag(key.first, key.second),
                                           value, back.get_class(key.first, key.second)));
  }
  for (const auto& res : reconstruct_Z(table, detail::as_oracle_characters(transfer), mode)) {
    r.checks.push_back(detail::exact_check(prefix + res.name, res.expected, res.reconstructed));
  }
  return r;
}

/// Labeled-space trace equals l times the standard-basis twisted trace.
inline VerificationReport verify_labeled_trace(const TorusGraph& g, const BigRat& q, const std::string& prefix) {
  VerificationReport r;
  for (int l = 1; l <= g.width(); ++l) {
    TransferEngine<FixedQ> engine(g, l, FixedQ(q));
    const auto tt = engine.twisted_traces();
    r.checks.push_back(detail::exact_check(prefix + "labeled-trace" + detail::one_tag(l), tt[0] * BigRat(l),
                                           engine.labeled_trace()));
  }
  return r;
}

/// Numeric irrep-resolved checks at fixed Q: orthogonality, character sums,
/// amplitude expansion of Z, and (optionally) dense sector spectra.
inline VerificationReport verify_numeric(const TorusGraph& g, const BigRat& q, bool spectra,
                                         const std::string& prefix) {
  VerificationReport r;
  const FixedQ mode(q);
  const int L = g.width();
  const auto transfer = transfer_characters(g, mode);
  const BigRat z = partition_function(g, mode);
  const double zabs = std::abs(z.to_double());

  ComplexF expansion = transfer.level[0].to_double();
  for (int l = 1; l <= L; ++l) {
    const auto& tt = transfer.twisted[static_cast<std::size_t>(l)];
    std::vector<ComplexF> chars;
    ComplexF sum{0.0, 0.0};
    for (int k = 1; k <= l; ++k) {
      chars.push_back(character_K(tt, l, k));
      sum += chars.back();
      expansion += nt::amplitude_character(l, k).eval(q).to_double() * chars.back();
    }
    const double scale = std::max(1.0, std::abs(transfer.level[static_cast<std::size_t>(l)].to_double()));
    r.checks.push_back(detail::numeric_check(prefix + "character-sum" + detail::one_tag(l),
                                             std::abs(sum - transfer.level[static_cast<std::size_t>(l)].to_double()) / scale,
                                             1e-9));
    const auto inverse = twisted_from_characters(chars);
    double worst = 0.0;
    for (int a = 0; a < l; ++a) {
      worst = std::max(worst, std::abs(inverse[static_cast<std::size_t>(a)] - tt[static_cast<std::size_t>(a)].to_double()) /
                                  std::max(1.0, std::abs(tt[static_cast<std::size_t>(a)].to_double())));
    }
    r.checks.push_back(detail::numeric_check(prefix + "character-orthogonality" + detail::one_tag(l), worst, 1e-9));
  }
  r.checks.push_back(detail::numeric_check(prefix + "amplitude-expansion", std::abs(expansion.real() - z.to_double()) / zabs,
                                           1e-8, "Z = " + z.to_string()));
  r.checks.push_back(detail::numeric_check(prefix + "amplitude-expansion-imag", std::abs(expansion.imag()) / zabs, 1e-9));

  if (spectra && q.sign() > 0) {
    for (int l = 0; l <= L; ++l) {
      const auto& tt = transfer.twisted[static_cast<std::size_t>(l)];
      for (int k = 1; k <= std::max(l, 1); ++k) {
        const std::string tag = detail::pair_tag(l, l == 0 ? 0 : k);
        const SectorSpectrum sp = sector_spectrum(g, l, k, q);
        r.checks.push_back(detail::bool_check(prefix + "sector-dimension" + tag,
                                              mpz_class(sp.dimension) == nt::n_tor(L, l) &&
                                                  static_cast<int>(sp.eigenvalues.size()) == sp.dimension,
                                              std::to_string(sp.dimension)));
        r.checks.push_back(detail::numeric_check(prefix + "projector-idempotence" + tag, sp.projector_idempotence, 1e-10));
        r.checks.push_back(detail::numeric_check(prefix + "projector-rank" + tag,
                                                 std::abs(sp.projector_rank - sp.dimension), 1e-9));
        const ComplexF target = l == 0 ? ComplexF(tt[0].to_double(), 0.0) : character_K(tt, l, k);
        const double scale = std::max(1.0, std::abs(target));
        r.checks.push_back(detail::numeric_check(prefix + "sector-power-sum" + tag,
                                                 std::abs(sp.power_sum() - target) / scale, 1e-8));
      }
    }
  }
  return r;
}

/// Sum rules per j and per level up to the graph width.
inline VerificationReport verify_sum_rules(int lmax, const std::string& prefix = {}) {
  VerificationReport r;
  for (int l = 1; l <= lmax; ++l) {
    for (int j = 0; j <= l; ++j) {
      PolyQ sum;
      for (int k = 1; k <= l; ++k) sum += nt::amplitude_character_term(l, k, j);
      r.checks.push_back(detail::exact_check(prefix + "sum-rule-term" + detail::pair_tag(l, j), nt::b_level_term(l, j), sum));
    }
    r.checks.push_back(detail::exact_check(prefix + "sum-rule" + detail::one_tag(l), nt::b_level(l), nt::amplitude_sum_rule(l)));
  }
  return r;
}

inline std::string mode_prefix(const std::string& mode, const BigRat* q) {
  return q ? mode + "[Q=" + q->to_compact() + "]/" : mode + "/";
}

inline VerificationReport verify_graph(const TorusGraph& g, const GraphVerifyOptions& opt) {
  VerificationReport r;
  r.subject = g.describe();
  r.mode = opt.poly_q ? "fixed-q+poly-q" : "fixed-q";
  for (const auto& q : opt.q_points) {
    const std::string prefix = mode_prefix("fixed-q", &q);
    r.append(verify_graph_mode(g, FixedQ(q), prefix));
    if (g.width() <= 3) r.append(verify_labeled_trace(g, q, prefix));
    r.append(verify_numeric(g, q, opt.spectra && g.width() <= 3, prefix));
  }
  if (opt.poly_q) {
    const std::string prefix = mode_prefix("poly-q", nullptr);
    const PolyInQ mode;
    r.append(verify_graph_mode(g, mode, prefix));
    const auto poly_table = restricted_partition_functions(g, mode);
    const auto poly_k = transfer_characters(g, mode);
    for (const auto& q : opt.q_points) {
      const FixedQ fixed(q);
      const auto fixed_table = restricted_partition_functions(g, fixed);
      bool ok = poly_table.total().eval(q) == fixed_table.total();
      for (const auto& [key, value] : poly_table.z) ok = ok && value.eval(q) == fixed_table.get(key.first, key.second);
      const auto fixed_k = transfer_characters(g, fixed);
      for (int l = 0; l <= g.width(); ++l) {
        ok = ok && poly_k.level[static_cast<std::size_t>(l)].eval(q) == fixed_k.level[static_cast<std::size_t>(l)];
      }
      r.checks.push_back(detail::bool_check(prefix + "poly-vs-fixed[Q=" + q.to_compact() + "]", ok));
    }
  }
  r.append(verify_sum_rules(g.width(), "amplitudes/"));
  return r;
}

/// Polynomial-exact amplitude checks for 1 <= l <= lmax (lmax <= 12).
inline VerificationReport verify_amplitudes(int lmax) {
  if (lmax < 1 || lmax > 12) throw std::invalid_argument("verify_amplitudes: need 1 <= lmax <= 12");
  VerificationReport r;
  r.subject = "amplitudes l<=" + std::to_string(lmax);
  r.mode = "poly-q";
  using detail::one_tag;
  using detail::pair_tag;
  for (int l = 2; l <= lmax; ++l) {
    for (int m : nt::divisors(l)) {
      r.checks.push_back(detail::exact_check("amplitude-routes" + pair_tag(l, m), nt::amplitude_character(l, l / m),
                                             nt::amplitude_loop_formula(l, m)));
    }
  }
  {
    const PolyQ printed = nt::amplitude_loop_formula(2, 2, nt::CrossTermNormalization::kPrinted);
    const PolyQ diff = printed - nt::amplitude_character(2, 1);
    Check c = detail::bool_check("printed-cross-term-discrepancy(2,2)", diff == PolyQ{-1, 1},
                                 "printed minus character route = " + diff.to_string());
    c.residual = diff.to_string();
    r.checks.push_back(c);
  }
  r.append(verify_sum_rules(lmax));
  for (int l = 1; l <= lmax; ++l) {
    bool ok = true;
    for (int k = 1; k <= l; ++k) {
      for (int k2 = 1; k2 <= l; ++k2) {
        const bool same_gcd = std::gcd(k, l) == std::gcd(k2, l);
        const bool same_value = nt::amplitude_character(l, k) == nt::amplitude_character(l, k2);
        ok = ok && same_gcd == same_value;
      }
    }
    r.checks.push_back(detail::bool_check("gcd-structure" + one_tag(l), ok));
    const int distinct = nt::distinct_amplitude_count(l);
    r.checks.push_back(detail::bool_check("distinct-amplitudes" + one_tag(l), distinct == nt::divisor_count(l),
                                          std::to_string(distinct) + " distinct"));
    r.checks.push_back(detail::exact_check("b-tilde-routes" + one_tag(l), nt::detail::level_sum_first_branch(l),
                                           nt::loop_weight(l) + PolyQ{-1, 1} * BigRat(nt::sign_power(l))));
  }
  for (int p : {2, 3, 5, 7, 11}) {
    if (p > lmax) continue;
    const PolyQ b = nt::b_level(p);
    r.checks.push_back(detail::exact_check("prime-closed-form-identity" + one_tag(p), (b - PolyQ(p - 1)) / BigRat(p),
                                           nt::amplitude_character(p, p)));
    bool ok = true;
    for (int k = 1; k < p; ++k) ok = ok && nt::amplitude_character(p, k) == (b + PolyQ(1)) / BigRat(p);
    r.checks.push_back(detail::bool_check("prime-closed-form-other" + one_tag(p), ok));
  }
  if (lmax >= 2) {
    r.checks.push_back(detail::exact_check("level-two-identity", PolyQ{0, -3, 1} / BigRat(2), nt::amplitude_character(2, 2)));
    r.checks.push_back(detail::exact_check("level-two-other", PolyQ{2, -3, 1} / BigRat(2), nt::amplitude_character(2, 1)));
  }
  return r;
}

/// Identity checks on the number-theoretic layer.
inline VerificationReport verify_numtheory() {
  VerificationReport r;
  r.subject = "numtheory";
  r.mode = "exact";
  bool ok = true;
  for (int l = 1; l <= 200; ++l) {
    long s = 0;
    for (int d : nt::divisors(l)) s += nt::totient(l / d);
    ok = ok && s == l;
  }
  r.checks.push_back(detail::bool_check("totient-divisor-sum(200)", ok));
  double worst = 0.0;
  for (int l = 1; l <= 24; ++l) {
    for (int d : nt::divisors(l)) {
      for (int k = 1; k <= l; ++k) {
        worst = std::max(worst, std::abs(nt::class_char_sum_direct(l, d, k) - ComplexF(static_cast<double>(nt::class_char_sum(l, d, k)), 0.0)));
      }
    }
  }
  r.checks.push_back(detail::numeric_check("class-sum-closed-form(24)", worst, 1e-9));
  return r;
}

}  // namespace potts
