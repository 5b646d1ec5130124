#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "potts/verify.hpp"

using namespace potts;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
  void absorb(const VerificationReport& r, const std::string& where) {
    for (const auto& c : r.checks) require(c.pass, where + " " + c.id);
  }
};

std::vector<TorusGraph> homogeneous_matrix() {
  std::vector<TorusGraph> out;
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    for (int L : {2, 3}) {
      for (int N : {2, 3}) {
        for (const char* v : {"1", "-1/2", "3/7"}) out.push_back(build_torus(kind, L, N, BigRat::parse(v)));
      }
    }
  }
  return out;
}

const std::vector<BigRat> kQ = {BigRat(2), BigRat(3), BigRat(5, 2)};

Outcome amplitude_equivalence() {
  Outcome o;
  for (int l = 2; l <= 10; ++l) {
    for (int m : nt::divisors(l)) {
      o.require(nt::amplitude_character(l, l / m) == nt::amplitude_loop_formula(l, m),
                "routes differ at (" + std::to_string(l) + "," + std::to_string(m) + ")");
    }
  }
  const PolyQ printed = nt::amplitude_loop_formula(2, 2, nt::CrossTermNormalization::kPrinted);
  const PolyQ diff = printed - nt::amplitude_character(2, 1);
  o.require(diff == PolyQ{-1, 1}, "printed (2,2) discrepancy is " + diff.to_string());
  if (o.pass) o.note = "l<=10 all divisors equal; printed (2,2) off by " + diff.to_string();
  return o;
}

Outcome sum_rules() {
  Outcome o;
  for (int l = 1; l <= 10; ++l) {
    o.require(nt::amplitude_sum_rule(l) == nt::b_level(l), "sum rule at l=" + std::to_string(l));
    o.require(nt::distinct_amplitude_count(l) == nt::divisor_count(l), "distinct count at l=" + std::to_string(l));
  }
  for (int p : {2, 3, 5, 7, 11}) {
    const PolyQ b = nt::b_level(p);
    o.require(nt::amplitude_character(p, p) == (b - PolyQ(p - 1)) / BigRat(p), "prime identity l=" + std::to_string(p));
    for (int k = 1; k < p; ++k) {
      o.require(nt::amplitude_character(p, k) == (b + PolyQ(1)) / BigRat(p), "prime other l=" + std::to_string(p));
    }
  }
  return o;
}

Outcome level_two() {
  Outcome o;
  o.require(nt::amplitude_character(2, 2) == PolyQ{0, -3, 1} / BigRat(2), "identity sector != Q(Q-3)/2");
  o.require(nt::amplitude_character(2, 1) == PolyQ{2, -3, 1} / BigRat(2), "sign sector != (Q-1)(Q-2)/2");
  return o;
}

Outcome basis_dimensions() {
  Outcome o;
  for (int L = 0; L <= 6; ++L) {
    for (int l = 0; l <= L; ++l) {
      if (L == 0) {
        o.require(nt::n_tor(0, 0) == 1, "n_tor(0,0)");
        continue;
      }
      o.require(mpz_class(static_cast<unsigned long>(enumerate_states(L, l).size())) == nt::n_tor(L, l),
                "count at (" + std::to_string(L) + "," + std::to_string(l) + ")");
      if (L <= 5 && l >= 1) {
        o.require(mpz_class(static_cast<unsigned long>(enumerate_labeled_states(L, l).size())) == l * nt::n_tor(L, l),
                  "labeled size at (" + std::to_string(L) + "," + std::to_string(l) + ")");
      }
    }
  }
  o.require(enumerate_states(4, 2).size() == 28, "(4,2) != 28");
  return o;
}

Outcome character_routes() {
  Outcome o;
  int checks = 0;
  for (const auto& g : homogeneous_matrix()) {
    for (const auto& q : kQ) {
      const FixedQ mode(q);
      const auto oracle = characters_from_Z(restricted_partition_functions(g, mode), g.width(), mode);
      const auto transfer = transfer_characters(g, mode);
      const std::string where = g.describe() + " v=" + g.edge(0).coupling.to_compact() + " Q=" + q.to_compact();
      o.require(oracle.level == transfer.level, where + " K_l");
      o.require(oracle.cls == transfer.cls, where + " class sums");
      checks += static_cast<int>(oracle.level.size() + oracle.cls.size());
    }
  }
  if (o.pass) o.note = std::to_string(checks) + " exact equalities";
  return o;
}

Outcome full_decomposition() {
  Outcome o;
  std::vector<TorusGraph> graphs = homogeneous_matrix();
  graphs.push_back(build_torus(LatticeKind::kSquare, 3, 2, EdgeCouplingSpec{Seeded{1}}));
  graphs.push_back(build_torus(LatticeKind::kTriangular, 2, 2, EdgeCouplingSpec{Seeded{1}}));
  int residuals = 0;
  for (const auto& g : graphs) {
    for (const auto& q : kQ) {
      const FixedQ mode(q);
      const auto table = restricted_partition_functions(g, mode);
      const auto transfer = transfer_characters(g, mode);
      OracleCharacters<BigRat> k;
      k.width = transfer.width;
      k.level = transfer.level;
      k.cls = transfer.cls;
      for (const auto& r : reconstruct_Z(table, k, mode)) {
        o.require(r.zero(), g.describe() + " Q=" + q.to_compact() + " " + r.name);
        ++residuals;
      }
    }
  }
  if (o.pass) o.note = std::to_string(residuals) + " zero residuals";
  return o;
}

Outcome spectra() {
  Outcome o;
  for (auto kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    for (int L : {2, 3}) {
      for (int N : {2, 3}) {
        const auto g = build_torus(kind, L, N, BigRat(1));
        const auto r = verify_numeric(g, BigRat(2), true, g.describe() + "/");
        for (const auto& c : r.checks) o.require(c.pass, c.id);
      }
    }
  }
  return o;
}

Outcome homotopy_invariants() {
  Outcome o;
  const auto g = build_torus(LatticeKind::kSquare, 3, 3, BigRat(1));
  const auto e = enumerate_counts(g);
  o.require(e.stats.subsets == (std::uint64_t{1} << 18), "subset count");
  o.require(e.stats.violations == 0, std::to_string(e.stats.violations) + " configurations mix NTC classes");
  o.require(e.stats.max_cross <= 1, "max cross clusters " + std::to_string(e.stats.max_cross));
  o.require(e.stats.max_j_n1 <= 3, "max j*n1 " + std::to_string(e.stats.max_j_n1));
  if (o.pass) {
    o.note = std::to_string(e.stats.subsets) + " subsets, max j*n1 = " + std::to_string(e.stats.max_j_n1);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "amplitude equivalence", 5.0, amplitude_equivalence},
      {2, "sum rules, distinct counts, prime closed forms", 0.0, sum_rules},
      {3, "level-2 amplitudes", 0.0, level_two},
      {4, "basis dimensions", 10.0, basis_dimensions},
      {5, "character route equality", 120.0, character_routes},
      {6, "full decomposition", 0.0, full_decomposition},
      {7, "spectral sectors", 60.0, spectra},
      {8, "homotopy invariants (square 3x3)", 30.0, homotopy_invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.note += " (runtime over " + std::to_string(static_cast<int>(c.limit_s)) + " s)";
    }
    std::printf("criterion %d %s: %s [%.2f s]%s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.note.empty() ? "" : " ", o.note.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
