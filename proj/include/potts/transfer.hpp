#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "potts/lattice.hpp"
#include "potts/mode.hpp"
#include "potts/numtheory.hpp"
#include "potts/states.hpp"

namespace potts {

namespace conn {

/// Point p moves to a fresh unmarked singleton. `closed` reports that its old
/// block vanished (a finished cluster); nullopt if that block was marked.
struct Detached {
  ConnState state;
  bool closed = false;
};

inline std::optional<Detached> detach(const ConnState& s, int p) {
  const int b = s.block[static_cast<std::size_t>(p)];
  bool alone = true;
  for (int q = 0; q < s.points(); ++q) {
    if (q != p && s.block[static_cast<std::size_t>(q)] == b) alone = false;
  }
  if (alone && s.marked(b)) return std::nullopt;
  ConnState out = s;
  out.block[static_cast<std::size_t>(p)] = s.blocks();
  out.mark.push_back(-1);
  return Detached{canonicalize(out), alone};
}

/// Joins the blocks of p and q. Two distinct marked blocks cannot merge at
/// fixed level.
inline std::optional<ConnState> join(const ConnState& s, int p, int q) {
  const int a = s.block[static_cast<std::size_t>(p)];
  const int b = s.block[static_cast<std::size_t>(q)];
  if (a == b) return s;
  if (s.marked(a) && s.marked(b)) return std::nullopt;
  ConnState out = s;
  const int keep = s.marked(b) ? b : a;
  const int drop = keep == a ? b : a;
  for (auto& x : out.block) {
    if (x == drop) x = keep;
  }
  return canonicalize(out);
}

/// Appends a point in the same block as p.
inline ConnState add_copy(const ConnState& s, int p) {
  ConnState out = s;
  out.block.push_back(s.block[static_cast<std::size_t>(p)]);
  return out;
}

/// Removes the last point; same closing rules as detach.
inline std::optional<Detached> drop_last(const ConnState& s) {
  const int p = s.points() - 1;
  const int b = s.block[static_cast<std::size_t>(p)];
  bool alone = true;
  for (int q = 0; q < p; ++q) {
    if (s.block[static_cast<std::size_t>(q)] == b) alone = false;
  }
  if (alone && s.marked(b)) return std::nullopt;
  ConnState out = s;
  out.block.pop_back();
  return Detached{canonicalize(out), alone};
}

}  // namespace conn

/// Sparse vector over labeled states.
template <class S>
using StateVector = std::map<ConnState, S>;

/// Level-l transfer matrix of a torus graph, applied row by row on labeled
/// connectivity states. Row x carries slice x to slice x+1.
template <class Mode>
class TransferEngine {
 public:
  using S = typename Mode::Scalar;

  TransferEngine(const TorusGraph& g, int level, Mode mode)
      : g_(g), level_(level), mode_(std::move(mode)), basis_(enumerate_states(g.width(), level)) {}

  int level() const { return level_; }
  const std::vector<ConnState>& basis() const { return basis_; }
  const TorusGraph& graph() const { return g_; }
  const Mode& mode() const { return mode_; }

  StateVector<S> apply_row(const StateVector<S>& in, int x) const {
    const int L = g_.width();
    const int N = g_.length();
    StateVector<S> v = in;
    const int next = (x + 1) % N;
    if (g_.kind() == LatticeKind::kSquare) {
      for (int y = 0; y < L; ++y) v = longitudinal(v, y, coupling(EdgeFamily::kLongitudinal, x, y));
    } else {
      // A ghost copy of old point L-1 feeds the wrapped diagonal bond into
      // new point 0; descending y keeps old point y-1 available.
      StateVector<S> with_ghost;
      for (const auto& [s, c] : v) with_ghost.emplace(conn::add_copy(s, L - 1), c);
      v = std::move(with_ghost);
      for (int y = L - 1; y >= 0; --y) {
        v = longitudinal(v, y, coupling(EdgeFamily::kLongitudinal, x, y));
        const int source = y == 0 ? L : y - 1;
        v = bond(v, source, y, coupling(EdgeFamily::kDiagonal, x, (y - 1 + L) % L));
      }
      StateVector<S> dropped;
      for (const auto& [s, c] : v) {
        auto d = conn::drop_last(s);
        if (!d) continue;
        accumulate(dropped, d->state, d->closed ? c * mode_.q_power(1) : c);
      }
      v = std::move(dropped);
    }
    for (int y = 0; y < L; ++y) v = bond(v, y, (y + 1) % L, coupling(EdgeFamily::kTransverse, next, y));
    for (const auto& [s, c] : v) {
      if (s.level() != level_) throw std::logic_error("row operator changed the level");
    }
    return v;
  }

  /// All N rows, starting at row 0.
  StateVector<S> apply_period(StateVector<S> v) const {
    for (int x = 0; x < g_.length(); ++x) v = apply_row(v, x);
    return v;
  }

  /// tt[a] = sum over standard states of the coefficient of E^a v_i in
  /// T^N v_i, for a = 0..l-1 (a single entry at l = 0).
  std::vector<S> twisted_traces() const {
    const int n = level_ == 0 ? 1 : level_;
    std::vector<S> out(static_cast<std::size_t>(n));
    for (const auto& b : basis_) {
      StateVector<S> v;
      v.emplace(b, mode_.constant(BigRat(1)));
      v = apply_period(std::move(v));
      for (const auto& [s, c] : v) {
        if (level_ == 0) {
          if (s == b) out[0] += c;
          continue;
        }
        const int shift = label_shift(s);
        if (with_shift(s, 0) == b) out[static_cast<std::size_t>(shift)] += c;
      }
    }
    return out;
  }

  /// Plain trace over the full labeled space; equals l * tt[0].
  S labeled_trace() const {
    S out{};
    for (const auto& b : enumerate_labeled_states(g_.width(), level_)) {
      StateVector<S> v;
      v.emplace(b, mode_.constant(BigRat(1)));
      v = apply_period(std::move(v));
      auto it = v.find(b);
      if (it != v.end()) out += it->second;
    }
    return out;
  }

 private:
  BigRat coupling(EdgeFamily f, int x, int y) const { return g_.edge(g_.edge_index(f, x, y)).coupling; }

  static void accumulate(StateVector<S>& v, const ConnState& s, const S& c) {
    if (Mode::is_zero(c)) return;
    auto [it, fresh] = v.emplace(s, c);
    if (!fresh) {
      it->second += c;
      if (Mode::is_zero(it->second)) v.erase(it);
    }
  }

  /// Longitudinal bond into point y: keep (weight v) or start afresh.
  StateVector<S> longitudinal(const StateVector<S>& in, int y, const BigRat& v) const {
    StateVector<S> out;
    for (const auto& [s, c] : in) {
      if (!v.is_zero()) accumulate(out, s, c * v);
      auto d = conn::detach(s, y);
      if (d) accumulate(out, d->state, d->closed ? c * mode_.q_power(1) : c);
    }
    return out;
  }

  /// Identity plus v times a join of points p and q.
  StateVector<S> bond(const StateVector<S>& in, int p, int q, const BigRat& v) const {
    StateVector<S> out;
    for (const auto& [s, c] : in) {
      accumulate(out, s, c);
      if (v.is_zero()) continue;
      auto j = conn::join(s, p, q);
      if (j) accumulate(out, *j, c * v);
    }
    return out;
  }

  const TorusGraph& g_;
  int level_;
  Mode mode_;
  std::vector<ConnState> basis_;
};

/// Transfer-side characters: K_l = l tt(identity) (K_0 at l = 0), and class
/// sums K_(d,n1) = sum over a in A_d of tt(a).
template <class S>
struct TransferCharacters {
  int width = 0;
  std::vector<std::vector<S>> twisted;  // twisted[l][a]
  std::vector<S> level;
  std::map<std::pair<int, int>, S> cls;
};

template <class Mode>
TransferCharacters<typename Mode::Scalar> transfer_characters(const TorusGraph& g, const Mode& mode) {
  using S = typename Mode::Scalar;
  TransferCharacters<S> out;
  const int L = g.width();
  out.width = L;
  for (int l = 0; l <= L; ++l) {
    TransferEngine<Mode> engine(g, l, mode);
    out.twisted.push_back(engine.twisted_traces());
    const auto& tt = out.twisted.back();
    out.level.push_back(l == 0 ? tt[0] : tt[0] * BigRat(l));
    if (l < 2) continue;
    for (int d : nt::divisors(l)) {
      if (d == l) continue;
      S acc{};
      for (int a : nt::class_members(l, d)) acc += tt[static_cast<std::size_t>(a % l)];
      out.cls[{d, l / d}] = acc;
    }
  }
  return out;
}

/// K_{l,D_k} = sum_a exp(-2 pi i k a / l) tt(a), numerically.
inline ComplexF character_K(const std::vector<BigRat>& twisted, int l, int k) {
  nt::require_irrep(l, k);
  ComplexF acc{0.0, 0.0};
  for (int a = 0; a < l; ++a) {
    const double angle = -2.0 * M_PI * static_cast<double>((static_cast<long>(k) * a) % l) / l;
    acc += std::polar(1.0, angle) * twisted[static_cast<std::size_t>(a)].to_double();
  }
  return acc;
}

/// Inverse of character_K: tt(a) = (1/l) sum_k exp(2 pi i k a / l) K_{l,D_k}.
inline std::vector<ComplexF> twisted_from_characters(const std::vector<ComplexF>& chars) {
  const int l = static_cast<int>(chars.size());
  std::vector<ComplexF> out(static_cast<std::size_t>(l));
  for (int a = 0; a < l; ++a) {
    for (int k = 1; k <= l; ++k) {
      const double angle = 2.0 * M_PI * static_cast<double>((static_cast<long>(k) * a) % l) / l;
      out[static_cast<std::size_t>(a)] += std::polar(1.0, angle) * chars[static_cast<std::size_t>(k - 1)];
    }
    out[static_cast<std::size_t>(a)] /= static_cast<double>(l);
  }
  return out;
}

}  // namespace potts
