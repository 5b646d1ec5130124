#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "potts/homotopy.hpp"
#include "potts/lattice.hpp"
#include "potts/mode.hpp"
#include "potts/numtheory.hpp"

namespace potts {

inline constexpr int kMaxEnumeratedEdges = 30;

/// Exact tallies from full subset enumeration, independent of Q.
struct EnumerationStats {
  std::uint64_t subsets = 0;
  /// Configurations whose NTC disagree on class, hold a non-primitive
  /// winding, or mix a cross cluster with another NTC.
  std::uint64_t violations = 0;
  int max_cross = 0;
  int max_j_n1 = 0;

  void merge(const EnumerationStats& o) {
    subsets += o.subsets;
    violations += o.violations;
    max_cross = std::max(max_cross, o.max_cross);
    max_j_n1 = std::max(max_j_n1, o.max_j_n1);
  }
};

/// Number of subsets with given (j, n1, cluster count, bond count).
class CountHistogram {
 public:
  CountHistogram() = default;
  CountHistogram(int width, int vertices, int edges)
      : width_(width), vertices_(vertices), edges_(edges),
        counts_(static_cast<std::size_t>((width + 1) * (width + 1) * (vertices + 1) * (edges + 1))) {}

  void add(int j, int n1, int n, int bonds, std::uint64_t c = 1) { counts_[index(j, n1, n, bonds)] += c; }
  std::uint64_t at(int j, int n1, int n, int bonds) const { return counts_[index(j, n1, n, bonds)]; }
  void merge(const CountHistogram& o) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
  }
  int width() const { return width_; }
  int vertices() const { return vertices_; }
  int edges() const { return edges_; }

 private:
  std::size_t index(int j, int n1, int n, int bonds) const {
    return static_cast<std::size_t>(((j * (width_ + 1) + n1) * (vertices_ + 1) + n) * (edges_ + 1) + bonds);
  }
  int width_ = 0;
  int vertices_ = 0;
  int edges_ = 0;
  std::vector<std::uint64_t> counts_;
};

/// Sum of coupling products over subsets with given (j, n1, cluster count).
class WeightHistogram {
 public:
  WeightHistogram() = default;
  WeightHistogram(int width, int vertices)
      : width_(width), vertices_(vertices),
        weights_(static_cast<std::size_t>((width + 1) * (width + 1) * (vertices + 1))) {}

  void add(int j, int n1, int n, const BigRat& w) { weights_[index(j, n1, n)] += w; }
  const BigRat& at(int j, int n1, int n) const { return weights_[index(j, n1, n)]; }
  void merge(const WeightHistogram& o) {
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += o.weights_[i];
  }
  int width() const { return width_; }
  int vertices() const { return vertices_; }

 private:
  std::size_t index(int j, int n1, int n) const {
    return static_cast<std::size_t>((j * (width_ + 1) + n1) * (vertices_ + 1) + n);
  }
  int width_ = 0;
  int vertices_ = 0;
  std::vector<BigRat> weights_;
};

namespace detail {

inline void require_enumerable(const TorusGraph& g) {
  if (g.edge_count() > kMaxEnumeratedEdges) {
    throw std::invalid_argument("enumeration guard: " + g.describe() + " has " +
                                std::to_string(g.edge_count()) + " edges (limit " +
                                std::to_string(kMaxEnumeratedEdges) + ", 2^" +
                                std::to_string(g.edge_count()) + " subsets)");
  }
}

inline int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16U));
}

/// Depth-first walk over all subsets. Edges [0, prefix) are fixed per chunk;
/// the visitor sees every leaf with the tracker in the leaf configuration.
template <class Visitor>
class SubsetWalker {
 public:
  SubsetWalker(const TorusGraph& g, Visitor& visit) : g_(g), tracker_(g), visit_(visit) {}

  void run_chunk(int prefix, std::uint64_t chunk) {
    int bonds = 0;
    for (int e = 0; e < prefix; ++e) {
      const bool on = (chunk >> e) & 1U;
      visit_.enter(e, on);
      if (on) {
        tracker_.push(e);
        ++bonds;
      }
    }
    walk(prefix, bonds);
    for (int e = prefix; e-- > 0;) {
      const bool on = (chunk >> e) & 1U;
      if (on) tracker_.pop();
      visit_.leave(e, on);
    }
  }

 private:
  void walk(int e, int bonds) {
    if (e == g_.edge_count()) {
      visit_.leaf(tracker_, bonds);
      return;
    }
    visit_.enter(e, false);
    walk(e + 1, bonds);
    visit_.leave(e, false);
    tracker_.push(e);
    visit_.enter(e, true);
    walk(e + 1, bonds + 1);
    visit_.leave(e, true);
    tracker_.pop();
  }

  const TorusGraph& g_;
  ClusterTracker tracker_;
  Visitor& visit_;
};

inline void record_stats(EnumerationStats& stats, const ClusterTracker& t, const ConfigSummary& s) {
  ++stats.subsets;
  if (t.violations() > 0) ++stats.violations;
  stats.max_cross = std::max(stats.max_cross, t.cross_clusters());
  stats.max_j_n1 = std::max(stats.max_j_n1, s.j * s.n1);
}

struct CountVisitor {
  CountHistogram hist;
  EnumerationStats stats;
  void enter(int, bool) {}
  void leave(int, bool) {}
  void leaf(const ClusterTracker& t, int bonds) {
    const ConfigSummary s = t.summary(bonds);
    record_stats(stats, t, s);
    hist.add(s.j, s.n1, s.n_clusters, bonds);
  }
};

struct WeightVisitor {
  const TorusGraph* g = nullptr;
  WeightHistogram hist;
  EnumerationStats stats;
  std::vector<BigRat> weight;  // weight[e] = product over included edges < e

  void enter(int e, bool on) {
    weight[static_cast<std::size_t>(e) + 1] =
        on ? weight[static_cast<std::size_t>(e)] * g->edge(e).coupling : weight[static_cast<std::size_t>(e)];
  }
  void leave(int, bool) {}
  void leaf(const ClusterTracker& t, int bonds) {
    const ConfigSummary s = t.summary(bonds);
    record_stats(stats, t, s);
    const BigRat& w = weight.back();
    if (!w.is_zero()) hist.add(s.j, s.n1, s.n_clusters, w);
  }
};

template <class Visitor, class Make>
std::vector<Visitor> run_parallel(const TorusGraph& g, int threads, Make make) {
  require_enumerable(g);
  if (threads <= 0) threads = default_threads();
  const int prefix = std::min(g.edge_count(), 6);
  const std::uint64_t chunks = std::uint64_t{1} << prefix;
  threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), chunks));
  std::vector<Visitor> visitors;
  visitors.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) visitors.push_back(make());
  auto work = [&](int t) {
    SubsetWalker<Visitor> walker(g, visitors[static_cast<std::size_t>(t)]);
    for (std::uint64_t c = static_cast<std::uint64_t>(t); c < chunks; c += static_cast<std::uint64_t>(threads)) {
      walker.run_chunk(prefix, c);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return visitors;
}

}  // namespace detail

struct CountEnumeration {
  CountHistogram hist;
  EnumerationStats stats;
};

/// Counts subsets by (j, n1, clusters, bonds). Independent of the couplings,
/// so one enumeration serves every homogeneous (Q, v).
inline CountEnumeration enumerate_counts(const TorusGraph& g, int threads = 0) {
  auto visitors = detail::run_parallel<detail::CountVisitor>(g, threads, [&] {
    return detail::CountVisitor{CountHistogram(g.width(), g.vertex_count(), g.edge_count()), {}};
  });
  CountEnumeration out{visitors.front().hist, visitors.front().stats};
  for (std::size_t i = 1; i < visitors.size(); ++i) {
    out.hist.merge(visitors[i].hist);
    out.stats.merge(visitors[i].stats);
  }
  return out;
}

/// Memoized enumerate_counts keyed by lattice shape.
inline const CountEnumeration& cached_counts(const TorusGraph& g) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, CountEnumeration> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(static_cast<int>(g.kind()), g.width(), g.length());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_counts(g)).first;
  return it->second;
}

struct WeightEnumeration {
  WeightHistogram hist;
  EnumerationStats stats;
};

inline WeightEnumeration enumerate_weights(const TorusGraph& g, int threads = 0) {
  auto visitors = detail::run_parallel<detail::WeightVisitor>(g, threads, [&] {
    detail::WeightVisitor v;
    v.g = &g;
    v.hist = WeightHistogram(g.width(), g.vertex_count());
    v.weight.assign(static_cast<std::size_t>(g.edge_count()) + 1, BigRat(1));
    return v;
  });
  WeightEnumeration out{visitors.front().hist, visitors.front().stats};
  for (std::size_t i = 1; i < visitors.size(); ++i) {
    out.hist.merge(visitors[i].hist);
    out.stats.merge(visitors[i].stats);
  }
  return out;
}

/// Z_{j,n1} keyed by (j, n1); the no-NTC / vertical-only sector Z_0 sits at
/// (0, 0).
template <class S>
struct RestrictedZTable {
  int width = 0;
  std::map<std::pair<int, int>, S> z;

  S get(int j, int n1) const {
    auto it = z.find({j, n1});
    return it == z.end() ? S{} : it->second;
  }
  /// Z_{j,1}, with Z_{0,1} meaning Z_0.
  S single(int j) const { return j == 0 ? get(0, 0) : get(j, 1); }
  /// Z_{j,n1>1}.
  S multi(int j) const {
    S out{};
    for (const auto& [key, value] : z) {
      if (key.first == j && key.second >= 2) out += value;
    }
    return out;
  }
  /// Z_j = Z_{j,1} + Z_{j,n1>1}.
  S sector(int j) const { return single(j) + (j == 0 ? S{} : multi(j)); }
  S total() const {
    S out{};
    for (const auto& [key, value] : z) out += value;
    return out;
  }
};

template <class Mode>
RestrictedZTable<typename Mode::Scalar> restricted_partition_functions(const TorusGraph& g,
                                                                       const Mode& mode) {
  using S = typename Mode::Scalar;
  RestrictedZTable<S> table;
  table.width = g.width();
  const int L = g.width();
  const int V = g.vertex_count();
  auto put = [&](int j, int n1, const S& value) {
    if (Mode::is_zero(value)) return;
    auto [it, fresh] = table.z.emplace(std::make_pair(j, n1), value);
    if (!fresh) it->second += value;
  };
  if (g.homogeneous()) {
    const CountHistogram& hist = cached_counts(g).hist;
    const BigRat& v = g.edge(0).coupling;
    std::vector<BigRat> v_pow(static_cast<std::size_t>(g.edge_count()) + 1, BigRat(1));
    for (std::size_t b = 1; b < v_pow.size(); ++b) v_pow[b] = v_pow[b - 1] * v;
    for (int j = 0; j <= L; ++j) {
      for (int n1 = 0; n1 <= L; ++n1) {
        S acc{};
        for (int n = 1; n <= V; ++n) {
          BigRat coeff;
          for (int b = 0; b <= g.edge_count(); ++b) {
            const std::uint64_t c = hist.at(j, n1, n, b);
            if (c != 0) coeff += BigRat(mpz_class(static_cast<unsigned long>(c))) * v_pow[static_cast<std::size_t>(b)];
          }
          if (!coeff.is_zero()) acc += mode.constant(coeff) * mode.q_power(n);
        }
        put(j, n1, acc);
      }
    }
  } else {
    const WeightEnumeration w = enumerate_weights(g);
    for (int j = 0; j <= L; ++j) {
      for (int n1 = 0; n1 <= L; ++n1) {
        S acc{};
        for (int n = 1; n <= V; ++n) {
          const BigRat& coeff = w.hist.at(j, n1, n);
          if (!coeff.is_zero()) acc += mode.constant(coeff) * mode.q_power(n);
        }
        put(j, n1, acc);
      }
    }
  }
  return table;
}

/// Z = sum over subsets of Q^n(E') prod v_e.
template <class Mode>
typename Mode::Scalar partition_function(const TorusGraph& g, const Mode& mode) {
  return restricted_partition_functions(g, mode).total();
}

/// K_l for 0 <= l <= L and K_(d,n1) for n1 >= 2, d*n1 <= L.
template <class S>
struct OracleCharacters {
  int width = 0;
  std::vector<S> level;
  std::map<std::pair<int, int>, S> cls;

  S get_class(int d, int n1) const {
    auto it = cls.find({d, n1});
    return it == cls.end() ? S{} : it->second;
  }
  /// K_(d,n1>1).
  S multi(int d) const {
    S out{};
    for (const auto& [key, value] : cls) {
      if (key.first == d) out += value;
    }
    return out;
  }
  /// K_l / l, with K_0 itself at l = 0.
  S normalized(int l) const {
    const S& k = level[static_cast<std::size_t>(l)];
    return l == 0 ? k : k * BigRat(1, l);
  }
};

template <class Mode>
OracleCharacters<typename Mode::Scalar> characters_from_Z(
    const RestrictedZTable<typename Mode::Scalar>& t, int width, const Mode& mode) {
  using S = typename Mode::Scalar;
  const int L = width;
  OracleCharacters<S> out;
  out.width = L;
  out.level.assign(static_cast<std::size_t>(L) + 1, S{});
  auto reduced = [&](const S& z, int j) { return mode.divide_q_power(z, j); };
  for (int l = 0; l <= L; ++l) {
    S acc{};
    for (int j = std::max(l, 0); j <= L; ++j) {
      const mpz_class nt = nt::n_tor(j, l);
      if (nt == 0) continue;
      acc += reduced(t.single(j), j) * BigRat(nt);
    }
    if (l >= 2) acc = acc * BigRat(l);
    if (l <= 1) {
      for (int j = 1; j <= L / 2; ++j) {
        BigRat c(nt::binomial(2L * j, j));
        if (l == 1) c /= BigRat(2);
        acc += reduced(t.multi(j), j) * c;
      }
    }
    out.level[static_cast<std::size_t>(l)] = acc;
  }
  for (int n1 = 2; n1 <= L; ++n1) {
    for (int d = 1; d * n1 <= L; ++d) {
      S acc{};
      for (int j = d; j <= L / n1; ++j) {
        acc += reduced(t.get(j, n1), j) * BigRat(nt::binomial(2L * j, j - d));
      }
      out.cls[{d, n1}] = acc;
    }
  }
  return out;
}

template <class S>
struct Residual {
  std::string name;
  S expected;
  S reconstructed;
  bool zero() const { return expected == reconstructed; }
};

namespace detail {
inline BigRat inversion_coefficient(int d, int j) {
  return nt::binomial_summand_coefficient(d, j);
}
}  // namespace detail

/// Z_{j,n1} for n1 >= 2 from the class characters K_(d,n1).
template <class Mode>
typename Mode::Scalar z_multi_from_class(const OracleCharacters<typename Mode::Scalar>& k, int j,
                                         int n1, const Mode& mode) {
  using S = typename Mode::Scalar;
  const int L = k.width;
  S acc{};
  for (int d = j; d <= L / n1; ++d) acc += k.get_class(d, n1) * detail::inversion_coefficient(d, j);
  return acc * mode.q_power(j);
}

/// Z_{j,n1>1} from the aggregated K_(d,n1>1).
template <class Mode>
typename Mode::Scalar z_multi_aggregate(const OracleCharacters<typename Mode::Scalar>& k, int j,
                                        const Mode& mode) {
  using S = typename Mode::Scalar;
  S acc{};
  for (int d = j; d <= k.width / 2; ++d) acc += k.multi(d) * detail::inversion_coefficient(d, j);
  return acc * mode.q_power(j);
}

/// Z_{j,1} for j >= 2, Z_{1,1} and Z_0 from the characters.
template <class Mode>
typename Mode::Scalar z_single_from_characters(const OracleCharacters<typename Mode::Scalar>& k,
                                               int j, const Mode& mode) {
  using S = typename Mode::Scalar;
  const int L = k.width;
  S acc{};
  for (int l = j; l <= L; ++l) {
    acc += k.normalized(l) * mode.constant(nt::b_level(l).coefficient(static_cast<std::size_t>(j))) *
           mode.q_power(j);
  }
  if (j <= 1) {
    S tail{};
    for (int d = 1; d <= L / 2; ++d) tail += k.multi(d) * BigRat(nt::sign_power(d));
    acc += j == 1 ? tail * mode.q_power(1) : tail;
  }
  return acc;
}

/// Z_j = Z_{j,1} + Z_{j,n1>1} from the characters.
template <class Mode>
typename Mode::Scalar z_sector_from_characters(const OracleCharacters<typename Mode::Scalar>& k,
                                               int j, const Mode& mode) {
  using S = typename Mode::Scalar;
  const int L = k.width;
  S acc{};
  for (int l = j; l <= L; ++l) {
    acc += k.normalized(l) * mode.constant(nt::b_level(l).coefficient(static_cast<std::size_t>(j))) *
           mode.q_power(j);
  }
  for (int d = std::max(j, 1); d <= L / 2; ++d) {
    acc += k.multi(d) * mode.constant(nt::b_tilde(d).coefficient(static_cast<std::size_t>(j))) *
           mode.q_power(j);
  }
  return acc;
}

/// Z from the characters: sum_l b^(l) K_l / l + sum_d b~^(d) K_(d,n1>1).
template <class Mode>
typename Mode::Scalar z_total_from_characters(const OracleCharacters<typename Mode::Scalar>& k,
                                              const Mode& mode) {
  using S = typename Mode::Scalar;
  S acc{};
  for (int l = 0; l <= k.width; ++l) acc += k.normalized(l) * lift(mode, nt::b_level(l));
  for (int d = 1; d <= k.width / 2; ++d) acc += k.multi(d) * lift(mode, nt::b_tilde(d));
  return acc;
}

/// Every reconstruction of the restricted partition functions from the
/// characters, paired with the enumerated value.
template <class Mode>
std::vector<Residual<typename Mode::Scalar>> reconstruct_Z(
    const RestrictedZTable<typename Mode::Scalar>& t,
    const OracleCharacters<typename Mode::Scalar>& k, const Mode& mode) {
  using S = typename Mode::Scalar;
  const int L = k.width;
  std::vector<Residual<S>> out;
  auto add = [&](std::string name, S expected, S got) {
    out.push_back({std::move(name), std::move(expected), std::move(got)});
  };
  auto tag = [](const char* base, int a, int b = -1) {
    std::string s = std::string(base) + "(" + std::to_string(a);
    if (b >= 0) s += "," + std::to_string(b);
    return s + ")";
  };
  for (int n1 = 2; n1 <= L; ++n1) {
    for (int j = 1; j * n1 <= L; ++j) {
      add(tag("Z_multi", j, n1), t.get(j, n1), z_multi_from_class(k, j, n1, mode));
    }
  }
  for (int j = 1; j <= L / 2; ++j) add(tag("Z_multi_aggregate", j), t.multi(j), z_multi_aggregate(k, j, mode));
  for (int j = 0; j <= L; ++j) add(tag("Z_single", j), t.single(j), z_single_from_characters(k, j, mode));
  for (int j = 0; j <= L; ++j) add(tag("Z_sector", j), t.sector(j), z_sector_from_characters(k, j, mode));
  add("Z_total", t.total(), z_total_from_characters(k, mode));
  return out;
}

/// Applies the class decomposition to a reconstructed table and returns the
/// class characters it implies; must give back the input.
template <class Mode>
OracleCharacters<typename Mode::Scalar> class_round_trip(
    const OracleCharacters<typename Mode::Scalar>& k, const Mode& mode) {
  using S = typename Mode::Scalar;
  RestrictedZTable<S> t;
  t.width = k.width;
  for (int n1 = 2; n1 <= k.width; ++n1) {
    for (int j = 1; j * n1 <= k.width; ++j) t.z[{j, n1}] = z_multi_from_class(k, j, n1, mode);
  }
  OracleCharacters<S> back;
  back.width = k.width;
  for (int n1 = 2; n1 <= k.width; ++n1) {
    for (int d = 1; d * n1 <= k.width; ++d) {
      S acc{};
      for (int j = d; j <= k.width / n1; ++j) {
        acc += mode.divide_q_power(t.get(j, n1), j) * BigRat(nt::binomial(2L * j, j - d));
      }
      back.cls[{d, n1}] = acc;
    }
  }
  return back;
}

}  // namespace potts
