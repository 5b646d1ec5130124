#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/lattice.hpp"

namespace potts {

using EdgeMask = std::uint64_t;

struct Vec2 {
  long x = 0;
  long y = 0;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(long s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

/// Sublattice of Z^2 spanned by the winding vectors of one cluster, kept in
/// Hermite form: rank 2 is {(a, b), (0, c)} with a, c > 0 and 0 <= b < c;
/// rank 1 is a single vector with x > 0, or x == 0 and y > 0.
struct WindingLattice {
  int rank = 0;
  Vec2 b1;
  Vec2 b2;

  friend bool operator==(const WindingLattice&, const WindingLattice&) = default;

  std::vector<Vec2> basis() const {
    if (rank == 0) return {};
    if (rank == 1) return {b1};
    return {b1, b2};
  }

  static WindingLattice span(const Vec2* generators, int count) {
    Vec2 pivot;  // pivot.x = gcd of x components seen so far
    long h = 0;  // gcd of y components with x eliminated
    for (int i = 0; i < count; ++i) {
      const Vec2 v = generators[i];
      if (v.x == 0) {
        h = std::gcd(h, std::labs(v.y));
        continue;
      }
      if (pivot.x == 0) {
        pivot = v.x < 0 ? Vec2{-v.x, -v.y} : v;
        continue;
      }
      // Extended Euclid on (pivot.x, v.x).
      long old_r = pivot.x, r = v.x, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        long q = old_r / r;
        long tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
      }
      long g = old_r;
      if (g < 0) { g = -g; old_s = -old_s; old_t = -old_t; }
      Vec2 combined = old_s * pivot + old_t * v;
      Vec2 residual = (v.x / g) * pivot - (pivot.x / g) * v;
      pivot = combined;
      h = std::gcd(h, std::labs(residual.y));
    }
    WindingLattice out;
    if (pivot.x != 0 && h != 0) {
      long b = pivot.y % h;
      if (b < 0) b += h;
      out.rank = 2;
      out.b1 = {pivot.x, b};
      out.b2 = {0, h};
    } else if (pivot.x != 0) {
      out.rank = 1;
      out.b1 = pivot;
    } else if (h != 0) {
      out.rank = 1;
      out.b1 = {0, h};
    }
    return out;
  }

  static WindingLattice span(const std::vector<Vec2>& generators) {
    return span(generators.data(), static_cast<int>(generators.size()));
  }

  WindingLattice with(const WindingLattice& other) const {
    Vec2 gens[4];
    int n = append_basis(gens, 0);
    n = other.append_basis(gens, n);
    return span(gens, n);
  }
  WindingLattice with(Vec2 v) const {
    Vec2 gens[3];
    int n = append_basis(gens, 0);
    gens[n++] = v;
    return span(gens, n);
  }

 private:
  int append_basis(Vec2* out, int n) const {
    if (rank >= 1) out[n++] = b1;
    if (rank == 2) out[n++] = b2;
    return n;
  }

 public:
};

struct ClusterInfo {
  std::vector<int> vertices;
  WindingLattice winding;
};

struct HomotopyClass {
  enum class Tag { kTrivial, kWind, kCross };
  Tag tag = Tag::kTrivial;
  int n1 = 0;
  int n2 = 0;
  friend bool operator==(const HomotopyClass&, const HomotopyClass&) = default;

  bool is_ntc() const { return tag != Tag::kTrivial; }
  /// Non-trivial and percolating along the transfer direction.
  bool winds_longitudinally() const {
    return tag == Tag::kCross || (tag == Tag::kWind && n1 >= 1);
  }
};

struct ConfigSummary {
  int bonds = 0;
  int n_clusters = 0;
  /// Number of clusters winding along the transfer direction (cross clusters
  /// included), and their shared branch index; 0 when j == 0.
  int j = 0;
  int n1 = 0;
  friend bool operator==(const ConfigSummary&, const ConfigSummary&) = default;
};

/// Converts a cycle displacement in lattice steps into windings.
inline Vec2 to_windings(const TorusGraph& g, Vec2 displacement) {
  if (displacement.x % g.length() != 0 || displacement.y % g.width() != 0) {
    throw std::logic_error("cycle displacement is not a period multiple");
  }
  return {displacement.x / g.length(), displacement.y / g.width()};
}

/// Clusters of the spanning subgraph selected by `subset`, with the winding
/// lattice of each cluster obtained by lifting a BFS spanning forest to Z^2.
/// `root_rotation` shifts the order in which BFS roots are chosen.
inline std::vector<ClusterInfo> find_clusters(const TorusGraph& g, EdgeMask subset,
                                              int root_rotation = 0) {
  if (g.edge_count() > 64) throw std::invalid_argument("find_clusters: more than 64 edges");
  const int nv = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nv));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!((subset >> e) & 1U)) continue;
    adj[static_cast<std::size_t>(g.edge(e).u)].push_back({e, +1});
    adj[static_cast<std::size_t>(g.edge(e).v)].push_back({e, -1});
  }
  std::vector<int> comp(static_cast<std::size_t>(nv), -1);
  std::vector<Vec2> disp(static_cast<std::size_t>(nv));
  std::vector<ClusterInfo> clusters;
  for (int i = 0; i < nv; ++i) {
    const int root = ((i + root_rotation) % nv + nv) % nv;
    if (comp[static_cast<std::size_t>(root)] >= 0) continue;
    const int id = static_cast<int>(clusters.size());
    ClusterInfo info;
    std::vector<Vec2> cycles;
    std::vector<bool> tree_edge(static_cast<std::size_t>(g.edge_count()), false);
    std::queue<int> queue;
    queue.push(root);
    comp[static_cast<std::size_t>(root)] = id;
    disp[static_cast<std::size_t>(root)] = {0, 0};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      info.vertices.push_back(u);
      for (auto [e, dir] : adj[static_cast<std::size_t>(u)]) {
        const Edge& edge = g.edge(e);
        const int w = dir > 0 ? edge.v : edge.u;
        const Vec2 step{dir * edge.dx, dir * edge.dy};
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          disp[static_cast<std::size_t>(w)] = disp[static_cast<std::size_t>(u)] + step;
          tree_edge[static_cast<std::size_t>(e)] = true;
          queue.push(w);
        }
      }
    }
    for (int u : info.vertices) {
      for (auto [e, dir] : adj[static_cast<std::size_t>(u)]) {
        // Visit each non-tree edge once, from its u endpoint.
        if (dir < 0 || tree_edge[static_cast<std::size_t>(e)]) continue;
        const Edge& edge = g.edge(e);
        Vec2 c = disp[static_cast<std::size_t>(edge.u)] + Vec2{edge.dx, edge.dy} -
                 disp[static_cast<std::size_t>(edge.v)];
        if (c.x != 0 || c.y != 0) cycles.push_back(to_windings(g, c));
      }
    }
    std::sort(info.vertices.begin(), info.vertices.end());
    info.winding = WindingLattice::span(cycles);
    clusters.push_back(std::move(info));
  }
  return clusters;
}

inline HomotopyClass classify_cluster(const ClusterInfo& c) {
  const auto& w = c.winding;
  if (w.rank == 0) return {};
  if (w.rank == 2) return {HomotopyClass::Tag::kCross, 1, 0};
  if (std::gcd(std::labs(w.b1.x), std::labs(w.b1.y)) != 1) {
    throw std::logic_error("non-primitive winding vector (" + std::to_string(w.b1.x) + "," +
                           std::to_string(w.b1.y) + ")");
  }
  return {HomotopyClass::Tag::kWind, static_cast<int>(w.b1.x), static_cast<int>(w.b1.y)};
}

/// Topological digest of one configuration. Throws if NTC of different
/// classes coexist, which planarity forbids.
inline ConfigSummary summarize_config(const TorusGraph& g, EdgeMask subset) {
  ConfigSummary s;
  s.bonds = __builtin_popcountll(subset);
  const auto clusters = find_clusters(g, subset);
  s.n_clusters = static_cast<int>(clusters.size());
  bool have_class = false;
  HomotopyClass shared;
  for (const auto& c : clusters) {
    HomotopyClass h = classify_cluster(c);
    if (!h.is_ntc()) continue;
    if (have_class && !(h == shared)) {
      throw std::logic_error("NTC of different homotopy classes in one configuration");
    }
    if (h.tag == HomotopyClass::Tag::kCross && have_class) {
      throw std::logic_error("cross cluster coexisting with another NTC");
    }
    have_class = true;
    shared = h;
    if (h.winds_longitudinally()) {
      ++s.j;
      s.n1 = h.n1;
    }
  }
  return s;
}

/// Union-find with rollback that maintains cluster count and winding
/// lattices while edges are added and removed in stack order.
class ClusterTracker {
 public:
  explicit ClusterTracker(const TorusGraph& g)
      : graph_(&g),
        parent_(static_cast<std::size_t>(g.vertex_count())),
        offset_(static_cast<std::size_t>(g.vertex_count())),
        size_(static_cast<std::size_t>(g.vertex_count()), 1),
        lattice_(static_cast<std::size_t>(g.vertex_count())) {
    std::iota(parent_.begin(), parent_.end(), 0);
    counters_.clusters = g.vertex_count();
  }

  void push(int edge_index) {
    const Edge& e = graph_->edge(edge_index);
    Vec2 du, dv;
    const int ru = find(e.u, du);
    const int rv = find(e.v, dv);
    Undo undo;
    undo.counters = counters_;
    if (ru == rv) {
      undo.kind = Undo::kCycle;
      undo.root = ru;
      undo.old_lattice = lattice_[static_cast<std::size_t>(ru)];
      Vec2 c = du + Vec2{e.dx, e.dy} - dv;
      if (c.x != 0 || c.y != 0) {
        const WindingLattice before = lattice_[static_cast<std::size_t>(ru)];
        const WindingLattice after = before.with(to_windings(*graph_, c));
        if (!(after == before)) {
          remove_contribution(before);
          add_contribution(after);
          lattice_[static_cast<std::size_t>(ru)] = after;
        }
      }
    } else {
      int big = ru, small = rv;
      // Position of the u-endpoint relative to the v-endpoint's root: attach
      // so that disp(v) = disp(u) + step along the merged tree.
      Vec2 small_offset = du + Vec2{e.dx, e.dy} - dv;  // offset of rv relative to ru
      if (size_[static_cast<std::size_t>(ru)] < size_[static_cast<std::size_t>(rv)]) {
        big = rv;
        small = ru;
        small_offset = Vec2{0, 0} - small_offset;
      }
      undo.kind = Undo::kUnion;
      undo.root = big;
      undo.child = small;
      undo.old_lattice = lattice_[static_cast<std::size_t>(big)];
      const WindingLattice& la = lattice_[static_cast<std::size_t>(big)];
      const WindingLattice& lb = lattice_[static_cast<std::size_t>(small)];
      const WindingLattice merged = la.with(lb);
      remove_contribution(la);
      remove_contribution(lb);
      add_contribution(merged);
      parent_[static_cast<std::size_t>(small)] = big;
      offset_[static_cast<std::size_t>(small)] = small_offset;
      size_[static_cast<std::size_t>(big)] += size_[static_cast<std::size_t>(small)];
      lattice_[static_cast<std::size_t>(big)] = merged;
      --counters_.clusters;
    }
    undo_.push_back(undo);
  }

  void pop() {
    const Undo undo = undo_.back();
    undo_.pop_back();
    counters_ = undo.counters;
    lattice_[static_cast<std::size_t>(undo.root)] = undo.old_lattice;
    if (undo.kind == Undo::kUnion) {
      parent_[static_cast<std::size_t>(undo.child)] = undo.child;
      offset_[static_cast<std::size_t>(undo.child)] = {0, 0};
      size_[static_cast<std::size_t>(undo.root)] -= size_[static_cast<std::size_t>(undo.child)];
    }
  }

  int clusters() const { return counters_.clusters; }
  int cross_clusters() const { return counters_.cross; }
  /// Number of planarity violations seen among the current clusters.
  int violations() const { return counters_.violations; }

  ConfigSummary summary(int bonds) const {
    ConfigSummary s;
    s.bonds = bonds;
    s.n_clusters = counters_.clusters;
    if (counters_.cross > 0) {
      s.j = counters_.cross + counters_.rank1;
      s.n1 = 1;
    } else if (counters_.rank1 > 0 && counters_.cls.x >= 1) {
      s.j = counters_.rank1;
      s.n1 = static_cast<int>(counters_.cls.x);
    }
    return s;
  }

 private:
  struct Counters {
    int clusters = 0;
    int rank1 = 0;
    int cross = 0;
    Vec2 cls;
    int violations = 0;
  };
  struct Undo {
    enum Kind { kCycle, kUnion } kind = kCycle;
    int root = 0;
    int child = 0;
    WindingLattice old_lattice;
    Counters counters;
  };

  int find(int v, Vec2& disp) const {
    disp = {0, 0};
    while (parent_[static_cast<std::size_t>(v)] != v) {
      disp = disp + offset_[static_cast<std::size_t>(v)];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void remove_contribution(const WindingLattice& l) {
    if (l.rank == 1) --counters_.rank1;
    if (l.rank == 2) --counters_.cross;
  }
  void add_contribution(const WindingLattice& l) {
    if (l.rank == 1) {
      if (l.b1.x == 0 ? l.b1.y != 1 : std::gcd(l.b1.x, std::labs(l.b1.y)) != 1) {
        ++counters_.violations;
      }
      if ((counters_.rank1 > 0 && !(counters_.cls == l.b1)) || counters_.cross > 0) {
        ++counters_.violations;
      }
      ++counters_.rank1;
      counters_.cls = l.b1;
    } else if (l.rank == 2) {
      if (counters_.rank1 > 0 || counters_.cross > 0) ++counters_.violations;
      ++counters_.cross;
    }
  }

  const TorusGraph* graph_;
  std::vector<int> parent_;
  std::vector<Vec2> offset_;  // displacement of a vertex relative to its parent
  std::vector<int> size_;
  std::vector<WindingLattice> lattice_;
  Counters counters_;
  std::vector<Undo> undo_;
};

}  // namespace potts
