#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "potts/exact.hpp"

namespace potts {

enum class LatticeKind { kSquare, kTriangular };

inline std::string to_string(LatticeKind kind) {
  return kind == LatticeKind::kSquare ? "square" : "triangular";
}

inline LatticeKind parse_lattice_kind(const std::string& name) {
  if (name == "square") return LatticeKind::kSquare;
  if (name == "triangular") return LatticeKind::kTriangular;
  throw std::invalid_argument("unknown lattice kind: " + name);
}

/// Edge families. Longitudinal bonds run along the transfer direction.
enum class EdgeFamily { kLongitudinal, kTransverse, kDiagonal };

struct Edge {
  int u = 0;
  int v = 0;
  /// Step from u to v in unwrapped lattice units.
  int dx = 0;
  int dy = 0;
  BigRat coupling;
  EdgeFamily family = EdgeFamily::kLongitudinal;
  /// Lattice coordinates of u.
  int x = 0;
  int y = 0;
};

/// Coupling assignment: one shared value, a seeded pseudo-random list, or an
/// explicit list in edge order.
struct Homogeneous {
  BigRat v;
};
struct Seeded {
  unsigned long seed = 1;
};
struct Explicit {
  std::vector<BigRat> values;
};
using EdgeCouplingSpec = std::variant<Homogeneous, Seeded, Explicit>;

/// L x N torus. Vertex (x, y) has index x*L + y with x in 0..N-1 the
/// longitudinal coordinate and y in 0..L-1 the transverse one.
class TorusGraph {
 public:
  TorusGraph(LatticeKind kind, int width, int length, std::vector<Edge> edges, bool homogeneous)
      : kind_(kind), width_(width), length_(length), edges_(std::move(edges)),
        homogeneous_(homogeneous) {}

  LatticeKind kind() const { return kind_; }
  int width() const { return width_; }
  int length() const { return length_; }
  int vertex_count() const { return width_ * length_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  int vertex(int x, int y) const {
    return ((x % length_ + length_) % length_) * width_ + ((y % width_ + width_) % width_);
  }
  /// True when every edge carries the same coupling.
  bool homogeneous() const { return homogeneous_; }

  /// Index of the edge of the given family whose first endpoint is (x, y).
  int edge_index(EdgeFamily family, int x, int y) const {
    const int per_column = kind_ == LatticeKind::kSquare ? 2 * width_ : 3 * width_;
    const int offset = family == EdgeFamily::kLongitudinal ? 0
                       : family == EdgeFamily::kTransverse ? width_
                                                           : 2 * width_;
    if (family == EdgeFamily::kDiagonal && kind_ != LatticeKind::kTriangular) {
      throw std::invalid_argument("square lattice has no diagonal bonds");
    }
    return x * per_column + offset + y;
  }

  std::string describe() const {
    return to_string(kind_) + " " + std::to_string(width_) + "x" + std::to_string(length_);
  }

 private:
  LatticeKind kind_;
  int width_;
  int length_;
  std::vector<Edge> edges_;
  bool homogeneous_;
};

namespace detail {
/// Couplings p/q with 1 <= p, q <= 13 drawn from minstd_rand; repeats are
/// skipped so every edge gets a distinct value.
inline std::vector<BigRat> seeded_couplings(unsigned long seed, int count) {
  std::minstd_rand rng(static_cast<std::minstd_rand::result_type>(seed == 0 ? 1 : seed));
  std::vector<BigRat> out;
  while (static_cast<int>(out.size()) < count) {
    const long p = 1 + static_cast<long>(rng() % 13);
    const long q = 1 + static_cast<long>(rng() % 13);
    BigRat c(p, q);
    bool repeat = false;
    for (const auto& o : out) repeat = repeat || o == c;
    if (!repeat) out.push_back(c);
  }
  return out;
}
}  // namespace detail

/// Edge order per column x: longitudinal y = 0..L-1, transverse y = 0..L-1,
/// then (triangular only) diagonal y = 0..L-1.
inline TorusGraph build_torus(LatticeKind kind, int width, int length,
                              const EdgeCouplingSpec& couplings) {
  if (width < 2) throw std::invalid_argument("torus width must be >= 2");
  if (length < 1) throw std::invalid_argument("torus length must be >= 1");
  const int per_column = kind == LatticeKind::kSquare ? 2 * width : 3 * width;
  const int edge_total = per_column * length;

  std::vector<BigRat> values;
  bool homogeneous = false;
  if (const auto* h = std::get_if<Homogeneous>(&couplings)) {
    values.assign(static_cast<std::size_t>(edge_total), h->v);
    homogeneous = true;
  } else if (const auto* s = std::get_if<Seeded>(&couplings)) {
    values = detail::seeded_couplings(s->seed, edge_total);
  } else {
    values = std::get<Explicit>(couplings).values;
    if (static_cast<int>(values.size()) != edge_total) {
      throw std::invalid_argument("explicit coupling list has " + std::to_string(values.size()) +
                                  " entries, lattice has " + std::to_string(edge_total) + " edges");
    }
    homogeneous = true;
    for (const auto& v : values) homogeneous = homogeneous && v == values.front();
  }

  auto index = [&](int x, int y) {
    return ((x % length + length) % length) * width + ((y % width + width) % width);
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(edge_total));
  auto add = [&](int x, int y, int dx, int dy, EdgeFamily family) {
    Edge e;
    e.u = index(x, y);
    e.v = index(x + dx, y + dy);
    e.dx = dx;
    e.dy = dy;
    e.family = family;
    e.x = x;
    e.y = y;
    e.coupling = values[edges.size()];
    edges.push_back(std::move(e));
  };
  for (int x = 0; x < length; ++x) {
    for (int y = 0; y < width; ++y) add(x, y, 1, 0, EdgeFamily::kLongitudinal);
    for (int y = 0; y < width; ++y) add(x, y, 0, 1, EdgeFamily::kTransverse);
    if (kind == LatticeKind::kTriangular) {
      for (int y = 0; y < width; ++y) add(x, y, 1, 1, EdgeFamily::kDiagonal);
    }
  }
  return TorusGraph(kind, width, length, std::move(edges), homogeneous);
}

inline TorusGraph build_torus(LatticeKind kind, int width, int length, const BigRat& v) {
  return build_torus(kind, width, length, EdgeCouplingSpec{Homogeneous{v}});
}

}  // namespace potts
