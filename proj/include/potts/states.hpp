#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/numtheory.hpp"

namespace potts {

/// Partition of the boundary points with marked blocks. `block[p]` is the
/// block of point p, numbered by first appearance; `mark[b]` is -1 for an
/// unmarked block and the label 0..l-1 of a marked one. Unlabeled states use
/// the canonical labeling (shift 0).
struct ConnState {
  std::vector<int> block;
  std::vector<int> mark;

  int points() const { return static_cast<int>(block.size()); }
  int blocks() const { return static_cast<int>(mark.size()); }
  int level() const {
    return static_cast<int>(std::count_if(mark.begin(), mark.end(), [](int m) { return m >= 0; }));
  }
  bool marked(int b) const { return mark[static_cast<std::size_t>(b)] >= 0; }
  std::vector<int> members(int b) const {
    std::vector<int> out;
    for (int p = 0; p < points(); ++p) {
      if (block[static_cast<std::size_t>(p)] == b) out.push_back(p);
    }
    return out;
  }

  friend auto operator<=>(const ConnState&, const ConnState&) = default;
  friend bool operator==(const ConnState&, const ConnState&) = default;
};

/// E_l^a acting on the labels.
struct MarkPermutation {
  int l = 1;
  int a = 0;
};

/// Renumbers blocks by first appearance and drops empty ones.
inline ConnState canonicalize(const ConnState& s) {
  std::vector<int> remap(static_cast<std::size_t>(std::max(s.blocks(), 0)) + s.block.size(), -1);
  ConnState out;
  out.block.resize(s.block.size());
  for (std::size_t p = 0; p < s.block.size(); ++p) {
    const int b = s.block[p];
    int& r = remap[static_cast<std::size_t>(b)];
    if (r < 0) {
      r = static_cast<int>(out.mark.size());
      out.mark.push_back(s.mark[static_cast<std::size_t>(b)]);
    }
    out.block[p] = r;
  }
  return out;
}

/// Labels of the marked blocks in order of their smallest point.
inline std::vector<int> marked_labels(const ConnState& s) {
  std::vector<int> out;
  for (int b = 0; b < s.blocks(); ++b) {
    if (s.marked(b)) out.push_back(s.mark[static_cast<std::size_t>(b)]);
  }
  return out;
}

/// Global cyclic shift of a canonical labeled state: the label of its first
/// marked block. Throws if the labels are not cyclically consecutive.
inline int label_shift(const ConnState& s) {
  const auto labels = marked_labels(s);
  const int l = static_cast<int>(labels.size());
  if (l == 0) return 0;
  for (int i = 0; i < l; ++i) {
    if (labels[static_cast<std::size_t>(i)] != (labels[0] + i) % l) {
      throw std::logic_error("marked labels are not in cyclic order");
    }
  }
  return labels[0];
}

/// The labeled state whose i-th marked block carries (i + shift) mod l.
inline ConnState with_shift(const ConnState& s, int shift) {
  ConnState out = s;
  const int l = s.level();
  int i = 0;
  for (int b = 0; b < out.blocks(); ++b) {
    if (out.marked(b)) out.mark[static_cast<std::size_t>(b)] = ((i++ + shift) % l + l) % l;
  }
  return out;
}

inline ConnState canonical_labels(const ConnState& s) {
  if (s.level() < 1) throw std::invalid_argument("canonical_labels: state has no marked block");
  return with_shift(s, 0);
}

inline ConnState apply_mark_shift(const ConnState& s, const MarkPermutation& p) {
  const int l = s.level();
  if (p.l != l) {
    throw std::invalid_argument("apply_mark_shift: level " + std::to_string(p.l) +
                                " does not match state level " + std::to_string(l));
  }
  ConnState out = s;
  for (auto& m : out.mark) {
    if (m >= 0) m = ((m + p.a) % l + l) % l;
  }
  return out;
}

namespace detail {

inline bool crossing(const std::vector<int>& block) {
  const int n = static_cast<int>(block.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int x = block[static_cast<std::size_t>(a)];
          const int y = block[static_cast<std::size_t>(b)];
          if (x != y && block[static_cast<std::size_t>(c)] == x && block[static_cast<std::size_t>(d)] == y) {
            return true;
          }
        }
  return false;
}

/// Index of the cyclic gap of `pts` (sorted) containing point p.
inline int gap_of(const std::vector<int>& pts, int p) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] < p && p < pts[i + 1]) return static_cast<int>(i);
  }
  return static_cast<int>(pts.size()) - 1;
}

/// True when every block in `others` sits in one gap of `pts`.
inline bool single_gap(const ConnState& s, const std::vector<int>& pts, const std::vector<int>& others) {
  int gap = -1;
  for (int b : others) {
    const int g = gap_of(pts, s.members(b).front());
    if (gap >= 0 && g != gap) return false;
    gap = g;
  }
  return true;
}

inline bool admissible(const ConnState& s) {
  std::vector<int> marked;
  for (int b = 0; b < s.blocks(); ++b) {
    if (s.marked(b)) marked.push_back(b);
  }
  for (int b = 0; b < s.blocks(); ++b) {
    const auto pts = s.members(b);
    if (!s.marked(b)) {
      if (!single_gap(s, pts, marked)) return false;
    } else {
      std::vector<int> others;
      for (int m : marked) {
        if (m != b) others.push_back(m);
      }
      if (!single_gap(s, pts, others)) return false;
    }
  }
  return true;
}

/// Restricted growth strings of length n (set partitions), lexicographic.
inline void set_partitions(int n, std::vector<int>& cur, int max_block, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int b = 0; b <= max_block + 1; ++b) {
    cur.push_back(b);
    set_partitions(n, cur, std::max(max_block, b), out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Admissible connectivity states at width L and level l, canonically
/// labeled (shift 0). Fails hard if the count differs from n_tor(L, l).
inline std::vector<ConnState> enumerate_states(int width, int level) {
  if (width < 1 || level < 0 || level > width) {
    throw std::invalid_argument("enumerate_states: need 0 <= l <= L, L >= 1");
  }
  std::vector<std::vector<int>> partitions;
  std::vector<int> cur;
  detail::set_partitions(width, cur, -1, partitions);
  std::vector<ConnState> out;
  for (const auto& part : partitions) {
    if (detail::crossing(part)) continue;
    const int nb = *std::max_element(part.begin(), part.end()) + 1;
    if (nb < level) continue;
    // Choose which blocks are marked: all level-subsets, lexicographic.
    std::vector<int> pick(static_cast<std::size_t>(nb), 0);
    std::fill(pick.end() - level, pick.end(), 1);
    do {
      ConnState s;
      s.block = part;
      s.mark.assign(static_cast<std::size_t>(nb), -1);
      for (int b = 0; b < nb; ++b) {
        if (pick[static_cast<std::size_t>(b)]) s.mark[static_cast<std::size_t>(b)] = 0;
      }
      if (level > 0) s = with_shift(s, 0);
      if (detail::admissible(s)) out.push_back(std::move(s));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  // next_permutation walks subsets from "last blocks marked" upward; sort for
  // a stable, documented order.
  std::sort(out.begin(), out.end());
  if (mpz_class(static_cast<unsigned long>(out.size())) != nt::n_tor(width, level)) {
    throw std::logic_error("enumerate_states: " + std::to_string(out.size()) + " states at (L,l) = (" +
                           std::to_string(width) + "," + std::to_string(level) + "), expected " +
                           nt::n_tor(width, level).get_str());
  }
  return out;
}

/// All l shifts of every standard state (one copy at l = 0).
inline std::vector<ConnState> enumerate_labeled_states(int width, int level) {
  std::vector<ConnState> out;
  for (const auto& s : enumerate_states(width, level)) {
    if (level == 0) {
      out.push_back(s);
      continue;
    }
    for (int a = 0; a < level; ++a) out.push_back(with_shift(s, a));
  }
  return out;
}

/// Cyclic rotation p -> p + r of the boundary points, re-canonicalized.
inline ConnState rotate_points(const ConnState& s, int r) {
  const int n = s.points();
  ConnState moved;
  moved.block.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) {
    moved.block[static_cast<std::size_t>(((p + r) % n + n) % n)] = s.block[static_cast<std::size_t>(p)];
  }
  moved.mark = s.mark;
  return canonicalize(moved);
}

/// Debug form: "{1,3}•1{2}" with 1-based points; `labeled` adds mark labels.
inline std::string to_string(const ConnState& s, bool labeled = false) {
  std::string out;
  for (int b = 0; b < s.blocks(); ++b) {
    out += "{";
    bool first = true;
    for (int p : s.members(b)) {
      if (!first) out += ",";
      out += std::to_string(p + 1);
      first = false;
    }
    out += "}";
    if (s.marked(b)) {
      out += "•";
      if (labeled) out += std::to_string(s.mark[static_cast<std::size_t>(b)] + 1);
    }
  }
  return out;
}

}  // namespace potts
