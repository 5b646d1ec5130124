#pragma once

#include <stdexcept>
#include <string>

#include "potts/exact.hpp"

namespace potts {

/// Evaluation at a fixed rational Q. Scalars are BigRat.
struct FixedQ {
  using Scalar = BigRat;
  BigRat q;

  explicit FixedQ(BigRat value) : q(std::move(value)) {}

  Scalar constant(const BigRat& c) const { return c; }
  Scalar q_power(int k) const { return q.pow(static_cast<unsigned>(k)); }
  Scalar divide_q_power(const Scalar& s, int k) const {
    if (q.is_zero()) throw std::domain_error("division by Q^j at Q = 0");
    return s / q_power(k);
  }
  BigRat at(const Scalar& s, const BigRat&) const { return s; }
  static bool is_zero(const Scalar& s) { return s.is_zero(); }
  static std::string name() { return "fixed-q"; }
};

/// Symbolic Q; couplings stay fixed rationals. Scalars are PolyQ.
struct PolyInQ {
  using Scalar = PolyQ;

  Scalar constant(const BigRat& c) const { return PolyQ(c); }
  Scalar q_power(int k) const { return PolyQ::monomial(BigRat(1), static_cast<std::size_t>(k)); }
  Scalar divide_q_power(const Scalar& s, int k) const {
    return s.divided_by_q_power(static_cast<std::size_t>(k));
  }
  BigRat at(const Scalar& s, const BigRat& q) const { return s.eval(q); }
  static bool is_zero(const Scalar& s) { return s.is_zero(); }
  static std::string name() { return "poly-q"; }
};

inline std::string scalar_string(const BigRat& r) { return r.to_string(); }
inline std::string scalar_string(const PolyQ& p) { return p.to_string(); }

/// Evaluate a PolyQ-valued quantity in FixedQ mode.
inline BigRat lift(const FixedQ& m, const PolyQ& p) { return p.eval(m.q); }
inline PolyQ lift(const PolyInQ&, const PolyQ& p) { return p; }

}  // namespace potts
