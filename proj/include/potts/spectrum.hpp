#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/transfer.hpp"

namespace potts {

inline constexpr long kMaxDenseDimension = 2000;

struct SectorSpectrum {
  int l = 0;
  int k = 0;
  int dimension = 0;
  /// Eigenvalues of the sector block of the matrix actually diagonalized:
  /// one row when all rows coincide, else the full period product.
  std::vector<ComplexF> eigenvalues;
  /// Exponent turning eigenvalues into the period trace (N or 1).
  int power = 1;
  double projector_idempotence = 0.0;
  double projector_rank = 0.0;

  ComplexF power_sum() const {
    ComplexF acc{0.0, 0.0};
    for (const auto& e : eigenvalues) acc += std::pow(e, power);
    return acc;
  }
};

inline ComplexF irrep_character(int l, int k, int a) {
  if (l == 0) return {1.0, 0.0};
  const double angle = -2.0 * M_PI * static_cast<double>((static_cast<long>(k) * a) % l) / l;
  return std::polar(1.0, angle);
}

/// Descending modulus, then real part, then imaginary part; ties within 1e-9.
inline void sort_eigenvalues(std::vector<ComplexF>& values) {
  constexpr double tol = 1e-9;
  std::sort(values.begin(), values.end(), [](const ComplexF& a, const ComplexF& b) {
    if (std::abs(std::abs(a) - std::abs(b)) > tol) return std::abs(a) > std::abs(b);
    if (std::abs(a.real() - b.real()) > tol) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

/// Dense matrix of the level-l transfer operator on the labeled space,
/// indexed (standard state i, shift s) -> i * l + s. `full_period` selects
/// the product of all rows instead of row 0.
inline Eigen::MatrixXd dense_labeled_matrix(const TransferEngine<FixedQ>& engine, bool full_period) {
  const int l = engine.level();
  const int shifts = l == 0 ? 1 : l;
  const auto& basis = engine.basis();
  const long n = static_cast<long>(basis.size()) * shifts;
  if (n > kMaxDenseDimension) {
    throw std::invalid_argument("dense guard: labeled dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxDenseDimension));
  }
  std::map<ConnState, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));
  auto position = [&](const ConnState& s) {
    const int shift = l == 0 ? 0 : label_shift(s);
    auto it = index.find(l == 0 ? s : with_shift(s, 0));
    if (it == index.end()) throw std::logic_error("image state outside the enumerated basis");
    return it->second * shifts + shift;
  };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (int s = 0; s < shifts; ++s) {
      StateVector<BigRat> v;
      v.emplace(l == 0 ? basis[i] : with_shift(basis[i], s), BigRat(1));
      v = full_period ? engine.apply_period(std::move(v)) : engine.apply_row(v, 0);
      const int col = static_cast<int>(i) * shifts + s;
      for (const auto& [state, c] : v) m(position(state), col) += c.to_double();
    }
  }
  return m;
}

/// Projector onto the D_k isotypic component: (1/l) sum_a conj(chi(E^a)) E^a.
inline Eigen::MatrixXcd sector_projector(int standard_count, int l, int k) {
  const int shifts = l == 0 ? 1 : l;
  const long n = static_cast<long>(standard_count) * shifts;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < shifts; ++a) {
    const ComplexF w = std::conj(irrep_character(l, k, a)) / static_cast<double>(shifts);
    for (int i = 0; i < standard_count; ++i) {
      for (int s = 0; s < shifts; ++s) p(i * shifts + (s + a) % shifts, i * shifts + s) += w;
    }
  }
  return p;
}

inline SectorSpectrum sector_spectrum(const TorusGraph& g, int l, int k, const BigRat& q) {
  if (q.sign() <= 0) throw std::invalid_argument("sector_spectrum: Q must be positive");
  if (l > 0) nt::require_irrep(l, k);
  TransferEngine<FixedQ> engine(g, l, FixedQ(q));
  const bool uniform = g.homogeneous();
  const Eigen::MatrixXd m = dense_labeled_matrix(engine, !uniform);
  const int shifts = l == 0 ? 1 : l;
  const int dim = static_cast<int>(engine.basis().size());

  SectorSpectrum out;
  out.l = l;
  out.k = l == 0 ? 0 : k;
  out.dimension = dim;
  out.power = uniform ? g.length() : 1;

  const Eigen::MatrixXcd p = sector_projector(dim, l, k);
  out.projector_idempotence = (p * p - p).norm();
  out.projector_rank = p.trace().real();

  // Block B_{ji} = sum_b chi(E^b) T_{(j,b),(i,0)}.
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      for (int b = 0; b < shifts; ++b) block(j, i) += irrep_character(l, k, b) * m(j * shifts + b, i * shifts);
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  for (int i = 0; i < dim; ++i) out.eigenvalues.push_back(solver.eigenvalues()(i));
  sort_eigenvalues(out.eigenvalues);
  return out;
}

/// Trace of p_D T over the labeled space; equals the block trace.
inline ComplexF projected_trace(const TorusGraph& g, int l, int k, const BigRat& q) {
  TransferEngine<FixedQ> engine(g, l, FixedQ(q));
  const Eigen::MatrixXd m = dense_labeled_matrix(engine, true);
  const Eigen::MatrixXcd p = sector_projector(static_cast<int>(engine.basis().size()), l, k);
  return (p * m.cast<ComplexF>()).trace();
}

}  // namespace potts
