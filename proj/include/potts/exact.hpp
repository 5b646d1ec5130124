#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace potts {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class BigRat {
 public:
  BigRat() = default;
  BigRat(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRat(long num, long den) {
    if (den == 0) throw std::domain_error("BigRat: zero denominator");
    value_ = mpq_class(mpz_class(num), mpz_class(den));
    value_.canonicalize();
  }
  explicit BigRat(mpz_class num) : value_(std::move(num)) {}
  BigRat(mpz_class num, mpz_class den) {
    if (den == 0) throw std::domain_error("BigRat: zero denominator");
    value_ = mpq_class(std::move(num), std::move(den));
    value_.canonicalize();
  }
  explicit BigRat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q" or "p" (optional sign). Anything else, including decimals,
  /// is rejected.
  static BigRat parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      return !s.empty() && std::all_of(s.begin(), s.end(),
                                       [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip_plus = [](std::string_view s) {
      return std::string(!s.empty() && s.front() == '+' ? s.substr(1) : s);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!is_int(text)) throw std::invalid_argument("not a rational: " + std::string(text));
      return BigRat(mpz_class(strip_plus(text)));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+') {
      throw std::invalid_argument("not a rational: " + std::string(text));
    }
    mpz_class d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    return BigRat(mpz_class(strip_plus(num)), d);
  }

  const mpq_class& raw() const { return value_; }
  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// Serialization form "num/den"; the denominator is always present.
  std::string to_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }
  /// Compact form: "3", "-5/2".
  std::string to_compact() const { return value_.get_str(); }

  BigRat pow(unsigned exponent) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return BigRat(std::move(n), std::move(d));
  }

  BigRat& operator+=(const BigRat& o) { value_ += o.value_; return *this; }
  BigRat& operator-=(const BigRat& o) { value_ -= o.value_; return *this; }
  BigRat& operator*=(const BigRat& o) { value_ *= o.value_; return *this; }
  BigRat& operator/=(const BigRat& o) {
    if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }
  friend BigRat operator-(const BigRat& a) { return BigRat(mpq_class(-a.value_)); }

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.value_ == b.value_; }
  friend bool operator!=(const BigRat& a, const BigRat& b) { return a.value_ != b.value_; }
  friend bool operator<(const BigRat& a, const BigRat& b) { return a.value_ < b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const BigRat& r) {
    return os << r.to_compact();
  }

 private:
  mpq_class value_{0};
};

/// Dense univariate polynomial in Q with rational coefficients. Index i holds
/// the coefficient of Q^i; trailing zeros are never stored, so the zero
/// polynomial is the empty sequence.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(const BigRat& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) coeffs_.push_back(constant);
  }
  PolyQ(long constant) : PolyQ(BigRat(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit PolyQ(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  PolyQ(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  /// The polynomial c * Q^power.
  static PolyQ monomial(const BigRat& c, std::size_t power) {
    std::vector<BigRat> cs(power + 1);
    cs[power] = c;
    return PolyQ(std::move(cs));
  }
  static PolyQ q() { return monomial(BigRat(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigRat>& coefficients() const { return coeffs_; }
  BigRat coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : BigRat(0);
  }

  BigRat eval(const BigRat& q) const {
    BigRat acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= q;
      acc += *it;
    }
    return acc;
  }

  std::complex<double> eval(std::complex<double> q) const {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * q + it->to_double();
    }
    return acc;
  }

  /// Multiply by Q^k.
  PolyQ shifted_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<BigRat> cs(k);
    cs.insert(cs.end(), coeffs_.begin(), coeffs_.end());
    return PolyQ(std::move(cs));
  }

  /// Exact division by Q^k. Throws if the lowest k coefficients are not zero.
  PolyQ divided_by_q_power(std::size_t k) const {
    for (std::size_t i = 0; i < std::min(k, coeffs_.size()); ++i) {
      if (!coeffs_[i].is_zero()) {
        throw std::domain_error("PolyQ: not divisible by Q^" + std::to_string(k));
      }
    }
    if (k >= coeffs_.size()) return {};
    return PolyQ(std::vector<BigRat>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k),
                                     coeffs_.end()));
  }

  PolyQ& operator+=(const PolyQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolyQ& operator-=(const PolyQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  PolyQ& operator*=(const BigRat& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  PolyQ& operator/=(const BigRat& s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
  }
  PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }

  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator-(PolyQ a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend PolyQ operator*(PolyQ a, const BigRat& s) { return a *= s; }
  friend PolyQ operator*(const BigRat& s, PolyQ a) { return a *= s; }
  friend PolyQ operator/(PolyQ a, const BigRat& s) { return a /= s; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> cs(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return PolyQ(std::move(cs));
  }

  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }
  /// Lexicographic on (degree, coefficients from the top); used only for
  /// deterministic ordering.
  friend bool operator<(const PolyQ& a, const PolyQ& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
  }

  /// Human-readable form, highest power first: "1/2*Q^2 - 3/2*Q + 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const BigRat& c = coeffs_[i];
      if (c.is_zero()) continue;
      BigRat mag = c.sign() < 0 ? -c : c;
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      bool unit = mag == BigRat(1);
      if (i == 0) {
        out += mag.to_compact();
      } else {
        if (!unit) out += mag.to_compact() + "*";
        out += "Q";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<BigRat> coeffs_;
};

/// Complex numbers appear only in the numeric spectral path.
using ComplexF = std::complex<double>;

}  // namespace potts
