#pragma once

#include "maghom/error.hpp"
#include "maghom/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace maghom {

// Polynomial in q with arbitrary-precision integer coefficients, lowest
// degree first. The highest stored coefficient is nonzero; the zero
// polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }
  explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPoly constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }
  static IntPoly monomial(std::size_t degree, const Integer& c = 1) {
    std::vector<Integer> coeffs(degree + 1);
    coeffs[degree] = c;
    return IntPoly(std::move(coeffs));
  }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  Integer content() const {
    Integer c = 0;
    for (const auto& a : coeffs_) c = gcd(c, a);
    return c;
  }

  // Content-free part with positive leading coefficient.
  IntPoly primitive_part() const {
    if (is_zero()) return {};
    Integer c = content();
    if (leading() < 0) c = -c;
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] / c;
    return IntPoly(std::move(out));
  }

  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  IntPoly& operator+=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(out));
  }
  friend IntPoly operator*(const Integer& s, const IntPoly& p) {
    std::vector<Integer> out(p.coeffs_);
    for (auto& c : out) c *= s;
    return IntPoly(std::move(out));
  }

  // Exact quotient in Z[q]; throws InternalError if `divisor` does not divide.
  IntPoly divexact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw InternalError("polynomial division by zero");
    if (is_zero()) return {};
    std::vector<Integer> rem = coeffs_;
    const std::size_t dd = divisor.coeffs_.size();
    if (rem.size() < dd) throw InternalError("inexact polynomial division");
    std::vector<Integer> quot(rem.size() - dd + 1);
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Integer& top = rem[k + dd - 1];
      if (top % divisor.leading() != 0) throw InternalError("inexact polynomial division");
      Integer factor = top / divisor.leading();
      quot[k] = factor;
      if (factor == 0) continue;
      for (std::size_t j = 0; j < dd; ++j) rem[k + j] -= factor * divisor.coeffs_[j];
    }
    for (const auto& c : rem)
      if (c != 0) throw InternalError("inexact polynomial division");
    return IntPoly(std::move(quot));
  }

  // lc(divisor)^(deg - deg(divisor) + 1) * this  mod  divisor.
  IntPoly pseudo_remainder(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw InternalError("pseudo-remainder by zero");
    IntPoly r = *this;
    const long dd = divisor.degree();
    const Integer& lc = divisor.leading();
    while (!r.is_zero() && r.degree() >= dd) {
      IntPoly shifted = monomial(static_cast<std::size_t>(r.degree() - dd), r.leading()) * divisor;
      r = lc * r - shifted;
    }
    return r;
  }

  Integer evaluate(const Integer& q) const {
    Integer acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
    return acc;
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Highest degree first, e.g. "2q^3+4q^2-10q-6".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Integer& c = coeffs_[i];
      if (c == 0) continue;
      Integer mag = abs_value(c);
      if (c < 0) out << '-';
      else if (!first) out << '+';
      if (mag != 1 || i == 0) out << mag;
      if (i >= 1) out << 'q';
      if (i >= 2) out << '^' << i;
      first = false;
    }
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

// gcd in Z[q], normalised to positive leading coefficient.
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? IntPoly{} : b.primitive_part() * IntPoly::constant(b.content());
  if (b.is_zero()) return a.primitive_part() * IntPoly::constant(a.content());
  Integer c = gcd(a.content(), b.content());
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = x.pseudo_remainder(y);
    x = std::move(y);
    y = r.is_zero() ? IntPoly{} : r.primitive_part();
  }
  return c * x;
}

// Truncated integer power series c_0 + c_1 q + ... + c_order q^order.
struct SeriesCoeffs {
  std::size_t order = 0;
  std::vector<Integer> coeffs;

  friend bool operator==(const SeriesCoeffs&, const SeriesCoeffs&) = default;
};

// Reduced fraction num/den in Q(q): gcd(num, den) = 1 in Z[q] and den has a
// positive leading coefficient.
class RatFunc {
 public:
  RatFunc() : num_(), den_(IntPoly{1}) {}
  RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  // Taylor coefficients at q = 0. Requires den(0) = +-1 so the expansion
  // stays integral, which holds for every magnitude.
  SeriesCoeffs taylor(std::size_t order) const {
    const Integer d0 = den_.coeff(0);
    if (abs_value(d0) != 1)
      throw InternalError("denominator constant term is not a unit: " + d0.str());
    SeriesCoeffs s;
    s.order = order;
    s.coeffs.assign(order + 1, 0);
    for (std::size_t n = 0; n <= order; ++n) {
      Integer acc = num_.coeff(n);
      for (std::size_t j = 1; j <= n && j < den_.coeffs().size(); ++j) acc -= den_.coeffs()[j] * s.coeffs[n - j];
      s.coeffs[n] = acc * d0;
    }
    return s;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw InternalError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = IntPoly{1};
      return;
    }
    IntPoly g = gcd(num_, den_);
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
    if (den_.leading() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  IntPoly num_;
  IntPoly den_;
};

}  // namespace maghom
