#pragma once

#include <initializer_list>
#include <vector>

#include "gcm/rational.hpp"

namespace gcm {

/// Dense univariate polynomial c_0 + c_1 s + ... + c_d s^d over the rationals.
/// Trailing zero coefficients are never stored; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coefficients);
  explicit Polynomial(std::vector<Rational> coefficients);

  /// p(s) = s
  static Polynomial identity();
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, unsigned degree);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_identity() const;
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coefficient(unsigned j) const;

  Rational operator()(const Rational& s) const;
  double operator()(double s) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);
Polynomial derivative(const Polynomial& p);

}  // namespace gcm
