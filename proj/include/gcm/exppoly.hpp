#pragma once

#include <map>
#include <optional>
#include <string>

#include "gcm/polynomial.hpp"
#include "gcm/rational.hpp"

namespace gcm {

/// Exact exp-polynomial f(t) = sum_r p_r(t) e^{r t} with rational rates r and
/// rational polynomial coefficients p_r.
///
/// The representation is canonical: rates are unique keys and no zero
/// polynomial is stored, so `==` is exact equality of functions.
class ExpPoly {
 public:
  using TermMap = std::map<Rational, Polynomial>;

  ExpPoly() = default;
  ExpPoly(const Rational& constant);  // NOLINT: constants embed implicitly
  ExpPoly(int constant) : ExpPoly(Rational(constant)) {}

  /// c * t^degree * e^{rate t}
  static ExpPoly term(const Rational& c, unsigned degree, const Rational& rate);
  /// The identity function t.
  static ExpPoly t();
  static ExpPoly exp(const Rational& rate);
  /// p(t) e^{rate t}
  static ExpPoly from_polynomial(const Polynomial& p, const Rational& rate = 0);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Polynomial multiplying e^{rate t}; zero when the rate is absent.
  Polynomial at_rate(const Rational& rate) const;
  std::size_t term_count() const;

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator-=(const ExpPoly& other);
  ExpPoly& operator*=(const Rational& c);

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator-(ExpPoly a) { return a *= Rational(-1); }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(ExpPoly a, const Rational& c) { return a *= c; }
  friend ExpPoly operator*(const Rational& c, ExpPoly a) { return a *= c; }
  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

 private:
  void add(const Rational& rate, const Polynomial& p);
  TermMap terms_;
};

inline ExpPoly ep_add(const ExpPoly& a, const ExpPoly& b) { return a + b; }
inline ExpPoly ep_mul(const ExpPoly& a, const ExpPoly& b) { return a * b; }
inline ExpPoly ep_scale(const ExpPoly& a, const Rational& c) { return a * c; }

ExpPoly ep_pow(const ExpPoly& a, unsigned exponent);

/// F(t) = integral_0^t a(s) ds, exactly.
ExpPoly ep_integrate(const ExpPoly& a);

ExpPoly ep_differentiate(const ExpPoly& a);

/// Double-precision value at t; terms are summed in ascending rate order.
double ep_eval(const ExpPoly& a, double t);

/// Exact value at t = 0.
Rational ep_at_zero(const ExpPoly& a);

/// lim_{t -> inf} a(t) when it exists as a finite constant: every nonzero rate
/// negative and a constant rate-0 part. Empty optional means divergent.
std::optional<Rational> ep_limit_at_infinity(const ExpPoly& a);

/// Renders "c * t^j * exp(r*t)" terms joined by " + " / " - ", with exact
/// rational c and r, ascending in rate then in power of t. Zero renders as "0".
std::string render(const ExpPoly& a);

}  // namespace gcm
