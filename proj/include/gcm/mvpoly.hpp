#pragma once

#include <map>
#include <vector>

#include "gcm/polynomial.hpp"
#include "gcm/rational.hpp"

namespace gcm {

/// Polynomial in ordered simplex variables s_1 <= ... <= s_k (0-based index
/// l = 0..k-1 in this API), stored sparsely by dense exponent vector.
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  explicit MultiPoly(int variables);

  static MultiPoly constant(int variables, const Rational& c);
  /// c * s_var
  static MultiPoly variable(int variables, int var, const Rational& c = 1);
  /// p(s_var)
  static MultiPoly univariate(int variables, int var, const Polynomial& p);

  int variables() const { return variables_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * prod s_l^{e_l}.
  void add_term(const Exponents& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  void check_same_shape(const MultiPoly& other) const;
  int variables_;
  TermMap terms_;
};

inline MultiPoly mp_add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
inline MultiPoly mp_mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }
/// Repeated squaring.
MultiPoly mp_pow(const MultiPoly& a, unsigned exponent);

/// integral_0^{s_{var+1}} a ds_var. Requires that no variable before var
/// appears in a and that var is not the last variable.
MultiPoly mp_integrate_step(const MultiPoly& a, int var);

/// Partial derivative with respect to s_var.
MultiPoly mp_differentiate(const MultiPoly& a, int var);

/// Renames s_from to s_to (exponents add when both occur).
MultiPoly mp_rename(const MultiPoly& a, int from, int to);

/// integral_0^inf e^{-rate s} a(s) ds for a depending on the last variable
/// only: sum_j c_j j! / rate^{j+1}.
Rational mp_laplace_terminal(const MultiPoly& a, const Rational& rate);

/// Exact value at a point.
Rational mp_eval(const MultiPoly& a, const std::vector<Rational>& point);

}  // namespace gcm
