#include "gcm/mvpoly.hpp"

#include <string>

namespace gcm {

MultiPoly::MultiPoly(int variables) : variables_(variables) {
  if (variables < 1) throw DomainError("MultiPoly needs at least one variable");
}

MultiPoly MultiPoly::constant(int variables, const Rational& c) {
  MultiPoly p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int variables, int var, const Rational& c) {
  MultiPoly p(variables);
  if (var < 0 || var >= variables) throw DomainError("variable index out of range");
  Exponents e(variables, 0);
  e[var] = 1;
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::univariate(int variables, int var, const Polynomial& poly) {
  MultiPoly p(variables);
  if (var < 0 || var >= variables) throw DomainError("variable index out of range");
  const auto& c = poly.coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) {
    Exponents e(variables, 0);
    e[var] = static_cast<unsigned>(j);
    p.add_term(e, c[j]);
  }
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != variables_) throw DomainError("exponent vector size mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, canonical(c));
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_same_shape(const MultiPoly& other) const {
  if (other.variables_ != variables_)
    throw DomainError("MultiPoly variable count mismatch: " + std::to_string(variables_) + " vs " +
                      std::to_string(other.variables_));
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same_shape(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_shape(b);
  MultiPoly out(a.variables_);
  MultiPoly::Exponents e(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int l = 0; l < a.variables_; ++l) e[l] = ea[l] + eb[l];
      out.add_term(e, Rational(ca * cb));
    }
  }
  return out;
}

MultiPoly mp_pow(const MultiPoly& a, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(a.variables(), 1);
  MultiPoly base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

MultiPoly mp_integrate_step(const MultiPoly& a, int var) {
  if (var < 0 || var + 1 >= a.variables())
    throw DomainError("mp_integrate_step: variable " + std::to_string(var) +
                      " has no upper-limit variable");
  MultiPoly out(a.variables());
  for (const auto& [e, c] : a.terms()) {
    for (int l = 0; l < var; ++l)
      if (e[l] != 0)
        throw DomainError("mp_integrate_step: variable " + std::to_string(l) +
                          " must be integrated out before " + std::to_string(var));
    MultiPoly::Exponents f = e;
    const unsigned power = f[var] + 1;
    f[var] = 0;
    f[var + 1] += power;
    out.add_term(f, Rational(c / static_cast<unsigned long>(power)));
  }
  return out;
}

MultiPoly mp_differentiate(const MultiPoly& a, int var) {
  if (var < 0 || var >= a.variables()) throw DomainError("variable index out of range");
  MultiPoly out(a.variables());
  for (const auto& [e, c] : a.terms()) {
    if (e[var] == 0) continue;
    MultiPoly::Exponents f = e;
    --f[var];
    out.add_term(f, Rational(c * static_cast<unsigned long>(e[var])));
  }
  return out;
}

MultiPoly mp_rename(const MultiPoly& a, int from, int to) {
  if (from < 0 || to < 0 || from >= a.variables() || to >= a.variables())
    throw DomainError("variable index out of range");
  MultiPoly out(a.variables());
  for (const auto& [e, c] : a.terms()) {
    MultiPoly::Exponents f = e;
    if (from != to) {
      f[to] += f[from];
      f[from] = 0;
    }
    out.add_term(f, c);
  }
  return out;
}

Rational mp_laplace_terminal(const MultiPoly& a, const Rational& rate) {
  if (rate <= 0) throw DomainError("mp_laplace_terminal: rate must be positive");
  const int last = a.variables() - 1;
  const Rational inv_rate = 1 / rate;
  Rational total;
  for (const auto& [e, c] : a.terms()) {
    for (int l = 0; l < last; ++l)
      if (e[l] != 0) throw DomainError("mp_laplace_terminal: polynomial is not univariate in the last variable");
    const unsigned j = e[last];
    total += c * factorial(j) * power(inv_rate, static_cast<long>(j) + 1);
  }
  return total;
}

Rational mp_eval(const MultiPoly& a, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != a.variables()) throw DomainError("mp_eval: point dimension mismatch");
  Rational total;
  for (const auto& [e, c] : a.terms()) {
    Rational term = c;
    for (int l = 0; l < a.variables(); ++l) term *= power(point[l], e[l]);
    total += term;
  }
  return total;
}

}  // namespace gcm
