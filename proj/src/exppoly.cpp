#include "gcm/exppoly.hpp"

#include <cmath>
#include <sstream>

namespace gcm {

ExpPoly::ExpPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Rational(0), Polynomial::constant(constant));
}

ExpPoly ExpPoly::term(const Rational& c, unsigned degree, const Rational& rate) {
  ExpPoly e;
  e.add(rate, Polynomial::monomial(c, degree));
  return e;
}

ExpPoly ExpPoly::t() { return term(1, 1, 0); }

ExpPoly ExpPoly::exp(const Rational& rate) { return term(1, 0, rate); }

ExpPoly ExpPoly::from_polynomial(const Polynomial& p, const Rational& rate) {
  ExpPoly e;
  e.add(rate, p);
  return e;
}

Polynomial ExpPoly::at_rate(const Rational& rate) const {
  auto it = terms_.find(rate);
  return it == terms_.end() ? Polynomial{} : it->second;
}

std::size_t ExpPoly::term_count() const {
  std::size_t count = 0;
  for (const auto& [rate, p] : terms_)
    for (const auto& c : p.coefficients())
      if (c != 0) ++count;
  return count;
}

void ExpPoly::add(const Rational& rate, const Polynomial& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(canonical(rate), p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  for (const auto& [rate, p] : other.terms_) add(rate, p);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other) {
  for (const auto& [rate, p] : other.terms_) add(rate, -p);
  return *this;
}

ExpPoly& ExpPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [rate, p] : terms_) p *= c;
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ra, pa] : a.terms_)
    for (const auto& [rb, pb] : b.terms_) out.add(Rational(ra + rb), pa * pb);
  return out;
}

ExpPoly ep_pow(const ExpPoly& a, unsigned exponent) {
  ExpPoly result(1);
  ExpPoly base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

ExpPoly ep_integrate(const ExpPoly& a) {
  ExpPoly out;
  Rational constant;  // -F(0), collected across all rates
  for (const auto& [rate, p] : a.terms()) {
    const auto& c = p.coefficients();
    if (rate == 0) {
      std::vector<Rational> q(c.size() + 1);
      for (std::size_t j = 0; j < c.size(); ++j) q[j + 1] = c[j] / static_cast<unsigned long>(j + 1);
      out += ExpPoly::from_polynomial(Polynomial(std::move(q)));
      continue;
    }
    // antiderivative of t^j e^{rt}: e^{rt} sum_{i<=j} (-1)^{j-i} j!/i! t^i / r^{j-i+1}
    const Rational inv_rate = 1 / rate;
    std::vector<Rational> q(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      Rational factor = c[j] * inv_rate;  // j!/i! / r^{j-i+1} at i = j
      for (std::size_t i = j + 1; i-- > 0;) {
        if ((j - i) % 2) q[i] -= factor;
        else q[i] += factor;
        if (i > 0) factor *= inv_rate * static_cast<unsigned long>(i);
      }
    }
    Polynomial anti(std::move(q));
    constant -= anti.coefficient(0);
    out += ExpPoly::from_polynomial(anti, rate);
  }
  out += ExpPoly(constant);
  return out;
}

ExpPoly ep_differentiate(const ExpPoly& a) {
  ExpPoly out;
  for (const auto& [rate, p] : a.terms()) {
    Polynomial d = derivative(p);
    if (rate != 0) d += p * rate;
    out += ExpPoly::from_polynomial(d, rate);
  }
  return out;
}

double ep_eval(const ExpPoly& a, double t) {
  double total = 0.0;
  for (const auto& [rate, p] : a.terms()) {
    const double poly = p(t);
    total += rate == 0 ? poly : poly * std::exp(rate.get_d() * t);
  }
  return total;
}

Rational ep_at_zero(const ExpPoly& a) {
  Rational total;
  for (const auto& [rate, p] : a.terms()) total += p.coefficient(0);
  return total;
}

std::optional<Rational> ep_limit_at_infinity(const ExpPoly& a) {
  Rational limit;
  for (const auto& [rate, p] : a.terms()) {
    if (rate > 0) return std::nullopt;
    if (rate == 0) {
      if (p.degree() > 0) return std::nullopt;
      limit = p.coefficient(0);
    }
  }
  return limit;
}

std::string render(const ExpPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [rate, p] : a.terms()) {
    const auto& c = p.coefficients();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      Rational mag = abs(c[j]);
      if (first) out << (c[j] < 0 ? "-" : "");
      else out << (c[j] < 0 ? " - " : " + ");
      first = false;
      out << to_string(mag);
      if (j == 1) out << " * t";
      else if (j > 1) out << " * t^" << j;
      if (rate != 0) out << " * exp(" << to_string(rate) << "*t)";
    }
  }
  return out.str();
}

}  // namespace gcm
