#include "gcm/gc_moments.hpp"

#include <string>

namespace gcm {

namespace {

void check_order(const GrowthSpec& spec, int n) {
  spec.validate();
  if (n < 0) throw DomainError("moment order must be nonnegative");
  if (n > spec.max_order)
    throw DomainError("order " + std::to_string(n) + " exceeds the configured cap " +
                      std::to_string(spec.max_order));
  if (n > spec.cutoff.max_order())
    throw DomainError("cut-off moment sequence only reaches order " +
                      std::to_string(spec.cutoff.max_order()) + ", need " + std::to_string(n));
}

// int_0^t int_0^{s_k} ... int_0^{s_2} prod_l factors[l](s_l) ds_1 ... ds_k
ExpPoly nested_integral(const std::vector<ExpPoly>& factors) {
  ExpPoly inner = ep_integrate(factors.front());
  for (std::size_t l = 1; l < factors.size(); ++l) inner = ep_integrate(factors[l] * inner);
  return inner;
}

}  // namespace

GrowthSpec GrowthSpec::uniform(const Rational& lambda, int max_order) {
  GrowthSpec s{canonical(lambda), Polynomial::identity(), MomentSequence::uniform(max_order), max_order};
  s.validate();
  return s;
}

void GrowthSpec::validate() const {
  if (lambda <= 0) throw DomainError("lambda must be positive");
  if (cutoff[0] != 1) throw DomainError("cut-off moment sequence must have m_0 = 1");
}

ExpPoly moment_Y_general(const GrowthSpec& spec, int n) {
  check_order(spec, n);
  if (n == 0) return ExpPoly(1);
  const auto& m = spec.cutoff;

  ExpPoly sum;
  for (int k = 1; k <= n; ++k) {
    for (const auto& comp : compositions(n, k)) {
      Rational weight = power(spec.lambda, k);
      std::vector<ExpPoly> factors;
      factors.reserve(k);
      for (int l = 1; l <= k; ++l) {
        const int p = comp.part(l);
        const int q_prev = comp.cuts[l - 1];
        weight *= c_pq(m, p, q_prev);
        weight /= factorial(p);
        const Rational rate = spec.lambda * (m[q_prev] - m[comp.cuts[l]]);
        factors.push_back(ExpPoly::from_polynomial(pow(spec.growth, p), rate));
      }
      if (weight == 0) continue;
      sum += nested_integral(factors) * weight;
    }
  }
  const Rational prefactor(factorial(n));
  return ExpPoly::exp(spec.lambda * (m[n] - 1)) * sum * prefactor;
}

ExpPoly moment_Y_uniform(const GrowthSpec& spec, int n) {
  check_order(spec, n);
  if (!spec.cutoff.is_uniform()) throw DomainError("moment_Y_uniform requires uniform cut-offs");
  if (n == 0) return ExpPoly(1);

  auto inv_succ = [](int q) -> Rational { return Rational(1) / static_cast<unsigned long>(q + 1); };
  ExpPoly sum;
  for (int k = 1; k <= n; ++k) {
    for (const auto& comp : compositions(n, k)) {
      Rational weight = power(spec.lambda, k);
      std::vector<ExpPoly> factors;
      factors.reserve(k);
      for (int l = 1; l <= k; ++l) {
        weight *= inv_succ(comp.cuts[l]);
        const Rational rate = spec.lambda * (inv_succ(comp.cuts[l - 1]) - inv_succ(comp.cuts[l]));
        factors.push_back(ExpPoly::from_polynomial(pow(spec.growth, comp.part(l)), rate));
      }
      sum += nested_integral(factors) * weight;
    }
  }
  return ExpPoly::exp(-spec.lambda * n * inv_succ(n)) * sum;
}

ExpPoly moment_Y(const GrowthSpec& spec, int n) {
  return spec.cutoff.is_uniform() ? moment_Y_uniform(spec, n) : moment_Y_general(spec, n);
}

std::vector<ExpPoly> moments_X(const GrowthSpec& spec, int n) {
  check_order(spec, n);
  if (!spec.growth.is_identity()) throw DomainError("moments of X_t = t - Y_t require f(s) = s");

  std::vector<ExpPoly> x{ExpPoly(1)};
  for (int j = 1; j <= n; ++j) {
    ExpPoly acc = moment_Y(spec, j);
    for (int k = 0; k < j; ++k) {
      ExpPoly term = ExpPoly::term(Rational(binomial(j, k)), static_cast<unsigned>(j - k), 0) * x[k];
      if (k % 2) acc += term;
      else acc -= term;
    }
    x.push_back(j % 2 ? -acc : acc);
  }
  return x;
}

ExpPoly moment_X(const GrowthSpec& spec, int n) { return moments_X(spec, n).back(); }

ExpPoly moment_X_closed(const Rational& lambda, int n) {
  if (lambda <= 0) throw DomainError("lambda must be positive");
  if (n < 0) throw DomainError("moment order must be nonnegative");
  if (n == 0) return ExpPoly(1);
  ExpPoly sum;
  for (int k = 0; k <= n; ++k) {
    Rational c(binomial(n, k) * power(Rational(k + 1), n - 1));
    if (k % 2) c = -c;
    sum += ExpPoly::term(c, 0, Rational(-lambda * k / (k + 1)));
  }
  return sum * Rational(factorial(n + 1) / power(lambda, n));
}

std::vector<ExpPoly> cumulants_X(const GrowthSpec& spec, int n) {
  if (n < 1) throw DomainError("cumulant order must be >= 1");
  auto mu = moments_X(spec, n);
  return cumulants_from_moments<ExpPoly>(std::span<const ExpPoly>(mu).subspan(1));
}

ExpPoly ode_residual(const Rational& lambda, int n) {
  if (n < 1) throw DomainError("ode_residual: order must be >= 1");
  const ExpPoly current = moment_X_closed(lambda, n);
  const ExpPoly previous = moment_X_closed(lambda, n - 1);
  return ep_differentiate(current) - previous * Rational(n) + current * Rational(lambda * n / (n + 1));
}

std::vector<Rational> stationary_moments(const Rational& lambda, int n) {
  if (lambda <= 0) throw DomainError("lambda must be positive");
  if (n < 0) throw DomainError("moment order must be nonnegative");
  std::vector<Rational> out;
  for (int j = 0; j <= n; ++j) out.emplace_back(factorial(j + 1) / power(lambda, j));
  return out;
}

MomentReport moment_report(const GrowthSpec& spec, int n) {
  MomentReport r;
  r.order = n;
  r.moment_Y = moment_Y(spec, n);
  if (n >= 1) {
    auto mu = moments_X(spec, n);
    r.moment_X = mu.back();
    r.cumulants = cumulants_from_moments<ExpPoly>(std::span<const ExpPoly>(mu).subspan(1));
  } else {
    r.moment_X = ExpPoly(1);
  }
  r.stationary = stationary_moments(spec.lambda, n);
  return r;
}

std::vector<ExpPoly> exponential_kernel_integrals(const Rational& lambda, const Rational& beta, int n) {
  if (lambda <= 0 || beta <= 0) throw DomainError("lambda and beta must be positive");
  std::vector<ExpPoly> out;
  for (int j = 1; j <= n; ++j) {
    // int_0^t e^{-j beta (t-s)} ds = e^{-j beta t} int_0^t e^{j beta s} ds
    const Rational rate = beta * j;
    out.push_back(ExpPoly::exp(-rate) * ep_integrate(ExpPoly::exp(rate)) * lambda);
  }
  return out;
}

}  // namespace gcm
