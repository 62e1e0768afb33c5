#include "gcm/embedded.hpp"

#include <cmath>
#include <string>

namespace gcm {

EmbeddedSpec EmbeddedSpec::uniform(const Rational& lambda, int m, int max_order) {
  EmbeddedSpec s;
  s.lambda = canonical(lambda);
  s.m = m;
  s.cutoff = MomentSequence::uniform(max_order);
  s.max_order = max_order;
  s.validate();
  return s;
}

void EmbeddedSpec::validate() const {
  if (lambda <= 0) throw DomainError("lambda must be positive");
  if (m < 1) throw DomainError("chain index m must be >= 1");
}

EmbeddedEngine::EmbeddedEngine(EmbeddedSpec spec) : spec_(std::move(spec)) {
  spec_.lambda.canonicalize();
  if (spec_.lambda <= 0) throw DomainError("lambda must be positive");
}

void EmbeddedEngine::check(int m, int n) const {
  if (m < 1) throw DomainError("chain index m must be >= 1");
  if (n < 1) throw DomainError("moment order must be >= 1");
  if (n > spec_.max_order)
    throw DomainError("order " + std::to_string(n) + " exceeds the configured cap " +
                      std::to_string(spec_.max_order));
  if (m > spec_.max_index)
    throw DomainError("chain index " + std::to_string(m) + " exceeds the configured cap " +
                      std::to_string(spec_.max_index));
  if (n > spec_.cutoff.max_order())
    throw DomainError("cut-off moment sequence only reaches order " +
                      std::to_string(spec_.cutoff.max_order()));
}

const Rational& EmbeddedEngine::simplex_integral(const Composition& comp, int i) {
  const int k = comp.size();
  auto it = cache_.find(comp.cuts);
  if (it == cache_.end()) {
    MultiPoly linear = MultiPoly::variable(k, 0);
    for (int l = 1; l < k; ++l) {
      const Rational& w = spec_.cutoff[comp.cuts[l]];
      linear += MultiPoly::variable(k, l, w);
      linear += MultiPoly::variable(k, l - 1, Rational(-w));
    }
    MultiPoly growth = MultiPoly::constant(k, 1);
    for (int l = 1; l <= k; ++l)
      growth = growth * MultiPoly::univariate(k, l - 1, pow(spec_.growth, comp.part(l)));
    it = cache_.emplace(comp.cuts, CompositionCache{linear, growth, MultiPoly::constant(k, 1), {}}).first;
  }

  auto& entry = it->second;
  while (static_cast<int>(entry.integrals.size()) <= i) {
    MultiPoly integrand = entry.power * entry.growth_product;
    peak_terms_ = std::max(peak_terms_, integrand.term_count());
    for (int var = 0; var + 1 < k; ++var) integrand = mp_integrate_step(integrand, var);
    entry.integrals.push_back(mp_laplace_terminal(integrand, spec_.lambda));
    entry.power = entry.power * entry.linear_form;
  }
  return entry.integrals[i];
}

// sum_{i=0}^{m-k-1} lambda^{k+i} m_n^{m-k-i} / i! J(c, i): the strata where the
// last distinct index stays strictly below m.
Rational EmbeddedEngine::y_stratum_sum(const Composition& comp, int m, int n) {
  const int k = comp.size();
  const Rational& mn = spec_.cutoff[n];
  Rational total;
  for (int i = 0; i <= m - k - 1; ++i) {
    total += power(spec_.lambda, k + i) * power(mn, m - k - i) / factorial(i) * simplex_integral(comp, i);
  }
  return total;
}

Rational EmbeddedEngine::moment_Y(int m, int n) {
  check(m, n);
  const auto& ms = spec_.cutoff;
  Rational total;
  for (int k = 1; k <= std::min(n, m); ++k) {
    for (const auto& comp : compositions(n, k)) {
      Rational weight = 1;
      for (int l = 1; l <= k; ++l) weight *= c_pq(ms, comp.part(l), comp.cuts[l - 1]) / factorial(comp.part(l));
      if (weight == 0) continue;
      // boundary stratum i = m - k has m_n^0 = 1
      Rational strata = y_stratum_sum(comp, m, n) +
                        power(spec_.lambda, m) / factorial(m - k) * simplex_integral(comp, m - k);
      total += weight * strata;
    }
  }
  return total * factorial(n);
}

Rational EmbeddedEngine::moment_X(int m, int n) {
  check(m, n);
  const auto& ms = spec_.cutoff;
  Rational total;
  for (int k = 1; k <= std::min(n, m); ++k) {
    for (const auto& comp : compositions(n, k)) {
      Rational head = 1;  // factors l < k
      for (int l = 1; l < k; ++l) head *= c_pq(ms, comp.part(l), comp.cuts[l - 1]) / factorial(comp.part(l));
      if (head == 0) continue;
      const int last = comp.part(k);
      const Rational tail = c_pq(ms, last, comp.cuts[k - 1]) / factorial(last);
      // at index m the collapse factor (1 - Z_m) becomes -Z_m
      Rational boundary_tail = ms[n] / factorial(last);
      if (last % 2) boundary_tail = -boundary_tail;

      total += head * tail * y_stratum_sum(comp, m, n);
      total += head * boundary_tail * power(spec_.lambda, m) / factorial(m - k) * simplex_integral(comp, m - k);
    }
  }
  total *= factorial(n);
  return n % 2 ? Rational(-total) : total;
}

Rational moment_Y_embedded(const EmbeddedSpec& spec, int n) {
  spec.validate();
  EmbeddedEngine engine(spec);
  return engine.moment_Y(spec.m, n);
}

Rational moment_X_embedded(const EmbeddedSpec& spec, int n) {
  spec.validate();
  EmbeddedEngine engine(spec);
  return engine.moment_X(spec.m, n);
}

EmbeddedCumulants cumulants_embedded(EmbeddedEngine& engine, Chain chain, int m, int n) {
  if (n < 1) throw DomainError("cumulant order must be >= 1");
  EmbeddedCumulants out;
  for (int j = 1; j <= n; ++j) out.moments.push_back(engine.moment(chain, m, j));
  out.cumulants = cumulants_from_moments<Rational>(out.moments);
  if (n >= 2 && out.cumulants[1] != 0) {
    const double k2 = out.cumulants[1].get_d();
    if (n >= 3) out.skewness = out.cumulants[2].get_d() / std::pow(k2, 1.5);
    if (n >= 4) out.kurtosis = out.cumulants[3].get_d() / (k2 * k2);
  }
  return out;
}

EmbeddedCumulants cumulants_embedded(const EmbeddedSpec& spec, Chain chain, int n) {
  spec.validate();
  EmbeddedEngine engine(spec);
  return cumulants_embedded(engine, chain, spec.m, n);
}

std::vector<EmbeddedRow> moment_table(const EmbeddedSpec& base, int m_first, int m_last, int n_max) {
  std::vector<EmbeddedRow> rows;
  if (m_first > m_last) return rows;
  if (m_first < 1) throw DomainError("chain index m must be >= 1");
  EmbeddedEngine engine(base);
  for (int m = m_first; m <= m_last; ++m)
    rows.push_back({m, cumulants_embedded(engine, Chain::Y, m, n_max), cumulants_embedded(engine, Chain::X, m, n_max)});
  return rows;
}

}  // namespace gcm
