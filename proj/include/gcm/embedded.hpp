#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gcm/combinatorics.hpp"
#include "gcm/mvpoly.hpp"
#include "gcm/polynomial.hpp"
#include "gcm/rational.hpp"

namespace gcm {

/// Embedded chain Y(m) = sum_{k=1}^m f(T_k) (1 - Z_k) prod_{l=k+1}^m Z_l and its
/// compensated version X(m) = f(T_m) - Y(m) (= T_m - Y(m) for f(s) = s).
struct EmbeddedSpec {
  Rational lambda;
  int m = 1;
  MomentSequence cutoff = MomentSequence::uniform(4);
  Polynomial growth = Polynomial::identity();
  int max_order = 4;
  int max_index = 30;

  static EmbeddedSpec uniform(const Rational& lambda, int m, int max_order = 4);
  void validate() const;
};

enum class Chain { Y, X };

/// Evaluates embedded-chain moments for one (lambda, cut-off, f) and any m.
/// The simplex integrals
///   J(c, i) = int_0^inf e^{-lambda s_k} int_{0<s_1<..<s_k}
///             (s_1 + sum_l m_{q_l} (s_{l+1} - s_l))^i prod_l f(s_l)^{p_l} ds
/// do not depend on m and are cached per composition, so sweeping m reuses them.
class EmbeddedEngine {
 public:
  explicit EmbeddedEngine(EmbeddedSpec spec);

  const EmbeddedSpec& spec() const { return spec_; }

  Rational moment_Y(int m, int n);
  Rational moment_X(int m, int n);
  Rational moment(Chain chain, int m, int n) { return chain == Chain::Y ? moment_Y(m, n) : moment_X(m, n); }

  /// Largest MultiPoly term count seen so far (integrand before integration).
  std::size_t peak_term_count() const { return peak_terms_; }

 private:
  struct CompositionCache {
    MultiPoly linear_form;        // s_1 + sum_l m_{q_l} (s_{l+1} - s_l)
    MultiPoly growth_product;     // prod_l f(s_l)^{p_l}
    MultiPoly power;              // linear_form^{integrals.size()}
    std::vector<Rational> integrals;
  };

  void check(int m, int n) const;
  const Rational& simplex_integral(const Composition& comp, int i);
  Rational y_stratum_sum(const Composition& comp, int m, int n);

  EmbeddedSpec spec_;
  std::map<std::vector<int>, CompositionCache> cache_;
  std::size_t peak_terms_ = 0;
};

Rational moment_Y_embedded(const EmbeddedSpec& spec, int n);
Rational moment_X_embedded(const EmbeddedSpec& spec, int n);

struct EmbeddedCumulants {
  std::vector<Rational> moments;    // order 1..n
  std::vector<Rational> cumulants;  // order 1..n
  std::optional<double> skewness;   // kappa3 / kappa2^{3/2}; needs n >= 3 and kappa2 != 0
  std::optional<double> kurtosis;   // kappa4 / kappa2^2 (excess); needs n >= 4 and kappa2 != 0
};

EmbeddedCumulants cumulants_embedded(const EmbeddedSpec& spec, Chain chain, int n);
EmbeddedCumulants cumulants_embedded(EmbeddedEngine& engine, Chain chain, int m, int n);

struct EmbeddedRow {
  int m = 0;
  EmbeddedCumulants y;
  EmbeddedCumulants x;
};

/// One row per m in [m_first, m_last]; empty when m_first > m_last.
std::vector<EmbeddedRow> moment_table(const EmbeddedSpec& base, int m_first, int m_last, int n_max);

}  // namespace gcm
