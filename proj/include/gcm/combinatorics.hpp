#pragma once

#include <span>
#include <type_traits>
#include <vector>

#include "gcm/rational.hpp"

namespace gcm {

/// Ordered cut points 0 = q_0 < q_1 < ... < q_k = n of a composition of n
/// into k positive parts p_l = q_l - q_{l-1}.
struct Composition {
  int n = 0;
  std::vector<int> cuts;

  int size() const { return static_cast<int>(cuts.size()) - 1; }
  int part(int l) const { return cuts[l] - cuts[l - 1]; }  // 1-based, l in [1, k]
  std::vector<int> parts() const;

  friend bool operator==(const Composition&, const Composition&) = default;
};

/// All compositions of n into k parts, in lexicographic order of the cut sets.
/// There are C(n-1, k-1) of them. Throws DomainError unless 1 <= k <= n.
std::vector<Composition> compositions(int n, int k);

/// Multinomial partition weight n! / (k! p_1! ... p_k!): the number of set
/// partitions of {1..n} that produce the composition's block sizes, counted
/// once per ordering of the blocks.
Rational partition_weight(const Composition& c);

/// Stirling number of the second kind S(n, k); zero when k > n.
Integer stirling2(int n, int k);

namespace detail {

template <class Scalar>
Scalar scaled(const Scalar& x, const Rational& w) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return x * w.get_d();
  else
    return Scalar(x * w);
}

// Sum over set partitions of {1..n} of coeff(k) * x_{|pi_1|} ... x_{|pi_k|},
// evaluated in composition form.
template <class Scalar, class BlockCoefficient>
Scalar partition_sum(std::span<const Scalar> x, BlockCoefficient&& coeff) {
  const int n = static_cast<int>(x.size());
  Scalar total = scaled(x[n - 1], Rational(0));
  for (int k = 1; k <= n; ++k) {
    const Rational ck = coeff(k);
    if (ck == 0) continue;
    for (const auto& comp : compositions(n, k)) {
      Scalar term = x[comp.part(1) - 1];
      for (int l = 2; l <= k; ++l) term = term * x[comp.part(l) - 1];
      const Rational w = ck * partition_weight(comp);
      total = total + scaled(term, w);
    }
  }
  return total;
}

}  // namespace detail

/// B_n(x_1, ..., x_n): sum over all set partitions of {1..n} of the product
/// of x_{block size}. Works for Rational, double and ExpPoly scalars.
template <class Scalar>
Scalar bell_polynomial(std::span<const Scalar> x) {
  if (x.empty()) throw DomainError("bell_polynomial: empty input");
  return detail::partition_sum(x, [](int) { return Rational(1); });
}

/// Raw moments mu_j = B_j(kappa_1, ..., kappa_j), j = 1..n.
template <class Scalar>
std::vector<Scalar> moments_from_cumulants(std::span<const Scalar> kappa) {
  if (kappa.empty()) throw DomainError("moments_from_cumulants: empty input");
  std::vector<Scalar> out;
  out.reserve(kappa.size());
  for (std::size_t j = 1; j <= kappa.size(); ++j) out.push_back(bell_polynomial(kappa.first(j)));
  return out;
}

/// Inverse of moments_from_cumulants:
///   kappa_n = sum_k (k-1)! (-1)^{k-1} sum_{partitions into k blocks} prod mu_{|block|}.
template <class Scalar>
std::vector<Scalar> cumulants_from_moments(std::span<const Scalar> mu) {
  if (mu.empty()) throw DomainError("cumulants_from_moments: empty input");
  std::vector<Scalar> out;
  out.reserve(mu.size());
  for (std::size_t j = 1; j <= mu.size(); ++j) {
    out.push_back(detail::partition_sum(mu.first(j), [](int k) {
      Rational c(factorial(k - 1));
      return (k % 2 == 0) ? Rational(-c) : c;
    }));
  }
  return out;
}

/// Moment sequence m_q = E[Z^q], q = 0..N, of a cut-off law.
class MomentSequence {
 public:
  /// Throws DomainError if values is empty, m_0 != 1, or (when the law is
  /// declared to live on [0,1]) the sequence is not nonincreasing in [0,1].
  explicit MomentSequence(std::vector<Rational> values, bool unit_interval = true);

  /// Uniform[0,1] cut-offs: m_q = 1/(q+1), q = 0..max_order.
  static MomentSequence uniform(int max_order);
  /// Z = U^a with U uniform: m_q = 1/(a q + 1).
  static MomentSequence uniform_power(const Rational& a, int max_order);

  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator[](int q) const;
  const std::vector<Rational>& values() const { return values_; }
  bool unit_interval() const { return unit_interval_; }
  /// True when every stored value equals 1/(q+1).
  bool is_uniform() const;

 private:
  std::vector<Rational> values_;
  bool unit_interval_;
};

/// C_{p,q} = E[(1 - Z)^p Z^q] = sum_{k=0}^p C(p,k) (-1)^k m_{q+k}.
Rational c_pq(const MomentSequence& ms, int p, int q);

}  // namespace gcm
