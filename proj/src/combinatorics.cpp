#include "gcm/combinatorics.hpp"

#include <string>

namespace gcm {

std::vector<int> Composition::parts() const {
  std::vector<int> out;
  out.reserve(cuts.size() - 1);
  for (std::size_t l = 1; l < cuts.size(); ++l) out.push_back(cuts[l] - cuts[l - 1]);
  return out;
}

std::vector<Composition> compositions(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw DomainError("compositions: need 1 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));

  // Interior cuts q_1 < ... < q_{k-1} range over (k-1)-subsets of {1..n-1};
  // step through them in lexicographic order.
  std::vector<int> inner(k - 1);
  for (int l = 0; l < k - 1; ++l) inner[l] = l + 1;

  std::vector<Composition> out;
  for (;;) {
    Composition c{n, {}};
    c.cuts.reserve(k + 1);
    c.cuts.push_back(0);
    c.cuts.insert(c.cuts.end(), inner.begin(), inner.end());
    c.cuts.push_back(n);
    out.push_back(std::move(c));

    int pos = k - 2;
    while (pos >= 0 && inner[pos] == n - 1 - (k - 2 - pos)) --pos;
    if (pos < 0) break;
    ++inner[pos];
    for (int l = pos + 1; l < k - 1; ++l) inner[l] = inner[l - 1] + 1;
  }
  return out;
}

Rational partition_weight(const Composition& c) {
  Integer den = factorial(static_cast<unsigned>(c.size()));
  for (int l = 1; l <= c.size(); ++l) den *= factorial(static_cast<unsigned>(c.part(l)));
  Rational w(factorial(static_cast<unsigned>(c.n)), den);
  w.canonicalize();
  return w;
}

Integer stirling2(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("stirling2: negative argument");
  if (k > n) return 0;
  // row-by-row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1)
  std::vector<Integer> row(k + 1);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

MomentSequence::MomentSequence(std::vector<Rational> values, bool unit_interval)
    : values_(std::move(values)), unit_interval_(unit_interval) {
  if (values_.empty()) throw DomainError("moment sequence is empty");
  for (auto& v : values_) v.canonicalize();
  if (values_[0] != 1) throw DomainError("moment sequence must start with m_0 = 1");
  if (unit_interval_) {
    for (std::size_t q = 0; q + 1 < values_.size(); ++q) {
      if (values_[q + 1] < 0 || values_[q + 1] > values_[q])
        throw DomainError("moment sequence of a [0,1] law must satisfy 0 <= m_{q+1} <= m_q; "
                          "violated at q=" + std::to_string(q));
    }
  }
}

MomentSequence MomentSequence::uniform(int max_order) {
  return uniform_power(1, max_order);
}

MomentSequence MomentSequence::uniform_power(const Rational& a, int max_order) {
  if (max_order < 0) throw DomainError("moment sequence order must be nonnegative");
  if (a <= 0) throw DomainError("uniform_power: exponent must be positive");
  std::vector<Rational> v;
  v.reserve(max_order + 1);
  for (int q = 0; q <= max_order; ++q) v.emplace_back(1 / (a * q + 1));
  return MomentSequence(std::move(v));
}

const Rational& MomentSequence::operator[](int q) const {
  if (q < 0 || q > max_order())
    throw DomainError("moment of order " + std::to_string(q) + " not available (have up to " +
                      std::to_string(max_order()) + ")");
  return values_[q];
}

bool MomentSequence::is_uniform() const {
  for (std::size_t q = 0; q < values_.size(); ++q)
    if (values_[q] * static_cast<unsigned long>(q + 1) != 1) return false;
  return true;
}

Rational c_pq(const MomentSequence& ms, int p, int q) {
  if (p < 0 || q < 0) throw DomainError("c_pq: negative index");
  if (p + q > ms.max_order())
    throw DomainError("c_pq: needs moments through order " + std::to_string(p + q));
  Rational total;
  for (int k = 0; k <= p; ++k) {
    Rational term(binomial(p, k) * ms[q + k]);
    if (k % 2) total -= term;
    else total += term;
  }
  return total;
}

}  // namespace gcm
