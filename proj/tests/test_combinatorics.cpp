#include "doctest.h"

#include <numeric>
#include <vector>

#include "gcm/combinatorics.hpp"
#include "oracles.hpp"

using namespace gcm;

TEST_CASE("compositions enumerate cut sets in lexicographic order") {
  auto c = compositions(4, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0].cuts == std::vector<int>{0, 1, 4});
  CHECK(c[1].cuts == std::vector<int>{0, 2, 4});
  CHECK(c[2].cuts == std::vector<int>{0, 3, 4});
  CHECK(c[0].parts() == std::vector<int>{1, 3});

  for (int n = 1; n <= 10; ++n) {
    std::size_t total = 0;
    for (int k = 1; k <= n; ++k) {
      auto cs = compositions(n, k);
      CHECK(Integer(cs.size()) == binomial(n - 1, k - 1));
      for (const auto& comp : cs) {
        CHECK(comp.size() == k);
        CHECK(comp.cuts.front() == 0);
        CHECK(comp.cuts.back() == n);
        auto p = comp.parts();
        CHECK(std::accumulate(p.begin(), p.end(), 0) == n);
      }
      total += cs.size();
    }
    CHECK(total == (std::size_t{1} << (n - 1)));
  }
  CHECK_THROWS_AS(compositions(3, 0), DomainError);
  CHECK_THROWS_AS(compositions(3, 4), DomainError);
}

TEST_CASE("partition weights count set partitions") {
  // Summing n!/(k! prod p_l!) over compositions with k parts gives S(n,k).
  for (int n = 1; n <= 9; ++n)
    for (int k = 1; k <= n; ++k) {
      Rational sum = 0;
      for (const auto& comp : compositions(n, k)) sum += partition_weight(comp);
      CHECK(sum == Rational(stirling2(n, k)));
      CHECK(stirling2(n, k) == oracle::stirling2_recurrence(n, k));
    }
  for (int n = 0; n <= 10; ++n) CHECK(stirling2(n, n + 1) == 0);
}

TEST_CASE("Bell polynomial small values") {
  std::vector<Rational> ones(3, Rational(1));
  CHECK(bell_polynomial<Rational>(ones) == 5);

  // B_3(x1,x2,x3) = x1^3 + 3 x1 x2 + x3
  std::vector<Rational> x{Rational(2), Rational(3), Rational(5)};
  CHECK(bell_polynomial<Rational>(x) == 8 + 3 * 2 * 3 + 5);
  CHECK_THROWS_AS(bell_polynomial<Rational>(std::span<const Rational>{}), DomainError);
}

TEST_CASE("Bell numbers agree with the triangle recurrence") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<Rational> ones(n, Rational(1));
    CHECK(bell_polynomial<Rational>(ones) == Rational(oracle::bell_number(n)));
  }
}

TEST_CASE("Gaussian cumulants give the normal moments") {
  // kappa = (mu, s2, 0, 0, ...) -> E[X^4] = mu^4 + 6 mu^2 s2 + 3 s2^2
  const Rational mu(1, 2), s2(3);
  std::vector<Rational> kappa{mu, s2, 0, 0, 0, 0};
  auto m = moments_from_cumulants<Rational>(kappa);
  CHECK(m[1] == mu * mu + s2);
  CHECK(m[3] == mu * mu * mu * mu + 6 * mu * mu * s2 + 3 * s2 * s2);
  const Rational zero_mean_sixth = 15 * s2 * s2 * s2;
  std::vector<Rational> centred{0, s2, 0, 0, 0, 0};
  CHECK(moments_from_cumulants<Rational>(centred)[5] == zero_mean_sixth);
}

TEST_CASE("Poisson cumulants against direct moment sums") {
  // Poisson(a): every cumulant equals a.
  const Rational a(3, 2);
  for (int n = 1; n <= 6; ++n) {
    std::vector<Rational> kappa(n, a);
    auto m = moments_from_cumulants<Rational>(kappa);
    for (int j = 1; j <= n; ++j) CHECK(m[j - 1] == oracle::poisson_moment(a, j));
  }
}

TEST_CASE("moment-cumulant round trip") {
  oracle::Lcg gen(7);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Rational> kappa;
    for (int j = 0; j < n; ++j) kappa.push_back(gen.rational(-9, 9, 7));
    auto mu = moments_from_cumulants<Rational>(kappa);
    CHECK(cumulants_from_moments<Rational>(mu) == kappa);
    CHECK(moments_from_cumulants<Rational>(cumulants_from_moments<Rational>(mu)) == mu);
  }
}

TEST_CASE("double scalars follow the exact route") {
  std::vector<double> kappa{0.25, 1.5, -0.75, 2.0};
  auto mu = moments_from_cumulants<double>(kappa);
  auto back = cumulants_from_moments<double>(mu);
  for (std::size_t j = 0; j < kappa.size(); ++j) CHECK(back[j] == doctest::Approx(kappa[j]).epsilon(1e-13));
}

TEST_CASE("moment sequences") {
  auto u = MomentSequence::uniform(5);
  CHECK(u.is_uniform());
  CHECK(u.max_order() == 5);
  CHECK(u[3] == Rational(1, 4));
  CHECK_THROWS_AS(u[6], DomainError);
  CHECK_FALSE(MomentSequence::uniform_power(2, 4).is_uniform());
  CHECK(MomentSequence::uniform_power(2, 4)[2] == Rational(1, 5));
  CHECK_THROWS_AS(MomentSequence({Rational(2)}), DomainError);
  CHECK_THROWS_AS(MomentSequence({}), DomainError);
  CHECK_THROWS_AS(MomentSequence({Rational(1), Rational(1, 3), Rational(1, 2)}), DomainError);
  CHECK_NOTHROW(MomentSequence({Rational(1), Rational(2)}, false));
}

TEST_CASE("uniform beta moments") {
  auto u = MomentSequence::uniform(10);
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q)
      CHECK(c_pq(u, p, q) * Rational(factorial(p + q + 1)) == Rational(factorial(p) * factorial(q)));
  CHECK_THROWS_AS(c_pq(u, 6, 5), DomainError);

  // Point mass at z: C_{p,q} = (1-z)^p z^q
  const Rational z(1, 3);
  std::vector<Rational> m;
  for (int q = 0; q <= 6; ++q) m.push_back(power(z, q));
  MomentSequence point(m);
  CHECK(c_pq(point, 2, 3) == power(1 - z, 2) * power(z, 3));
}
