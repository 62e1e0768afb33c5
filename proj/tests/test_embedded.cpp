#include "doctest.h"

#include <cmath>

#include "gcm/embedded.hpp"
#include "gcm/mc_sim.hpp"

using namespace gcm;

namespace {

Rational mean_Y(const Rational& l, int m) { return (power(Rational(1, 2), m) + m - 1) / l; }

Rational second_Y(const Rational& l, int m) {
  return (2 * power(Rational(1, 3), m) + Rational(m - 1) * power(Rational(1, 2), m - 1) - m + m * m) / (l * l);
}

Rational second_X(const Rational& l, int m) {
  return (2 - 4 * power(Rational(1, 2), m) + 2 * power(Rational(1, 3), m)) / (l * l);
}

}  // namespace

TEST_CASE("single-step chain") {
  // Y(1) = T_1 (1 - U_1): E[Y(1)^n] = n!/lambda^n / (n+1).
  const Rational l(3);
  for (int n = 1; n <= 4; ++n)
    CHECK(moment_Y_embedded(EmbeddedSpec::uniform(l, 1), n) == Rational(factorial(n)) / power(l, n) / (n + 1));
  CHECK(moment_Y_embedded(EmbeddedSpec::uniform(l, 1), 1) == 1 / (2 * l));
}

TEST_CASE("closed forms in m") {
  const Rational l(2);
  EmbeddedEngine engine(EmbeddedSpec::uniform(l, 1));
  for (int m = 1; m <= 15; ++m) CHECK(engine.moment_Y(m, 1) == mean_Y(l, m));
  for (int m = 1; m <= 12; ++m) {
    CHECK(engine.moment_Y(m, 2) == second_Y(l, m));
    CHECK(engine.moment_X(m, 2) == second_X(l, m));
    CHECK(engine.moment_Y(m, 1) + engine.moment_X(m, 1) == m / l);
  }
}

TEST_CASE("X(m) = T_m - Y(m) for higher orders at m = 1") {
  // X(1) = T_1 U_1: E[X(1)^n] = n!/lambda^n / (n+1).
  const Rational l(5, 2);
  EmbeddedEngine engine(EmbeddedSpec::uniform(l, 1));
  for (int n = 1; n <= 4; ++n) CHECK(engine.moment_X(1, n) == Rational(factorial(n)) / power(l, n) / (n + 1));
}

TEST_CASE("rate scaling") {
  for (int m : {1, 3, 6}) {
    for (int n = 1; n <= 4; ++n) {
      Rational y1 = moment_Y_embedded(EmbeddedSpec::uniform(1, m), n);
      Rational x1 = moment_X_embedded(EmbeddedSpec::uniform(1, m), n);
      for (const Rational& l : {Rational(2), Rational(5)}) {
        CHECK(power(l, n) * moment_Y_embedded(EmbeddedSpec::uniform(l, m), n) == y1);
        CHECK(power(l, n) * moment_X_embedded(EmbeddedSpec::uniform(l, m), n) == x1);
      }
    }
  }
}

TEST_CASE("long chains approach the post-collapse stationary law") {
  // Just before a jump X is Gamma(2, lambda); the collapse multiplies by an
  // independent uniform, which leaves Exp(lambda): moments n!/lambda^n,
  // skewness 2, excess kurtosis 6. The n = 2 closed form tends to 2/lambda^2.
  const Rational l(2);
  EmbeddedEngine engine(EmbeddedSpec::uniform(l, 30));
  for (int n = 1; n <= 3; ++n) {
    const double stationary = Rational(Rational(factorial(n)) / power(l, n)).get_d();
    CHECK(std::abs(engine.moment_X(30, n).get_d() - stationary) < 1e-6);
  }
  CHECK(std::abs(engine.moment_X(30, 2).get_d() - second_X(l, 30).get_d()) < 1e-15);
  auto c = cumulants_embedded(engine, Chain::X, 30, 4);
  REQUIRE(c.skewness.has_value());
  CHECK(std::abs(*c.skewness - 2.0) < 1e-3);
  REQUIRE(c.kurtosis.has_value());
  CHECK(std::abs(*c.kurtosis - 6.0) < 1e-2);
  CHECK(engine.peak_term_count() < 100000);
}

TEST_CASE("cumulants") {
  const Rational l(2);
  for (int m = 1; m <= 6; ++m) {
    auto spec = EmbeddedSpec::uniform(l, m);
    auto y = cumulants_embedded(spec, Chain::Y, 2);
    auto x = cumulants_embedded(spec, Chain::X, 2);
    CHECK(y.cumulants[0] == mean_Y(l, m));
    CHECK(x.cumulants[1] == second_X(l, m) - power((1 - power(Rational(1, 2), m)) / l, 2));
    CHECK_FALSE(y.skewness.has_value());
    CHECK_FALSE(y.kurtosis.has_value());
  }
}

TEST_CASE("moment table") {
  auto rows = moment_table(EmbeddedSpec::uniform(2, 1), 1, 3, 1);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(row.y.moments[0] == mean_Y(2, row.m));
  CHECK(moment_table(EmbeddedSpec::uniform(2, 1), 4, 3, 2).empty());
}

TEST_CASE("domain errors") {
  EmbeddedEngine engine(EmbeddedSpec::uniform(2, 1));
  CHECK_THROWS_AS(engine.moment_Y(0, 1), DomainError);
  CHECK_THROWS_AS(engine.moment_Y(31, 1), DomainError);
  CHECK_THROWS_AS(engine.moment_Y(3, 5), DomainError);
  CHECK_THROWS_AS(EmbeddedSpec::uniform(0, 1), DomainError);
}

TEST_CASE("non-uniform cut-offs against simulation") {
  // Z = U^2, checked against Monte Carlo at 4 standard errors.
  EmbeddedSpec spec = EmbeddedSpec::uniform(2, 1);
  spec.cutoff = MomentSequence::uniform_power(2, 4);
  EmbeddedEngine engine(spec);

  SimConfig sim;
  sim.lambda = 2.0;
  sim.grid = {1, 2, 4, 7};
  sim.samples = 200000;
  sim.seed = 99;
  sim.max_order = 2;
  sim.cutoff_exponent = 2.0;
  auto est = simulate_embedded(sim);
  for (std::size_t g = 0; g < sim.grid.size(); ++g) {
    const int m = static_cast<int>(sim.grid[g]);
    for (int n = 1; n <= 2; ++n) {
      const auto& ey = est.y.points[g].moments[n - 1];
      const auto& ex = est.x.points[g].moments[n - 1];
      CHECK(std::abs(ey.value - engine.moment_Y(m, n).get_d()) <= 4 * ey.std_error);
      CHECK(std::abs(ex.value - engine.moment_X(m, n).get_d()) <= 4 * ex.std_error);
    }
  }
}
