// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gcm/combinatorics.hpp"
#include "gcm/embedded.hpp"
#include "gcm/gc_moments.hpp"
#include "gcm/mc_sim.hpp"
#include "oracles.hpp"
#include "worked_examples.hpp"

using namespace gcm;

namespace {

const Rational kLambdas[] = {Rational(1), Rational(2), Rational(7, 3)};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Outcome closed_form_equivalence() {
  Outcome o;
  for (const auto& l : kLambdas) {
    auto x = moments_X(GrowthSpec::uniform(l), 6);
    for (int n = 1; n <= 6; ++n)
      if (x[n] != moment_X_closed(l, n)) o.fail("lambda=" + to_string(l) + " n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "lambda in {1,2,7/3}, n=1..6 structurally equal";
  return o;
}

Outcome worked_examples() {
  Outcome o;
  for (const auto& l : kLambdas) {
    auto spec = GrowthSpec::uniform(l);
    const ExpPoly y[] = {worked::mean_Y(l), worked::second_Y(l), worked::third_Y(l), worked::fourth_Y(l)};
    for (int n = 1; n <= 4; ++n) {
      if (moment_Y_uniform(spec, n) != y[n - 1]) o.fail("uniform route E[Y^" + std::to_string(n) + "]");
      if (moment_Y_general(spec, n) != y[n - 1]) o.fail("general route E[Y^" + std::to_string(n) + "]");
    }
    auto kappa = cumulants_X(spec, 4);
    if (kappa[1] != worked::kappa2(l)) o.fail("kappa_2 at lambda=" + to_string(l));
    // The printed third cumulant carries a reversed overall sign; the hand
    // inversion of the printed moments settles which sign is right.
    const ExpPoly k3 = worked::kappa3_by_hand(l);
    if (k3 != -worked::kappa3_as_printed(l)) o.fail("printed kappa_3 differs from the hand inversion beyond sign");
    if (kappa[2] != k3) o.fail("kappa_3 at lambda=" + to_string(l));
    if (kappa[3] != worked::kappa4(l)) o.fail("kappa_4 at lambda=" + to_string(l));
  }
  if (o.pass)
    o.detail = "E[Y^1..4], kappa_2..4 exact at lambda in {1,2,7/3}; printed kappa_3 matched up to its reversed overall sign";
  return o;
}

Outcome ode_identity() {
  Outcome o;
  for (const auto& l : kLambdas)
    for (int n = 1; n <= 6; ++n)
      if (!ode_residual(l, n).is_zero()) o.fail("nonzero residual lambda=" + to_string(l) + " n=" + std::to_string(n));
  if (o.pass) o.detail = "residual is the zero exp-polynomial for n=1..6";
  return o;
}

Outcome stationary_limits() {
  Outcome o;
  for (const auto& l : kLambdas) {
    auto st = stationary_moments(l, 6);
    for (int n = 1; n <= 6; ++n) {
      const Rational expect = Rational(factorial(n + 1)) / power(l, n);
      auto lim = ep_limit_at_infinity(moment_X_closed(l, n));
      if (!lim || *lim != expect || st[n] != expect) o.fail("moment limit n=" + std::to_string(n));
      const double gamma = oracle::gamma2_moment(l.get_d(), n);
      if (std::abs(expect.get_d() - gamma) > 1e-12 * gamma) o.fail("Gamma(2) moment n=" + std::to_string(n));
    }
    auto kappa = cumulants_X(GrowthSpec::uniform(l), 4);
    for (int n = 1; n <= 4; ++n) {
      auto lim = ep_limit_at_infinity(kappa[n - 1]);
      if (!lim || *lim != Rational(2 * factorial(n - 1)) / power(l, n)) o.fail("cumulant limit n=" + std::to_string(n));
    }
  }
  if (o.pass) o.detail = "(n+1)!/lambda^n for n<=6, 2(n-1)!/lambda^n for n<=4";
  return o;
}

Outcome embedded_closed_forms() {
  Outcome o;
  for (const auto& l : kLambdas) {
    EmbeddedEngine engine(EmbeddedSpec::uniform(l, 1));
    for (int m = 1; m <= 12; ++m) {
      const Rational h = power(Rational(1, 2), m), th = power(Rational(1, 3), m);
      if (engine.moment_Y(m, 1) != (h + m - 1) / l) o.fail("E[Y(m)] m=" + std::to_string(m));
      if (engine.moment_Y(m, 2) != (2 * th + Rational(m - 1) * 2 * h - m + m * m) / (l * l))
        o.fail("E[Y(m)^2] m=" + std::to_string(m));
      if (engine.moment_X(m, 2) != (2 - 4 * h + 2 * th) / (l * l)) o.fail("E[X(m)^2] m=" + std::to_string(m));
      if (engine.moment_Y(m, 1) + engine.moment_X(m, 1) != m / l) o.fail("E[Y(m)]+E[X(m)] m=" + std::to_string(m));
    }
  }
  if (o.pass) o.detail = "m=1..12, lambda in {1,2,7/3}";
  return o;
}

Outcome monte_carlo_gate() {
  Outcome o;
  const Rational lambda(2);
  const double sigma = 4.0;
  double worst = 0.0;
  int checked = 0;
  auto tally = [&](const CompareReport& r, const std::string& what) {
    for (const auto& row : r.rows) {
      worst = std::max(worst, std::abs(row.z));
      ++checked;
    }
    if (!r.pass) o.fail(what);
  };

  SimConfig cfg;
  cfg.lambda = 2.0;
  cfg.samples = 1000000;
  cfg.seed = 20240101;
  cfg.max_order = 4;
  for (int i = 1; i <= 10; ++i) cfg.grid.push_back(0.5 * i);
  auto est = simulate_gc(cfg);
  auto kappa = cumulants_X(GrowthSpec::uniform(lambda), 4);
  for (int j = 1; j <= 4; ++j)
    tally(compare(kappa[j - 1], est, Quantity::Cumulant, j, sigma), "X_t kappa_" + std::to_string(j));

  SimConfig chain = cfg;
  chain.grid.clear();
  for (int m = 1; m <= 10; ++m) chain.grid.push_back(m);
  auto emb = simulate_embedded(chain);
  EmbeddedEngine engine(EmbeddedSpec::uniform(lambda, 1));
  for (Chain which : {Chain::Y, Chain::X}) {
    const auto& e = which == Chain::Y ? emb.y : emb.x;
    std::vector<std::vector<double>> analytic(4);
    for (int m = 1; m <= 10; ++m) {
      auto c = cumulants_embedded(engine, which, m, 4);
      for (int j = 0; j < 4; ++j) analytic[j].push_back(c.cumulants[j].get_d());
    }
    for (int j = 1; j <= 4; ++j)
      tally(compare(chain.grid, analytic[j - 1], e, Quantity::Cumulant, j, sigma),
            std::string(which == Chain::Y ? "Y(m)" : "X(m)") + " kappa_" + std::to_string(j));
  }
  std::ostringstream d;
  d << checked << " comparisons, max |z| = " << worst;
  if (o.pass) o.detail = d.str();
  else o.detail += "; " + d.str();
  return o;
}

Outcome pathwise_identity() {
  Outcome o;
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.5 * i);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    StreamRng rng(20240101, s);
    GcPath path = sample_gc_path(rng, 2.0, grid.back());
    auto a = gc_values_sum(path, grid);
    auto b = gc_values_recursion(path, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      worst = std::max(worst, std::abs(a[g] - b[g]));
      if (a[g] < 0.0 || a[g] > grid[g] || b[g] < 0.0 || b[g] > grid[g]) o.fail("envelope violated");
    }
  }
  if (worst > 1e-12) o.fail("max pathwise difference " + std::to_string(worst));
  std::ostringstream d;
  d << "10000 paths, max |sum - recursion| = " << worst;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome combinatorics_suite() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    std::vector<Rational> ones(n, Rational(1));
    if (bell_polynomial<Rational>(ones) != Rational(oracle::bell_number(n))) o.fail("Bell number " + std::to_string(n));
  }
  oracle::Lcg gen(1);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Rational> kappa;
    for (int j = 0; j < n; ++j) kappa.push_back(gen.rational(-9, 9, 7));
    if (cumulants_from_moments<Rational>(moments_from_cumulants<Rational>(kappa)) != kappa)
      o.fail("round trip n=" + std::to_string(n));
  }
  for (int n = 0; n <= 10; ++n)
    if (stirling2(n, n + 1) != 0) o.fail("S(n,n+1) n=" + std::to_string(n));
  auto u = MomentSequence::uniform(10);
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q)
      if (c_pq(u, p, q) * Rational(factorial(p + q + 1)) != Rational(factorial(p) * factorial(q))) o.fail("C_{p,q}");
  if (o.pass) o.detail = "Bell n<=10, round trip n<=8, S(n,n+1)=0 n<=10, C_{p,q} p,q<=5";
  return o;
}

Outcome shot_noise_check() {
  Outcome o;
  for (const Rational& lt : {Rational(1, 3), Rational(5, 2), Rational(7)}) {
    std::vector<Rational> jumps(5, Rational(1)), g(5, lt);
    auto sn = shot_noise_moments<Rational>(jumps, g, 5);
    for (int n = 1; n <= 5; ++n) {
      if (sn.moments[n - 1] != oracle::poisson_moment(lt, n)) o.fail("Poisson moment n=" + std::to_string(n));
      if (sn.cumulants[n - 1] != lt) o.fail("cumulant list n=" + std::to_string(n));
    }
    if (cumulants_from_moments<Rational>(sn.moments) != sn.cumulants) o.fail("cumulant round trip");
  }
  if (o.pass) o.detail = "Poisson(lambda t) moments n<=5 at lambda t in {1/3, 5/2, 7}";
  return o;
}

std::string compare_csv(const char* threads) {
  setenv("GC_MOMENTS_THREADS", threads, 1);
  std::ostringstream out, err;
  const int code = cli::run({"compare", "--lambda", "2", "--n", "4", "--t-start", "0.5", "--t-stop", "5",
                             "--t-step", "0.5", "--samples", "1000000", "--seed", "20240101"},
                            out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  Outcome o;
  const std::string one = compare_csv("1");
  if (compare_csv("1") != one) o.fail("repeated run differs");
  if (compare_csv("3") != one) o.fail("3 threads differ from 1");
  if (compare_csv("8") != one) o.fail("8 threads differ from 1");
  unsetenv("GC_MOMENTS_THREADS");
  if (o.pass) o.detail = "identical bytes for 1, 1, 3 and 8 threads (" + std::to_string(one.size()) + " bytes)";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form equivalence", 10.0, closed_form_equivalence},
      {2, "worked-example fidelity", 0.0, worked_examples},
      {3, "ODE identity", 0.0, ode_identity},
      {4, "stationary limits", 0.0, stationary_limits},
      {5, "embedded closed forms", 60.0, embedded_closed_forms},
      {6, "Monte Carlo gate", 300.0, monte_carlo_gate},
      {7, "pathwise identity", 0.0, pathwise_identity},
      {8, "combinatorics suite", 0.0, combinatorics_suite},
      {9, "shot-noise check", 0.0, shot_noise_check},
      {10, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.fail("runtime over budget");
      o.detail += " (" + std::to_string(secs) + " s > " + std::to_string(c.budget_seconds) + " s)";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %-26s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
