#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "gcm/embedded.hpp"
#include "gcm/gc_moments.hpp"
#include "gcm/mc_sim.hpp"

namespace gcm::cli {

namespace {

using nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string lambda = "2";
  int n = 2;
  std::string t_start = "0";
  std::string t_stop = "5";
  std::string t_step = "1/2";
  int m_start = 1;
  int m_stop = 10;
  std::string cutoff = "uniform";
  std::string samples = "1000000";
  std::uint64_t seed = 20240101;
  double sigma = 4.0;
  std::string format = "csv";
  std::string out_path;
  std::string target = "x";
  std::string quantity = "cumulant";
  std::string method = "recursion";
};

Rational positive_lambda(const RunConfig& cfg) {
  Rational lambda;
  try {
    lambda = parse_rational(cfg.lambda);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--lambda: ") + e.what());
  }
  if (lambda <= 0) throw ConfigError("--lambda must be positive");
  return lambda;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  Rational start, stop, step;
  try {
    start = parse_rational(cfg.t_start);
    stop = parse_rational(cfg.t_stop);
    step = parse_rational(cfg.t_step);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("time grid: ") + e.what());
  }
  if (start < 0) throw ConfigError("--t-start must be nonnegative");
  if (step <= 0) throw ConfigError("--t-step must be positive");
  if (stop < start) throw ConfigError("--t-stop must not precede --t-start");
  std::vector<double> grid;
  for (Rational t = start; t <= stop; t += step) grid.push_back(t.get_d());
  return grid;
}

MomentSequence cutoff_moments(const RunConfig& cfg, int order) {
  if (cfg.cutoff == "uniform") return MomentSequence::uniform(order);
  std::vector<Rational> values{1};
  std::stringstream list(cfg.cutoff);
  std::string item;
  try {
    while (std::getline(list, item, ',')) values.push_back(parse_rational(item));
    return MomentSequence(std::move(values));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--cutoff: ") + e.what());
  }
}

long sample_count(const RunConfig& cfg) {
  Rational s;
  try {
    s = parse_rational(cfg.samples);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--samples: ") + e.what());
  }
  if (s.get_den() != 1 || s < 1 || s > Rational(1L << 40)) throw ConfigError("--samples must be a positive integer");
  return s.get_num().get_si();
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw ConfigError("unsupported --format '" + cfg.format + "' for this subcommand");
}

ordered_json json_number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double opt_or_nan(const std::optional<double>& v) { return v ? *v : std::nan(""); }

// skewness / excess kurtosis from numeric cumulants, NaN when unavailable
std::pair<double, double> shape_stats(const std::vector<double>& kappa) {
  double skew = std::nan(""), kurt = std::nan("");
  if (kappa.size() >= 3 && kappa[1] > 0) skew = kappa[2] / std::pow(kappa[1], 1.5);
  if (kappa.size() >= 4 && kappa[1] > 0) kurt = kappa[3] / (kappa[1] * kappa[1]);
  return {skew, kurt};
}

std::string cmd_moments(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json", "symbolic"});
  const Rational lambda = positive_lambda(cfg);
  if (cfg.n < 0) throw ConfigError("--n must be nonnegative");
  if (cfg.n > 8) throw ConfigError("--n is capped at 8");
  GrowthSpec spec{lambda, Polynomial::identity(), cutoff_moments(cfg, std::max(cfg.n, 1)), 8};
  const MomentReport report = moment_report(spec, cfg.n);

  std::ostringstream out;
  if (cfg.format == "symbolic") {
    out << "moment_Y_" << cfg.n << " = " << render(report.moment_Y) << '\n';
    out << "moment_X_" << cfg.n << " = " << render(report.moment_X) << '\n';
    for (std::size_t j = 0; j < report.cumulants.size(); ++j)
      out << "kappa_" << j + 1 << " = " << render(report.cumulants[j]) << '\n';
    if (spec.cutoff.is_uniform())
      out << "stationary_moment_" << cfg.n << " = " << to_string(report.stationary.back()) << '\n';
    return out.str();
  }

  const auto grid = time_grid(cfg);
  struct Row {
    double t, y, x;
    std::vector<double> kappa;
    double skew, kurt;
  };
  std::vector<Row> rows;
  for (double t : grid) {
    Row r{t, ep_eval(report.moment_Y, t), ep_eval(report.moment_X, t), {}, 0, 0};
    for (const auto& k : report.cumulants) r.kappa.push_back(ep_eval(k, t));
    std::tie(r.skew, r.kurt) = shape_stats(r.kappa);
    rows.push_back(std::move(r));
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "moments";
    j["lambda"] = to_string(lambda);
    j["n"] = cfg.n;
    j["symbolic"] = {{"moment_Y", render(report.moment_Y)}, {"moment_X", render(report.moment_X)}};
    ordered_json kj = ordered_json::array();
    for (const auto& k : report.cumulants) kj.push_back(render(k));
    j["symbolic"]["cumulants"] = kj;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["t"] = r.t;
      row["moment_Y"] = json_number(r.y);
      row["moment_X"] = json_number(r.x);
      ordered_json ks = ordered_json::array();
      for (double k : r.kappa) ks.push_back(json_number(k));
      row["kappa"] = ks;
      row["skewness"] = json_number(r.skew);
      row["kurtosis"] = json_number(r.kurt);
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }

  out << "t,moment_Y_" << cfg.n << ",moment_X_" << cfg.n;
  for (int j = 1; j <= cfg.n; ++j) out << ",kappa_" << j;
  out << ",skewness,kurtosis\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.y) << ',' << format_double(r.x);
    for (double k : r.kappa) out << ',' << format_double(k);
    out << ',' << format_double(r.skew) << ',' << format_double(r.kurt) << '\n';
  }
  return out.str();
}

std::string cmd_embedded(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json", "symbolic"});
  const Rational lambda = positive_lambda(cfg);
  if (cfg.n < 1) throw ConfigError("--n-max must be >= 1");
  if (cfg.n > 4) throw ConfigError("--n-max is capped at 4");
  if (cfg.m_start < 1) throw ConfigError("--m-start must be >= 1");
  if (cfg.m_stop > 30) throw ConfigError("--m-stop is capped at 30");
  if (cfg.m_stop < cfg.m_start) throw ConfigError("empty m-range");
  EmbeddedSpec spec = EmbeddedSpec::uniform(lambda, cfg.m_start, cfg.n);
  spec.cutoff = cutoff_moments(cfg, cfg.n);
  const auto rows = moment_table(spec, cfg.m_start, cfg.m_stop, cfg.n);
  const bool exact = cfg.format == "symbolic";
  auto cell = [&](const Rational& q) { return exact ? to_string(q) : format_double(q.get_d()); };

  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "embedded";
    j["lambda"] = to_string(lambda);
    j["n_max"] = cfg.n;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["m"] = r.m;
      for (auto [name, c] : {std::pair{"Y", &r.y}, std::pair{"X", &r.x}}) {
        ordered_json mj = ordered_json::array(), kj = ordered_json::array();
        for (const auto& q : c->moments) mj.push_back(q.get_d());
        for (const auto& q : c->cumulants) kj.push_back(q.get_d());
        row[std::string("moment_") + name] = mj;
        row[std::string("kappa_") + name] = kj;
        row[std::string("skewness_") + name] = json_number(opt_or_nan(c->skewness));
        row[std::string("kurtosis_") + name] = json_number(opt_or_nan(c->kurtosis));
      }
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << 'm';
  for (const char* block : {"moment_Y_", "moment_X_", "kappa_Y_", "kappa_X_"})
    for (int j = 1; j <= cfg.n; ++j) out << ',' << block << j;
  out << ",skewness_Y,kurtosis_Y,skewness_X,kurtosis_X\n";
  for (const auto& r : rows) {
    out << r.m;
    for (const auto* list : {&r.y.moments, &r.x.moments, &r.y.cumulants, &r.x.cumulants})
      for (const auto& q : *list) out << ',' << cell(q);
    for (const auto* c : {&r.y, &r.x})
      out << ',' << format_double(opt_or_nan(c->skewness)) << ',' << format_double(opt_or_nan(c->kurtosis));
    out << '\n';
  }
  return out.str();
}

struct CompareOutput {
  std::string text;
  bool pass;
};

CompareOutput cmd_compare(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const Rational lambda = positive_lambda(cfg);
  if (cfg.n < 1 || cfg.n > 4) throw ConfigError("--n must be between 1 and 4 for compare");
  if (cfg.cutoff != "uniform") throw ConfigError("compare simulates uniform cut-offs only");
  if (!(cfg.sigma > 0)) throw ConfigError("--sigma must be positive");
  const Quantity quantity = cfg.quantity == "moment"     ? Quantity::Moment
                            : cfg.quantity == "cumulant" ? Quantity::Cumulant
                                                         : throw ConfigError("--quantity must be moment or cumulant");
  SimConfig sim;
  sim.lambda = lambda.get_d();
  sim.samples = sample_count(cfg);
  sim.seed = cfg.seed;
  sim.max_order = cfg.n;
  if (cfg.method == "sum") sim.method = SimMethod::SumFormula;
  else if (cfg.method == "recursion") sim.method = SimMethod::JumpRecursion;
  else throw ConfigError("--method must be sum or recursion");

  // analytic[j][g]: order j+1 at grid point g
  std::vector<std::vector<double>> analytic(cfg.n);
  EstimatedMoments estimated;
  if (cfg.target == "x") {
    sim.grid = time_grid(cfg);
    const GrowthSpec spec = GrowthSpec::uniform(lambda);
    const auto mu = moments_X(spec, cfg.n);
    std::vector<ExpPoly> values(mu.begin() + 1, mu.end());
    if (quantity == Quantity::Cumulant) values = cumulants_from_moments<ExpPoly>(values);
    for (int j = 0; j < cfg.n; ++j)
      for (double t : sim.grid) analytic[j].push_back(ep_eval(values[j], t));
    estimated = simulate_gc(sim);
  } else if (cfg.target == "chain-y" || cfg.target == "chain-x") {
    if (cfg.m_start < 1 || cfg.m_stop < cfg.m_start || cfg.m_stop > 30) throw ConfigError("invalid m-range");
    for (int m = cfg.m_start; m <= cfg.m_stop; ++m) sim.grid.push_back(m);
    const Chain chain = cfg.target == "chain-y" ? Chain::Y : Chain::X;
    EmbeddedEngine engine(EmbeddedSpec::uniform(lambda, cfg.m_start, cfg.n));
    for (int m = cfg.m_start; m <= cfg.m_stop; ++m) {
      const auto c = cumulants_embedded(engine, chain, m, cfg.n);
      const auto& list = quantity == Quantity::Cumulant ? c.cumulants : c.moments;
      for (int j = 0; j < cfg.n; ++j) analytic[j].push_back(list[j].get_d());
    }
    auto both = simulate_embedded(sim);
    estimated = chain == Chain::Y ? std::move(both.y) : std::move(both.x);
  } else {
    throw ConfigError("--target must be x, chain-y or chain-x");
  }

  const char* prefix = quantity == Quantity::Cumulant ? "kappa_" : "moment_";
  std::vector<CompareRow> rows;
  bool pass = true;
  for (int j = 0; j < cfg.n; ++j) {
    const auto report = compare(sim.grid, analytic[j], estimated, quantity, j + 1, cfg.sigma);
    pass = pass && report.pass;
    rows.insert(rows.end(), report.rows.begin(), report.rows.end());
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    ordered_json j;
    j["command"] = "compare";
    j["target"] = cfg.target;
    j["samples"] = sim.samples;
    j["seed"] = sim.seed;
    j["sigma"] = cfg.sigma;
    j["pass"] = pass;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"grid", r.grid},
                           {"quantity", prefix + std::to_string(r.order)},
                           {"analytic", json_number(r.analytic)},
                           {"estimate", json_number(r.estimate)},
                           {"stderr", json_number(r.std_error)},
                           {"z", json_number(r.z)}});
    out << j.dump(2) << '\n';
  } else {
    out << "grid,quantity,analytic,estimate,stderr,z\n";
    for (const auto& r : rows)
      out << format_double(r.grid) << ',' << prefix << r.order << ',' << format_double(r.analytic) << ','
          << format_double(r.estimate) << ',' << format_double(r.std_error) << ',' << format_double(r.z) << '\n';
  }
  return {out.str(), pass};
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--lambda", cfg.lambda, "Poisson rate (rational like 7/3 or decimal)")->capture_default_str();
  sub->add_option("--cutoff", cfg.cutoff, "Cut-off law: 'uniform' or moments m1,m2,... as rationals")
      ->capture_default_str();
  sub->add_option("--out", cfg.out_path, "Write output to this file instead of standard output");
}

void add_time_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-start", cfg.t_start, "First grid time")->capture_default_str();
  sub->add_option("--t-stop", cfg.t_stop, "Last grid time (inclusive)")->capture_default_str();
  sub->add_option("--t-step", cfg.t_step, "Grid spacing")->capture_default_str();
}

void add_m_range(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--m-start", cfg.m_start, "First chain index")->capture_default_str();
  sub->add_option("--m-stop", cfg.m_stop, "Last chain index (inclusive, <= 30)")->capture_default_str();
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open --out file '" + cfg.out_path + "'");
  file << text;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moments and cumulants of growth-collapse processes, with Monte Carlo verification",
               "gc_moments"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* moments = app.add_subcommand("moments", "Closed-form E[Y_t^n], E[X_t^n] and cumulants of X_t");
  add_common(moments, cfg);
  moments->add_option("--n", cfg.n, "Moment order (0..8)")->capture_default_str();
  add_time_grid(moments, cfg);
  moments->add_option("--format", cfg.format, "csv | json | symbolic")->capture_default_str();

  auto* embedded = app.add_subcommand("embedded", "Exact moments and cumulants of Y(m) and X(m) = T_m - Y(m)");
  add_common(embedded, cfg);
  embedded->add_option("--n-max,--n", cfg.n, "Highest order (1..4)")->capture_default_str();
  add_m_range(embedded, cfg);
  embedded->add_option("--format", cfg.format, "csv | json | symbolic (exact rationals)")->capture_default_str();

  auto* comp = app.add_subcommand("compare", "Analytic cumulants against Monte Carlo estimates");
  add_common(comp, cfg);
  comp->add_option("--n,--n-max", cfg.n, "Highest order compared (1..4)")->capture_default_str();
  add_time_grid(comp, cfg);
  add_m_range(comp, cfg);
  comp->add_option("--target", cfg.target, "x (X_t on the t-grid) | chain-y | chain-x (on the m-range)")
      ->capture_default_str();
  comp->add_option("--quantity", cfg.quantity, "cumulant | moment")->capture_default_str();
  comp->add_option("--samples", cfg.samples, "Monte Carlo sample count")->capture_default_str();
  comp->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  comp->add_option("--sigma", cfg.sigma, "Gate: pass iff every |z| <= sigma")->capture_default_str();
  comp->add_option("--method", cfg.method, "sum | recursion (path evaluation)")->capture_default_str();
  comp->add_option("--format", cfg.format, "csv | json")->capture_default_str();
  comp->footer("Threads: GC_MOMENTS_THREADS caps worker threads; output does not depend on it.\n"
               "Exit status: 0 all points within sigma, 1 gate failed, 2 configuration error.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (moments->parsed()) {
      write_output(cfg, cmd_moments(cfg), out);
    } else if (embedded->parsed()) {
      write_output(cfg, cmd_embedded(cfg), out);
    } else {
      auto result = cmd_compare(cfg);
      write_output(cfg, result.text, out);
      if (!result.pass) {
        err << "compare: at least one point outside " << cfg.sigma << " standard errors\n";
        return kGateFailed;
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace gcm::cli
