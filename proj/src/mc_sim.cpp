#include "gcm/mc_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "gcm/combinatorics.hpp"

namespace gcm {

namespace {

double binom(int n, int k) { return binomial(n, k).get_d(); }

// Moments and cumulants from a sample mean and central moments M_2..M_n.
void moments_from_central(double mean, std::span<const double> central, int n,
                          std::vector<double>& raw, std::vector<double>& kappa) {
  std::vector<double> centered(n, 0.0);  // E[(x - mean)^j], j = 1..n
  for (int j = 2; j <= n; ++j) centered[j - 1] = central[j - 2];
  raw.assign(n, 0.0);
  for (int j = 1; j <= n; ++j) {
    double acc = std::pow(mean, j);
    for (int r = 2; r <= j; ++r) acc += binom(j, r) * std::pow(mean, j - r) * centered[r - 1];
    raw[j - 1] = acc;
  }
  kappa = cumulants_from_moments<double>(centered);
  kappa[0] = mean;
}

double batch_stderr(std::span<const double> per_batch) {
  const std::size_t b = per_batch.size();
  if (b < 2) return 0.0;
  double mean = 0.0;
  for (double v : per_batch) mean += v;
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double v : per_batch) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
}

struct BatchPlan {
  int batches;
  std::vector<std::string> warnings;
};

BatchPlan plan_batches(long samples, int requested) {
  BatchPlan plan{requested, {}};
  if (samples < requested) {
    plan.batches = static_cast<int>(samples);
    plan.warnings.push_back("fewer samples (" + std::to_string(samples) + ") than batches (" +
                            std::to_string(requested) + "); using " + std::to_string(plan.batches) +
                            " batches");
  }
  return plan;
}

long batch_begin(long samples, int batches, int b) {
  return static_cast<long>(static_cast<__int128>(samples) * b / batches);
}

// Runs fill(sample_index, out_row) for every sample, batch by batch, and
// returns per-batch sums for every grid column. Batches are independent, so
// the result does not depend on the number of worker threads.
template <class Fill>
std::vector<std::vector<BatchSums>> run_batches(const SimConfig& config, int batches, std::size_t columns,
                                                Fill&& fill) {
  std::vector<std::vector<BatchSums>> sums(batches);
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<double> buffer;
    std::vector<double> row(columns);
    std::vector<double> column;
    for (int b = next++; b < batches; b = next++) {
      const long lo = batch_begin(config.samples, batches, b);
      const long hi = batch_begin(config.samples, batches, b + 1);
      const std::size_t count = static_cast<std::size_t>(hi - lo);
      buffer.assign(count * columns, 0.0);
      for (long s = lo; s < hi; ++s) {
        fill(static_cast<std::uint64_t>(s), row);
        std::copy(row.begin(), row.end(), buffer.begin() + static_cast<std::ptrdiff_t>((s - lo) * columns));
      }
      sums[b].reserve(columns);
      for (std::size_t g = 0; g < columns; ++g) {
        column.resize(count);
        for (std::size_t i = 0; i < count; ++i) column[i] = buffer[i * columns + g];
        sums[b].push_back(BatchSums::from_samples(column, config.max_order));
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads ? config.threads : default_thread_count(),
                                                           static_cast<unsigned>(batches)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return sums;
}

EstimatedMoments assemble(const std::vector<std::vector<BatchSums>>& sums, std::span<const double> grid, int n,
                          std::size_t column_offset, BatchPlan plan) {
  EstimatedMoments out;
  out.batches = plan.batches;
  out.warnings = std::move(plan.warnings);
  std::vector<BatchSums> column(sums.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t b = 0; b < sums.size(); ++b) column[b] = sums[b][column_offset + g];
    GridEstimate e = estimate_cumulants(column, n);
    e.grid = grid[g];
    out.points.push_back(std::move(e));
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (samples < 1) throw DomainError("samples must be >= 1");
  if (grid.empty()) throw DomainError("evaluation grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("evaluation grid must be ascending");
  if (grid.front() < 0.0) throw DomainError("evaluation grid must be nonnegative");
  if (max_order < 1) throw DomainError("max_order must be >= 1");
  if (batches < 1) throw DomainError("batches must be >= 1");
  if (!(cutoff_exponent > 0.0)) throw DomainError("cut-off exponent must be positive");
}

BatchSums BatchSums::from_samples(std::span<const double> x, int n) {
  BatchSums s;
  s.count = static_cast<long>(x.size());
  s.central.assign(std::max(0, n - 1), 0.0);
  if (x.empty()) return s;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  s.mean = mean;
  for (double v : x) {
    const double d = v - mean;
    double p = d;
    for (int r = 2; r <= n; ++r) {
      p *= d;
      s.central[r - 2] += p;
    }
  }
  return s;
}

GridEstimate estimate_cumulants(std::span<const BatchSums> batches, int n) {
  if (n < 1) throw DomainError("estimate_cumulants: order must be >= 1");
  if (batches.empty()) throw DomainError("estimate_cumulants: no batches");
  long total = 0;
  double mean = 0.0;
  for (const auto& b : batches) {
    if (static_cast<int>(b.central.size()) < n - 1) throw DomainError("estimate_cumulants: batch sums too short");
    total += b.count;
    mean += static_cast<double>(b.count) * b.mean;
  }
  if (total < 1) throw DomainError("estimate_cumulants: no samples");
  mean /= static_cast<double>(total);

  // pool central sums about the overall mean
  std::vector<double> pooled(std::max(0, n - 1), 0.0);
  for (const auto& b : batches) {
    const double d = b.mean - mean;
    for (int j = 2; j <= n; ++j) {
      double acc = static_cast<double>(b.count) * std::pow(d, j);  // r = 0
      for (int r = 2; r <= j; ++r) acc += binom(j, r) * std::pow(d, j - r) * b.central[r - 2];
      pooled[j - 2] += acc;
    }
  }
  for (auto& v : pooled) v /= static_cast<double>(total);

  GridEstimate est;
  est.samples = total;
  std::vector<double> raw, kappa;
  moments_from_central(mean, pooled, n, raw, kappa);

  std::vector<std::vector<double>> raw_b(n), kappa_b(n);
  std::vector<double> central(std::max(0, n - 1));
  for (const auto& b : batches) {
    if (b.count == 0) continue;
    for (int j = 2; j <= n; ++j) central[j - 2] = b.central[j - 2] / static_cast<double>(b.count);
    std::vector<double> r, k;
    moments_from_central(b.mean, central, n, r, k);
    for (int j = 0; j < n; ++j) {
      raw_b[j].push_back(r[j]);
      kappa_b[j].push_back(k[j]);
    }
  }
  for (int j = 0; j < n; ++j) {
    est.moments.push_back({raw[j], batch_stderr(raw_b[j])});
    est.cumulants.push_back({kappa[j], batch_stderr(kappa_b[j])});
  }
  return est;
}

GridEstimate estimate_cumulants(std::span<const double> samples, int n, int batches) {
  if (samples.empty()) throw DomainError("estimate_cumulants: no samples");
  const BatchPlan plan = plan_batches(static_cast<long>(samples.size()), batches);
  std::vector<BatchSums> sums;
  for (int b = 0; b < plan.batches; ++b) {
    const long lo = batch_begin(static_cast<long>(samples.size()), plan.batches, b);
    const long hi = batch_begin(static_cast<long>(samples.size()), plan.batches, b + 1);
    sums.push_back(BatchSums::from_samples(samples.subspan(lo, hi - lo), n));
  }
  return estimate_cumulants(sums, n);
}

GcPath sample_gc_path(StreamRng& rng, double lambda, double horizon, double cutoff_exponent) {
  GcPath path;
  double t = rng.exponential(lambda);
  while (t <= horizon) {
    path.jump_times.push_back(t);
    const double u = rng.uniform();
    path.cutoffs.push_back(cutoff_exponent == 1.0 ? u : std::pow(u, cutoff_exponent));
    t += rng.exponential(lambda);
  }
  return path;
}

std::vector<double> gc_values_sum(const GcPath& path, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  const auto& times = path.jump_times;
  for (double t : grid) {
    const auto jumps = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    double y = 0.0;
    double tail = 1.0;  // prod_{l > k} U_l
    for (std::size_t k = jumps; k-- > 0;) {
      y += times[k] * (1.0 - path.cutoffs[k]) * tail;
      tail *= path.cutoffs[k];
    }
    out.push_back(t - y);
  }
  return out;
}

std::vector<double> gc_values_recursion(const GcPath& path, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  double x = 0.0;
  double clock = 0.0;
  std::size_t k = 0;
  for (double t : grid) {
    while (k < path.jump_times.size() && path.jump_times[k] <= t) {
      x = (x + path.jump_times[k] - clock) * path.cutoffs[k];
      clock = path.jump_times[k];
      ++k;
    }
    out.push_back(x + (t - clock));
  }
  return out;
}

GcPath sample_chain(StreamRng& rng, double lambda, int length, double cutoff_exponent) {
  GcPath chain;
  double t = 0.0;
  for (int k = 0; k < length; ++k) {
    t += rng.exponential(lambda);
    chain.jump_times.push_back(t);
    const double u = rng.uniform();
    chain.cutoffs.push_back(cutoff_exponent == 1.0 ? u : std::pow(u, cutoff_exponent));
  }
  return chain;
}

std::vector<double> chain_values_sum(const GcPath& chain, std::span<const int> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (int m : indices) {
    double y = 0.0;
    double tail = 1.0;
    for (int k = m; k-- > 0;) {
      y += chain.jump_times[k] * (1.0 - chain.cutoffs[k]) * tail;
      tail *= chain.cutoffs[k];
    }
    out.push_back(y);
  }
  return out;
}

std::vector<double> chain_values_recursion(const GcPath& chain, std::span<const int> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  double y = 0.0;
  int k = 0;
  for (int m : indices) {
    for (; k < m; ++k) y = chain.cutoffs[k] * y + chain.jump_times[k] * (1.0 - chain.cutoffs[k]);
    out.push_back(y);
  }
  return out;
}

EstimatedMoments simulate_gc(const SimConfig& config) {
  config.validate();
  BatchPlan plan = plan_batches(config.samples, config.batches);
  const std::span<const double> grid(config.grid);
  const double horizon = config.grid.back();
  auto sums = run_batches(config, plan.batches, grid.size(), [&](std::uint64_t s, std::vector<double>& row) {
    StreamRng rng(config.seed, s);
    const GcPath path = sample_gc_path(rng, config.lambda, horizon, config.cutoff_exponent);
    row = config.method == SimMethod::SumFormula ? gc_values_sum(path, grid) : gc_values_recursion(path, grid);
  });
  return assemble(sums, grid, config.max_order, 0, std::move(plan));
}

EmbeddedEstimates simulate_embedded(const SimConfig& config) {
  config.validate();
  std::vector<int> indices;
  for (double g : config.grid) {
    if (g < 1.0 || g != std::floor(g)) throw DomainError("chain indices must be integers >= 1");
    indices.push_back(static_cast<int>(g));
  }
  const int length = indices.back();
  BatchPlan plan = plan_batches(config.samples, config.batches);
  const std::size_t width = indices.size();
  auto sums = run_batches(config, plan.batches, 2 * width, [&](std::uint64_t s, std::vector<double>& row) {
    StreamRng rng(config.seed, s);
    const GcPath chain = sample_chain(rng, config.lambda, length, config.cutoff_exponent);
    const auto y = config.method == SimMethod::SumFormula ? chain_values_sum(chain, indices)
                                                          : chain_values_recursion(chain, indices);
    for (std::size_t g = 0; g < width; ++g) {
      row[g] = y[g];
      row[width + g] = chain.jump_times[indices[g] - 1] - y[g];
    }
  });
  EmbeddedEstimates out;
  out.y = assemble(sums, config.grid, config.max_order, 0, plan);
  out.x = assemble(sums, config.grid, config.max_order, width, std::move(plan));
  return out;
}

CompareReport compare(std::span<const double> grid, std::span<const double> analytic,
                      const EstimatedMoments& estimated, Quantity quantity, int order, double sigma) {
  if (grid.size() != analytic.size() || grid.size() != estimated.points.size())
    throw DomainError("compare: grid sizes differ");
  CompareReport report;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& point = estimated.points[g];
    if (point.grid != grid[g]) throw DomainError("compare: grid points differ");
    const auto& list = quantity == Quantity::Moment ? point.moments : point.cumulants;
    if (order < 1 || order > static_cast<int>(list.size())) throw DomainError("compare: order not estimated");
    const Estimate& e = list[order - 1];
    CompareRow row{grid[g], order, analytic[g], e.value, e.std_error, 0.0, true};
    const double diff = e.value - analytic[g];
    if (e.std_error > 0.0) {
      row.z = diff / e.std_error;
    } else if (std::abs(diff) > 1e-12 * std::max(1.0, std::abs(analytic[g]))) {
      row.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    row.pass = std::abs(row.z) <= sigma;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

CompareReport compare(const ExpPoly& analytic, const EstimatedMoments& estimated, Quantity quantity, int order,
                      double sigma) {
  std::vector<double> grid, values;
  for (const auto& p : estimated.points) {
    grid.push_back(p.grid);
    values.push_back(ep_eval(analytic, p.grid));
  }
  return compare(grid, values, estimated, quantity, order, sigma);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("GC_MOMENTS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gcm
