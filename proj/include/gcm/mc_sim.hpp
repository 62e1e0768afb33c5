#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcm/exppoly.hpp"
#include "gcm/rng.hpp"

namespace gcm {

enum class SimMethod { SumFormula, JumpRecursion };

struct SimConfig {
  double lambda = 2.0;
  /// Evaluation times (growth-collapse) or chain indices (embedded), ascending.
  std::vector<double> grid;
  long samples = 1'000'000;
  std::uint64_t seed = 1;
  SimMethod method = SimMethod::JumpRecursion;
  int max_order = 4;
  int batches = 100;
  /// 0 = GC_MOMENTS_THREADS or hardware concurrency.
  unsigned threads = 0;
  /// Cut-off Z = U^a with U uniform; 1 gives uniform cut-offs.
  double cutoff_exponent = 1.0;

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct GridEstimate {
  double grid = 0.0;
  std::vector<Estimate> moments;    // raw, order 1..n
  std::vector<Estimate> cumulants;  // order 1..n
  long samples = 0;
};

struct EstimatedMoments {
  std::vector<GridEstimate> points;
  int batches = 0;
  std::vector<std::string> warnings;
};

/// Sample count, mean and central power sums sum (x - mean)^r, r = 2..n, of
/// one batch.
struct BatchSums {
  long count = 0;
  double mean = 0.0;
  std::vector<double> central;  // index r - 2

  static BatchSums from_samples(std::span<const double> x, int n);
};

/// Plug-in moments/cumulants of the pooled sample with batch-means standard
/// errors (spread of per-batch estimates / sqrt(batches)).
GridEstimate estimate_cumulants(std::span<const BatchSums> batches, int n);

/// Convenience wrapper: splits samples into contiguous batches.
GridEstimate estimate_cumulants(std::span<const double> samples, int n, int batches = 100);

/// Jump times and cut-offs of one growth-collapse path on [0, horizon].
struct GcPath {
  std::vector<double> jump_times;
  std::vector<double> cutoffs;
};

GcPath sample_gc_path(StreamRng& rng, double lambda, double horizon, double cutoff_exponent = 1.0);

/// X_t = t - sum_{k <= N_t} T_k (1 - U_k) prod_{l=k+1}^{N_t} U_l at each grid time.
std::vector<double> gc_values_sum(const GcPath& path, std::span<const double> grid);
/// Same values by growing at slope one and multiplying by U_k at each jump.
std::vector<double> gc_values_recursion(const GcPath& path, std::span<const double> grid);

/// First `length` jump times (Erlang partial sums) and cut-offs.
GcPath sample_chain(StreamRng& rng, double lambda, int length, double cutoff_exponent = 1.0);

/// Y(m) at each grid index, by the sum formula or the recursion
/// Y(m) = U_m Y(m-1) + T_m (1 - U_m).
std::vector<double> chain_values_sum(const GcPath& chain, std::span<const int> indices);
std::vector<double> chain_values_recursion(const GcPath& chain, std::span<const int> indices);

/// Estimates of X_t on the time grid.
EstimatedMoments simulate_gc(const SimConfig& config);

struct EmbeddedEstimates {
  EstimatedMoments y;
  EstimatedMoments x;  // T_m - Y(m)
};

/// Estimates of Y(m) and X(m) on the index grid.
EmbeddedEstimates simulate_embedded(const SimConfig& config);

enum class Quantity { Moment, Cumulant };

struct CompareRow {
  double grid = 0.0;
  int order = 0;
  double analytic = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = true;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool pass = true;
};

/// z = (estimate - analytic) / stderr per grid point; pass iff |z| <= sigma.
/// A zero standard error passes only on exact agreement.
CompareReport compare(std::span<const double> grid, std::span<const double> analytic,
                      const EstimatedMoments& estimated, Quantity quantity, int order, double sigma);

/// Evaluates the exp-polynomial on the estimate's grid first.
CompareReport compare(const ExpPoly& analytic, const EstimatedMoments& estimated, Quantity quantity,
                      int order, double sigma);

/// Threads used when SimConfig::threads is 0.
unsigned default_thread_count();

}  // namespace gcm
