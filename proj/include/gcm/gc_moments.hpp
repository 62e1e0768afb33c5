#pragma once

#include <span>
#include <vector>

#include "gcm/combinatorics.hpp"
#include "gcm/exppoly.hpp"
#include "gcm/polynomial.hpp"
#include "gcm/rational.hpp"

namespace gcm {

/// Parameters of Y_t = sum_{k <= N_t} f(T_k) (1 - Z_k) prod_{l=k+1}^{N_t} Z_l.
struct GrowthSpec {
  Rational lambda;                                  // Poisson rate, > 0
  Polynomial growth = Polynomial::identity();       // f
  MomentSequence cutoff = MomentSequence::uniform(8);
  int max_order = 8;

  static GrowthSpec uniform(const Rational& lambda, int max_order = 8);
  void validate() const;
};

/// E[(Y_t)^n] as an exp-polynomial in t. Dispatches to the uniform fast path
/// when the cut-off moments are those of Uniform[0,1].
ExpPoly moment_Y(const GrowthSpec& spec, int n);

/// General cut-off route:
///   n! e^{lambda t (m_n - 1)} sum_k lambda^k sum_{compositions}
///   int_{0<s_1<..<s_k<t} prod_l f(s_l)^{p_l}/p_l! C_{p_l, q_{l-1}} e^{lambda s_l (m_{q_{l-1}} - m_{q_l})}.
ExpPoly moment_Y_general(const GrowthSpec& spec, int n);

/// Uniform cut-off route with weights prod_l 1/(1 + q_l) and
/// prefactor e^{-n lambda t/(n+1)}. Throws unless the cut-off is uniform.
ExpPoly moment_Y_uniform(const GrowthSpec& spec, int n);

/// E[(X_t)^j], j = 0..n, for X_t = t - Y_t, via the binomial recursion
///   E[X^n] = (-1)^n (E[Y^n] - sum_{k<n} C(n,k) t^{n-k} (-1)^k E[X^k]).
/// Requires f(s) = s.
std::vector<ExpPoly> moments_X(const GrowthSpec& spec, int n);
ExpPoly moment_X(const GrowthSpec& spec, int n);

/// ((n+1)!/lambda^n) sum_{k=0}^n (-1)^k (k+1)^{n-1} C(n,k) e^{-k lambda t/(k+1)}
ExpPoly moment_X_closed(const Rational& lambda, int n);

/// kappa^(1..n)(t) of X_t.
std::vector<ExpPoly> cumulants_X(const GrowthSpec& spec, int n);

/// d/dt E[X^n] - n E[X^{n-1}] + (lambda n/(n+1)) E[X^n] on the closed form;
/// identically zero.
ExpPoly ode_residual(const Rational& lambda, int n);

/// (j+1)!/lambda^j for j = 0..n: raw moments of the Gamma(2, lambda) law.
std::vector<Rational> stationary_moments(const Rational& lambda, int n);

struct MomentReport {
  int order = 0;
  ExpPoly moment_Y;
  ExpPoly moment_X;
  std::vector<ExpPoly> cumulants;    // kappa^(1..order)(t) of X_t
  std::vector<Rational> stationary;  // (j+1)!/lambda^j, j = 0..order
};

MomentReport moment_report(const GrowthSpec& spec, int n);

/// Moments and cumulants of a Poisson shot noise S_t = sum_k J_k g(T_k, t).
template <class Scalar>
struct ShotNoiseMoments {
  std::vector<Scalar> moments;    // E[S_t^j], j = 1..n
  std::vector<Scalar> cumulants;  // E[J^j] G_j, j = 1..n
};

/// E[S_t^n] = B_n(E[J] G_1, ..., E[J^n] G_n) where G_j = int_0^t g^j(s,t) lambda ds.
/// jump_moments[j-1] = E[J^j], g_integrals[j-1] = G_j.
template <class Scalar>
ShotNoiseMoments<Scalar> shot_noise_moments(std::span<const Rational> jump_moments,
                                            std::span<const Scalar> g_integrals, int n) {
  if (n < 1) throw DomainError("shot_noise_moments: order must be >= 1");
  if (jump_moments.size() < static_cast<std::size_t>(n) || g_integrals.size() < static_cast<std::size_t>(n))
    throw DomainError("shot_noise_moments: need jump moments and kernel integrals through order n");
  ShotNoiseMoments<Scalar> out;
  for (int j = 0; j < n; ++j) out.cumulants.push_back(detail::scaled(g_integrals[j], jump_moments[j]));
  out.moments = moments_from_cumulants<Scalar>(out.cumulants);
  return out;
}

/// G_j(t) = int_0^t lambda e^{-j beta (t - s)} ds for the exponential kernel
/// g(s,t) = e^{-beta (t-s)}, j = 1..n.
std::vector<ExpPoly> exponential_kernel_integrals(const Rational& lambda, const Rational& beta, int n);

}  // namespace gcm
