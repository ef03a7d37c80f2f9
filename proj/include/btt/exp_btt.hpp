#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "btt/block_linalg.hpp"
#include "btt/error_analysis.hpp"
#include "btt/exp_circulant.hpp"

namespace btt {

// First block-row A = (A_0, ..., A_{n-1}) of e^{T(U)} for a block upper
// triangular block-Toeplitz subgenerator T(U).
//
// Every method works on U / 2^p (scaling) and recovers the answer with p
// squarings T(Y) <- T(Y) T(Y). Inputs whose n is not a power of two are
// zero-padded to the next power of two and the result truncated; the
// exponential of the padded matrix has e^{T(U)} as leading block.

enum class Method {
  eps_circulant,  // e^{C_eps(U)} with small |eps|, real part
  eps_averaged,   // mean of k epsilon-circulant runs on the circle |eps| = theta
  embedding,      // leading blocks of e^{C(U^{(K)})}
  taylor,         // shifted Taylor series on the nonnegative T(U) + alpha I
};

std::string_view method_name(Method method);
/// Accepts the names above plus the short forms epc, avg, emb.
std::optional<Method> parse_method(std::string_view name);

struct MethodConfig {
  Method method = Method::embedding;
  /// eps_circulant; unset selects the balancing imaginary epsilon.
  std::optional<Complex> epsilon;
  /// eps_averaged: epsilon_j = i^{1/k} w_k^j theta_mag, j = 0..k-1.
  double theta_mag = 1e-2;
  std::size_t k = 1;
  /// embedding; unset selects the smallest power of two K whose bound f_K
  /// on the scaled problem is below embedding_target.
  std::optional<std::size_t> K;
  double embedding_target = 1e-13;
  /// taylor: stop when ||W|| < taylor_tol ||Y||, give up after max_terms.
  double taylor_tol = 1e-15;
  int max_terms = 200;
  /// taylor: estimate rho(U_0 + alpha I) by power iteration instead of
  /// using ||U_0 + alpha I||_inf.
  bool spectral_radius_estimate = false;
  bool use_scaling = true;
  /// Lifts the |epsilon| < 1 restriction of the epsilon-circulant methods.
  EpsilonRange epsilon_range = EpsilonRange::unit_disk;
};

/// A priori bounds of the scaled problem, before the p squarings.
struct PredictedBounds {
  std::optional<double> approximation;
  std::optional<double> roundoff;
};

struct ExpResult {
  BlockVector y;
  /// The configuration with every automatic choice resolved.
  MethodConfig method_used;
  int scaling_p = 0;
  std::optional<PredictedBounds> predicted_bounds;
  /// Taylor terms summed (taylor only).
  int taylor_terms = 0;
};

/// p = floor(log2 alpha) + 1 for alpha > 1, else 0; alpha / 2^p <= 1.
int scaling_exponent(double alpha);
int scaling_exponent(const SubgeneratorSpec& spec);

/// p successive squarings of T(Y). The input must be real.
BlockVector repeated_squaring(BlockVector y, int p);

/// Requires 0 < |epsilon| < 1 unless `range` is unrestricted.
ExpResult exp_btt_eps(const SubgeneratorSpec& spec, Complex epsilon, bool use_scaling = true,
                      EpsilonRange range = EpsilonRange::unit_disk);

/// Requires 0 < theta_mag < 1 (any theta_mag > 0 when unrestricted), k >= 1.
ExpResult exp_btt_eps_averaged(const SubgeneratorSpec& spec, double theta_mag, std::size_t k,
                               bool use_scaling = true,
                               EpsilonRange range = EpsilonRange::unit_disk);

/// K >= n; rounded up to a power of two.
ExpResult exp_btt_embedding(const SubgeneratorSpec& spec, std::size_t K, bool use_scaling = true);

/// NumericalError if max_terms is reached before the stopping test holds.
ExpResult exp_btt_taylor(const SubgeneratorSpec& spec, double tol, int max_terms,
                         bool use_scaling = true, bool spectral_radius_estimate = false);

/// Dispatches on config.method.
ExpResult expm_btt(const SubgeneratorSpec& spec, const MethodConfig& config);

/// Epsilon balancing approximation error against roundoff, for an already
/// scaled spec: |eps| = (m mu phi / ||L||^2)^{1/3} (imaginary) or
/// (m mu phi / ||L||)^{1/2} (real), with phi evaluated for ||Y_h|| <= 1 and
/// n rounded up to a power of two. Returns i mu^{1/3} when ||L|| = 0.
/// |eps| is capped at 1/2.
Complex select_epsilon(const SubgeneratorSpec& spec, bool imaginary,
                       double mu = RoundoffConstants{}.mu,
                       std::optional<double> tau = std::nullopt);

struct SigmaChoice {
  double sigma;
  double value;
};

/// Minimizer of g(sigma) over log(sigma) in [1e-6, 10]: a log-spaced scan
/// brackets the minimum, golden-section search refines it.
SigmaChoice optimal_embedding_sigma(const SubgeneratorSpec& spec, double target_error);

/// Smallest power of two K > g(sigma*), and at least n rounded up to a power
/// of two. The spec's own alpha, ||L|| and n are used, so pass the scaled
/// spec when the embedding runs with scaling.
std::size_t select_embedding_K(const SubgeneratorSpec& spec, double target_error);

/// min over sigma > 1 of f_K(sigma), by the same search on log f_K.
SigmaChoice min_embedding_bound(double alpha, double l_norm, std::size_t n, std::size_t K);

}  // namespace btt
