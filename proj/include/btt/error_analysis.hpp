#pragma once

#include <cstddef>
#include <limits>

#include "btt/block_linalg.hpp"

namespace btt {

/// Constants of the first-order roundoff analysis of the FFT-based
/// exponential. `tau` is the relative accuracy constant of the m x m
/// exponential (||fl(e^V) - e^V|| <= mu tau ||e^V||); it is algorithm
/// dependent and has no canonical value.
struct RoundoffConstants {
  double mu = std::numeric_limits<double>::epsilon();
  double zeta = 3.8284271247461903;  // 1 + 2 sqrt 2
  double gamma = 6.6568542494923806;  // 4 sqrt 2 + 1
  double beta = 2.8284271247461903;   // 2 sqrt 2
  double tau = 20.0;

  /// Defaults with tau = 10 m.
  static RoundoffConstants for_block_order(std::size_t m);
};

/// phi = m n (zeta + gamma log2 n) umax + (zeta + gamma sqrt(n) log2 n) ymax + tau,
/// where umax bounds |(U_h)_rs| and ymax bounds ||Y_h||_inf of the output.
double phi_bound(std::size_t n, std::size_t m, double umax, double ymax,
                 const RoundoffConstants& c);

/// Per-block roundoff bound of the epsilon-circulant exponential:
/// mu |epsilon|^{-1} m phi.
double eps_circulant_roundoff_bound(double epsilon_abs, std::size_t n, std::size_t m,
                                    double umax, double ymax, const RoundoffConstants& c);

/// chi = m n gamma log2 n umax + gamma sqrt(n) log2 n ymax + tau (epsilon = 1).
double chi_bound(std::size_t n, std::size_t m, double umax, double ymax,
                 const RoundoffConstants& c);

/// Per-block roundoff bound of the circulant exponential: mu m chi.
double circulant_roundoff_bound(std::size_t n, std::size_t m, double umax, double ymax,
                                const RoundoffConstants& c);

/// e^{alpha (sigma^{n-1} - 1)} sigma^{-i}: componentwise bound on the row
/// sums of block i of the exponential's first block-row (n may be replaced
/// by the bandwidth for banded problems). ValidationError unless sigma > 1.
double decay_bound(double alpha, std::size_t n, double sigma, std::size_t i);

/// Distance between e^{T(U)} and e^{C_eps(U)} (or its real part when epsilon
/// is pure imaginary): e^{|eps| ||L||} - 1, resp. e^{|eps|^2 ||L||^2} - 1.
double eps_approx_bound(double l_norm, Complex epsilon);

/// f_K(sigma) = (e^{||L||} - 1) e^{alpha (sigma^{n-1} - 1)} sigma^{n-K} / (1 - 1/sigma),
/// the bound on the embedding error of a length-K circulant.
/// ValidationError unless sigma > 1 and K >= n.
double embedding_bound_fK(double alpha, double l_norm, std::size_t n, std::size_t K,
                          double sigma);

/// g(sigma): f_K(sigma) < target exactly when K > g(sigma).
double embedding_g(double alpha, double l_norm, std::size_t n, double target, double sigma);

/// Truncation bound for r Taylor terms of e^{T(U_hat)}, U_hat = U + alpha I
/// in block 0, relaxed by submultiplicativity:
///   t^r / r! / (1 - t / (r + 1)),  t = ||T(U_hat)||_inf.
/// Pass the already scaled subgenerator. ValidationError when t >= r + 1.
double taylor_truncation_bound(const SubgeneratorSpec& spec, int r);

}  // namespace btt
