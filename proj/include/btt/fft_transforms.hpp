#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "btt/block_linalg.hpp"

namespace btt {

/// Radix-2 transforms of length n = 2^q with the Fourier matrix
/// F = (w^{ij}), w = exp(2 pi i / n).
///
///   idft(x) = F x            (unnormalized)
///   dft(x)  = (1/n) F^H x
///
/// Plans are immutable and may be shared between threads.
class FourierPlan {
 public:
  /// Throws DimensionError unless n is a power of two.
  explicit FourierPlan(std::size_t n);

  std::size_t n() const { return n_; }
  /// w^k, k = 0..n-1.
  const std::vector<Complex>& roots() const { return roots_; }

  /// In-place F x (conjugate = false) or F^H x (conjugate = true); no scaling.
  void transform(std::span<Complex> x, bool conjugate) const;

 private:
  std::size_t n_;
  std::vector<Complex> roots_;
  std::vector<std::size_t> bitrev_;
};

/// Process-wide plan for length n, built on first use. Thread-safe; the
/// returned reference stays valid for the life of the program.
const FourierPlan& shared_plan(std::size_t n);

std::vector<Complex> idft(const FourierPlan& plan, std::span<const Complex> x);
std::vector<Complex> dft(const FourierPlan& plan, std::span<const Complex> x);

/// (F (x) I_m) V: idft of each of the m^2 entry sequences.
BlockVector block_idft(const FourierPlan& plan, const BlockVector& v);
/// (1/n)(F^H (x) I_m) V.
BlockVector block_dft(const FourierPlan& plan, const BlockVector& v);
/// (F^H (x) I_m) V without the 1/n factor.
BlockVector block_conj_transform(const FourierPlan& plan, const BlockVector& v);

enum class ScaleDirection { forward, inverse };

/// D_eps = diag(1, theta, ..., theta^{n-1}) with theta the principal n-th
/// root of epsilon: for epsilon = rho e^{i phi}, phi in (-pi, pi],
/// theta = rho^{1/n} e^{i phi / n}.
class EpsilonScaling {
 public:
  /// Throws ValidationError when epsilon == 0, DimensionError when n == 0.
  EpsilonScaling(Complex epsilon, std::size_t n);

  Complex epsilon() const { return epsilon_; }
  std::size_t n() const { return powers_.size(); }
  Complex theta() const { return theta_; }
  const std::vector<Complex>& powers() const { return powers_; }
  const std::vector<Complex>& inv_powers() const { return inv_powers_; }

 private:
  Complex epsilon_;
  Complex theta_;
  std::vector<Complex> powers_;
  std::vector<Complex> inv_powers_;
};

/// Block k multiplied by theta^k (forward) or theta^{-k} (inverse).
BlockVector scale(const EpsilonScaling& es, const BlockVector& v, ScaleDirection direction);

}  // namespace btt
