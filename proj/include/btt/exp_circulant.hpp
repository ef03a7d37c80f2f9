#pragma once

#include "btt/block_linalg.hpp"

namespace btt {

enum class EpsilonRange {
  unit_disk,     // 0 < |epsilon| <= 1
  unrestricted,  // any nonzero epsilon; used by parameter sweeps
};

/// Y such that C_eps(Y) = exp(C_eps(U)).
///
/// The FFT block-diagonalizes D_eps^{-1} C_eps(U) D_eps, so the work is two
/// block transforms, two diagonal scalings and n independent m x m
/// exponentials (run through parallel_for).
///
/// Throws ValidationError for epsilon == 0 or |epsilon| > 1 (unless
/// `range` is unrestricted), DimensionError unless n is a power of two.
/// A real U with real epsilon yields a real Y.
BlockVector exp_eps_circulant(const BlockVector& u, Complex epsilon,
                              EpsilonRange range = EpsilonRange::unit_disk);

/// Y such that C(Y) = exp(C(U)); the epsilon = 1 case without the scalings.
BlockVector exp_circulant(const BlockVector& u);

}  // namespace btt
