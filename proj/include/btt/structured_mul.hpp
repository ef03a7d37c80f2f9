#pragma once

#include "btt/block_linalg.hpp"

namespace btt {

// Products with block-circulant C(U) and block upper-triangular
// block-Toeplitz T(U) matrices, both described by their first block-row U.
//
// All operands must share n (a power of two) and m; DimensionError otherwise.
// When every input is real the result is returned real, after checking that
// the FFT left only roundoff-sized imaginary parts (NumericalError if not).

/// Y = C(U) X for a block-column X.
BlockVector circulant_times_vector(const BlockVector& u, const BlockVector& x);

/// Y = T(U) X, through the length-2n circulant embedding of T(U).
BlockVector btt_times_vector(const BlockVector& u, const BlockVector& x);

/// First block-row of T(U) T(X).
BlockVector btt_times_btt(const BlockVector& u, const BlockVector& x);

/// First block-row of C(U) C(X).
BlockVector circulant_times_circulant(const BlockVector& u, const BlockVector& x);

}  // namespace btt
