#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "btt/block_linalg.hpp"

namespace btt {

/// e^A by scaling and squaring with a truncated Taylor series.
///
/// A is scaled by 2^-s so that ||A / 2^s||_inf <= 1/2; terms are summed until
/// the next term's norm drops below machine epsilon times the partial sum's
/// norm (at most 200 terms, NumericalError beyond), then the sum is squared
/// s times. Works for any square size; in this library it is applied to the
/// m x m blocks of the FFT-diagonalized problems.
///
/// Throws ValidationError on non-finite input.
Block expm_small(const Block& a);

/// e^Q for a real matrix with nonnegative off-diagonal entries, computed as
/// e^{-alpha} e^{Q + alpha I} with alpha = max_j -q_jj so that every Taylor
/// term is nonnegative. The factor e^{-alpha/2^s} is applied before squaring.
Eigen::MatrixXd expm_essentially_nonnegative(const Eigen::MatrixXd& q);

/// Dense nm x nm matrix T(U) for a real block-vector.
Eigen::MatrixXd dense_btt(const BlockVector& u);

inline constexpr std::size_t default_oracle_cap = 512;

/// First block-row of e^{T(U)} from the assembled dense matrix. Reference
/// solution for tests and experiments. Throws DimensionError if n*m > cap.
BlockVector expm_dense_oracle(const SubgeneratorSpec& spec,
                              std::size_t cap = default_oracle_cap);

}  // namespace btt
