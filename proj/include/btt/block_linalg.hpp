#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace btt {

using Complex = std::complex<double>;

// An m x m block. Real blocks are stored with zero imaginary parts.
using Block = Eigen::MatrixXcd;

/// Ordered sequence of n square blocks of common order m.
///
/// A BlockVector is the first block-row of a block-triangular block-Toeplitz,
/// block-circulant or block-epsilon-circulant matrix, depending on the
/// operation it is handed to.
class BlockVector {
 public:
  /// n zero blocks of order m. Throws DimensionError if n or m is 0.
  BlockVector(std::size_t n, std::size_t m);
  /// Takes ownership of `blocks`; all must be square with the same order.
  explicit BlockVector(std::vector<Block> blocks);

  std::size_t n() const { return blocks_.size(); }
  std::size_t m() const { return m_; }

  const Block& operator[](std::size_t i) const { return blocks_[i]; }
  Block& operator[](std::size_t i) { return blocks_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// (I, 0, ..., 0).
  static BlockVector identity(std::size_t n, std::size_t m);

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
  double max_abs_real() const;
  double max_abs_imag() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  std::vector<Block> blocks_;
  std::size_t m_ = 0;
};

/// First `length` blocks of v followed by zero blocks (truncates when shorter).
BlockVector resized(const BlockVector& v, std::size_t length);
/// (V_{n-1}, ..., V_0).
BlockVector reversed(const BlockVector& v);
BlockVector scaled(const BlockVector& v, Complex c);
BlockVector operator+(const BlockVector& a, const BlockVector& b);
BlockVector operator-(const BlockVector& a, const BlockVector& b);
/// Drops imaginary parts unconditionally.
BlockVector real_part(const BlockVector& v);
/// Drops imaginary parts after checking max|Im| <= 1e-10 (1 + max|Re|);
/// throws NumericalError naming `context` otherwise.
BlockVector real_part_checked(const BlockVector& v, const char* context);

/// Infinity norm of the m x nm matrix [V_0, ..., V_{n-1}].
double block_row_inf_norm(const BlockVector& v);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

/// A real block-vector whose block upper-triangular Toeplitz matrix is a
/// subgenerator. Only obtainable from validate_subgenerator.
class SubgeneratorSpec {
 public:
  const BlockVector& u() const { return u_; }
  std::size_t n() const { return u_.n(); }
  std::size_t m() const { return u_.m(); }
  /// max_j -(U_0)_{jj}
  double alpha() const { return alpha_; }
  /// Infinity norm of the strictly lower block part that an epsilon-circulant
  /// wraps around: the max row sum of [U_1, ..., U_{n-1}].
  double l_norm() const { return l_norm_; }
  /// max_{h,r,s} |(U_h)_{rs}|
  double max_abs_entry() const { return max_abs_entry_; }

 private:
  friend SubgeneratorSpec validate_subgenerator(const BlockVector&, std::optional<double>);
  SubgeneratorSpec(BlockVector u, double alpha, double l_norm, double max_abs_entry)
      : u_(std::move(u)), alpha_(alpha), l_norm_(l_norm), max_abs_entry_(max_abs_entry) {}

  BlockVector u_;
  double alpha_;
  double l_norm_;
  double max_abs_entry_;
};

/// Checks the sign pattern and row sums of T(u). Row sums may exceed zero by
/// at most `tol` (default 1e-12 * alpha). Throws ValidationError with a
/// diagnostic naming the first violated condition.
SubgeneratorSpec validate_subgenerator(const BlockVector& u,
                                       std::optional<double> tol = std::nullopt);

/// The subgenerator U / 2^p (p may be 0).
SubgeneratorSpec scaled_by_power_of_two(const SubgeneratorSpec& spec, int p);

/// The four error measures between a computed and a reference block-row.
struct ErrorReport {
  double cw_abs = 0.0;
  double cw_rel = 0.0;
  double nw_abs = 0.0;
  double nw_rel = 0.0;
  /// Reference entries equal to zero, left out of cw_rel.
  std::size_t cw_rel_skipped = 0;
};

ErrorReport error_report(const BlockVector& computed, const BlockVector& reference);

}  // namespace btt
