#include "btt/block_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "btt/errors.hpp"

namespace btt {

BlockVector::BlockVector(std::size_t n, std::size_t m) : m_(m) {
  if (n == 0 || m == 0) throw DimensionError("BlockVector: n and m must be positive");
  blocks_.assign(n, Block::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
}

BlockVector::BlockVector(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("BlockVector: at least one block required");
  m_ = static_cast<std::size_t>(blocks_.front().rows());
  if (m_ == 0) throw DimensionError("BlockVector: blocks must be non-empty");
  for (const auto& b : blocks_) {
    if (static_cast<std::size_t>(b.rows()) != m_ || static_cast<std::size_t>(b.cols()) != m_)
      throw DimensionError("BlockVector: all blocks must be square of the same order");
  }
}

BlockVector BlockVector::identity(std::size_t n, std::size_t m) {
  BlockVector v(n, m);
  v[0].setIdentity();
  return v;
}

bool BlockVector::is_real() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const Block& b) { return (b.imag().array() == 0.0).all(); });
}

double BlockVector::max_abs_real() const {
  double r = 0.0;
  for (const auto& b : blocks_) r = std::max(r, b.real().cwiseAbs().maxCoeff());
  return r;
}

double BlockVector::max_abs_imag() const {
  double r = 0.0;
  for (const auto& b : blocks_) r = std::max(r, b.imag().cwiseAbs().maxCoeff());
  return r;
}

double BlockVector::max_abs() const {
  double r = 0.0;
  for (const auto& b : blocks_) r = std::max(r, b.cwiseAbs().maxCoeff());
  return r;
}

bool BlockVector::all_finite() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) {
    return b.real().allFinite() && b.imag().allFinite();
  });
}

BlockVector resized(const BlockVector& v, std::size_t length) {
  BlockVector out(length, v.m());
  const std::size_t keep = std::min(length, v.n());
  for (std::size_t i = 0; i < keep; ++i) out[i] = v[i];
  return out;
}

BlockVector reversed(const BlockVector& v) {
  std::vector<Block> blocks(v.blocks().rbegin(), v.blocks().rend());
  return BlockVector(std::move(blocks));
}

BlockVector scaled(const BlockVector& v, Complex c) {
  BlockVector out = v;
  for (std::size_t i = 0; i < out.n(); ++i) out[i] *= c;
  return out;
}

namespace {

void require_same_shape(const BlockVector& a, const BlockVector& b, const char* what) {
  if (a.n() != b.n() || a.m() != b.m())
    throw DimensionError(std::string(what) + ": block-vectors differ in n or m");
}

}  // namespace

BlockVector operator+(const BlockVector& a, const BlockVector& b) {
  require_same_shape(a, b, "operator+");
  BlockVector out = a;
  for (std::size_t i = 0; i < out.n(); ++i) out[i] += b[i];
  return out;
}

BlockVector operator-(const BlockVector& a, const BlockVector& b) {
  require_same_shape(a, b, "operator-");
  BlockVector out = a;
  for (std::size_t i = 0; i < out.n(); ++i) out[i] -= b[i];
  return out;
}

BlockVector real_part(const BlockVector& v) {
  BlockVector out = v;
  for (std::size_t i = 0; i < out.n(); ++i) out[i].imag().setZero();
  return out;
}

BlockVector real_part_checked(const BlockVector& v, const char* context) {
  const double im = v.max_abs_imag();
  const double re = v.max_abs_real();
  if (!(im <= 1e-10 * (1.0 + re))) {
    std::ostringstream os;
    os << context << ": imaginary part " << im << " is not negligible (max |Re| = " << re
       << ") for a real problem";
    throw NumericalError(os.str());
  }
  return real_part(v);
}

double block_row_inf_norm(const BlockVector& v) {
  const auto m = static_cast<Eigen::Index>(v.m());
  double best = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    double row = 0.0;
    for (const auto& b : v.blocks()) row += b.row(r).cwiseAbs().sum();
    best = std::max(best, row);
  }
  return best;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

SubgeneratorSpec validate_subgenerator(const BlockVector& u, std::optional<double> tol) {
  if (!u.all_finite()) throw ValidationError("subgenerator: non-finite entry");
  if (!u.is_real()) throw ValidationError("subgenerator: entries must be real");

  const auto m = static_cast<Eigen::Index>(u.m());
  const Eigen::MatrixXd u0 = u[0].real();

  double alpha = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(u0(j, j) < 0.0)) {
      std::ostringstream os;
      os << "subgenerator: diagonal entry (U_0)_{" << j << "," << j << "} = " << u0(j, j)
         << " is not negative";
      throw ValidationError(os.str());
    }
    alpha = std::max(alpha, -u0(j, j));
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index s = 0; s < m; ++s) {
      if (r != s && u0(r, s) < 0.0) {
        std::ostringstream os;
        os << "subgenerator: negative off-diagonal entry (U_0)_{" << r << "," << s
           << "} = " << u0(r, s);
        throw ValidationError(os.str());
      }
    }
  }
  for (std::size_t h = 1; h < u.n(); ++h) {
    const Eigen::MatrixXd uh = u[h].real();
    if ((uh.array() < 0.0).any()) {
      std::ostringstream os;
      os << "subgenerator: block U_" << h << " has a negative entry (" << uh.minCoeff() << ")";
      throw ValidationError(os.str());
    }
  }

  const double row_tol = tol.value_or(1e-12 * alpha);
  double l_norm = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    double total = u0.row(r).sum();
    double lower = 0.0;
    for (std::size_t h = 1; h < u.n(); ++h) lower += u[h].real().row(r).sum();
    total += lower;
    if (total > row_tol) {
      std::ostringstream os;
      os << "subgenerator: row " << r << " of [U_0 ... U_{n-1}] has positive sum " << total
         << " (tolerance " << row_tol << ")";
      throw ValidationError(os.str());
    }
    l_norm = std::max(l_norm, lower);
  }

  return SubgeneratorSpec(u, alpha, l_norm, u.max_abs_real());
}

SubgeneratorSpec scaled_by_power_of_two(const SubgeneratorSpec& spec, int p) {
  if (p == 0) return spec;
  const double factor = std::ldexp(1.0, -p);
  // Power-of-two scaling is exact, so the row-sum test is unaffected.
  return validate_subgenerator(scaled(spec.u(), factor), std::numeric_limits<double>::infinity());
}

ErrorReport error_report(const BlockVector& computed, const BlockVector& reference) {
  require_same_shape(computed, reference, "error_report");
  ErrorReport rep;
  for (std::size_t h = 0; h < reference.n(); ++h) {
    const Block diff = computed[h] - reference[h];
    for (Eigen::Index i = 0; i < diff.rows(); ++i) {
      for (Eigen::Index j = 0; j < diff.cols(); ++j) {
        const double d = std::abs(diff(i, j));
        rep.cw_abs = std::max(rep.cw_abs, d);
        const double a = std::abs(reference[h](i, j));
        if (a == 0.0) {
          ++rep.cw_rel_skipped;
        } else {
          rep.cw_rel = std::max(rep.cw_rel, d / a);
        }
      }
    }
  }
  rep.nw_abs = block_row_inf_norm(computed - reference);
  const double ref_norm = block_row_inf_norm(reference);
  if (ref_norm > 0.0) {
    rep.nw_rel = rep.nw_abs / ref_norm;
  } else {
    rep.nw_rel = rep.nw_abs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace btt
