#include "btt/dense_expm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "btt/errors.hpp"

namespace btt {

namespace {

constexpr int kMaxTaylorTerms = 200;

template <typename Matrix>
double inf_norm(const Matrix& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

// Number of halvings that bring `norm` to at most 1/2.
int halvings_for(double norm) {
  int s = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++s;
  }
  return s;
}

// sum_k a^k / k! for ||a|| <= 1/2, truncated by the relative term test.
template <typename Matrix>
Matrix taylor_sum(const Matrix& a) {
  const double eps = std::numeric_limits<double>::epsilon();
  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = (term * a) / double(k);
    sum += term;
    if (inf_norm(term) < eps * inf_norm(sum)) return sum;
  }
  throw NumericalError("expm: Taylor series did not converge within " +
                       std::to_string(kMaxTaylorTerms) + " terms");
}

}  // namespace

Block expm_small(const Block& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm_small: matrix must be square");
  if (!a.real().allFinite() || !a.imag().allFinite())
    throw ValidationError("expm_small: non-finite entry");
  const int s = halvings_for(inf_norm(a));
  Block e = taylor_sum<Block>(a * std::ldexp(1.0, -s));
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

Eigen::MatrixXd expm_essentially_nonnegative(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) throw DimensionError("expm: matrix must be square");
  if (!q.allFinite()) throw ValidationError("expm: non-finite entry");
  const double alpha = std::max(0.0, -q.diagonal().minCoeff());
  Eigen::MatrixXd b = q;
  b.diagonal().array() += alpha;
  const int s = halvings_for(inf_norm(b));
  const double scale = std::ldexp(1.0, -s);
  Eigen::MatrixXd e = taylor_sum<Eigen::MatrixXd>(b * scale) * std::exp(-alpha * scale);
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

Eigen::MatrixXd dense_btt(const BlockVector& u) {
  const auto n = static_cast<Eigen::Index>(u.n());
  const auto m = static_cast<Eigen::Index>(u.m());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) t.block(i * m, j * m, m, m) = u[j - i].real();
  return t;
}

BlockVector expm_dense_oracle(const SubgeneratorSpec& spec, std::size_t cap) {
  if (spec.n() * spec.m() > cap)
    throw DimensionError("expm_dense_oracle: n*m = " + std::to_string(spec.n() * spec.m()) +
                         " exceeds the oracle cap " + std::to_string(cap));
  const Eigen::MatrixXd e = expm_essentially_nonnegative(dense_btt(spec.u()));
  const auto m = static_cast<Eigen::Index>(spec.m());
  BlockVector row(spec.n(), spec.m());
  for (std::size_t h = 0; h < spec.n(); ++h)
    row[h] = e.block(0, static_cast<Eigen::Index>(h) * m, m, m).cast<Complex>();
  return row;
}

}  // namespace btt
