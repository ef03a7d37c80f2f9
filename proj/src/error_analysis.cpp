#include "btt/error_analysis.hpp"

#include <cmath>
#include <sstream>

#include "btt/errors.hpp"

namespace btt {

RoundoffConstants RoundoffConstants::for_block_order(std::size_t m) {
  RoundoffConstants c;
  c.tau = 10.0 * double(m);
  return c;
}

double phi_bound(std::size_t n, std::size_t m, double umax, double ymax,
                 const RoundoffConstants& c) {
  const double dn = double(n);
  const double lg = std::log2(dn);
  return double(m) * dn * (c.zeta + c.gamma * lg) * umax +
         (c.zeta + c.gamma * std::sqrt(dn) * lg) * ymax + c.tau;
}

double eps_circulant_roundoff_bound(double epsilon_abs, std::size_t n, std::size_t m,
                                    double umax, double ymax, const RoundoffConstants& c) {
  return c.mu / epsilon_abs * double(m) * phi_bound(n, m, umax, ymax, c);
}

double chi_bound(std::size_t n, std::size_t m, double umax, double ymax,
                 const RoundoffConstants& c) {
  const double dn = double(n);
  const double lg = std::log2(dn);
  return double(m) * dn * c.gamma * lg * umax + c.gamma * std::sqrt(dn) * lg * ymax + c.tau;
}

double circulant_roundoff_bound(std::size_t n, std::size_t m, double umax, double ymax,
                                const RoundoffConstants& c) {
  return c.mu * double(m) * chi_bound(n, m, umax, ymax, c);
}

double decay_bound(double alpha, std::size_t n, double sigma, std::size_t i) {
  if (!(sigma > 1.0)) throw ValidationError("decay_bound: sigma must exceed 1");
  const double growth = alpha * std::expm1(double(n - 1) * std::log(sigma));
  return std::exp(growth - double(i) * std::log(sigma));
}

double eps_approx_bound(double l_norm, Complex epsilon) {
  const double t = std::abs(epsilon) * l_norm;
  if (epsilon.real() == 0.0) return std::expm1(t * t);
  return std::expm1(t);
}

namespace {

void check_sigma(double sigma, const char* what) {
  if (!(sigma > 1.0)) throw ValidationError(std::string(what) + ": sigma must exceed 1");
}

}  // namespace

double embedding_bound_fK(double alpha, double l_norm, std::size_t n, std::size_t K,
                          double sigma) {
  check_sigma(sigma, "embedding_bound_fK");
  if (K < n) throw ValidationError("embedding_bound_fK: K must be at least n");
  if (l_norm == 0.0) return 0.0;
  const double log_sigma = std::log(sigma);
  const double log_f = std::log(std::expm1(l_norm)) + alpha * std::expm1(double(n - 1) * log_sigma) -
                       double(K - n) * log_sigma - std::log1p(-1.0 / sigma);
  return std::exp(log_f);
}

double embedding_g(double alpha, double l_norm, std::size_t n, double target, double sigma) {
  check_sigma(sigma, "embedding_g");
  const double log_sigma = std::log(sigma);
  const double numerator = alpha * std::expm1(double(n - 1) * log_sigma) -
                           std::log1p(-1.0 / sigma) - std::log(target) +
                           std::log(std::expm1(l_norm));
  return numerator / log_sigma + double(n);
}

double taylor_truncation_bound(const SubgeneratorSpec& spec, int r) {
  if (r < 1) throw ValidationError("taylor_truncation_bound: r must be positive");
  BlockVector shifted = spec.u();
  shifted[0].diagonal().array() += spec.alpha();
  // T(U_hat) is nonnegative, so its norm is attained on the first block-row.
  const double t = block_row_inf_norm(shifted);
  if (!(t < double(r) + 1.0)) {
    std::ostringstream os;
    os << "taylor_truncation_bound: ||T(U_hat)|| = " << t << " is not below r + 1 = " << r + 1;
    throw ValidationError(os.str());
  }
  if (t == 0.0) return 0.0;
  const double log_term = double(r) * std::log(t) - std::lgamma(double(r) + 1.0);
  return std::exp(log_term) / (1.0 - t / (double(r) + 1.0));
}

}  // namespace btt
