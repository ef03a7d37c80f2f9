#include "btt/fft_transforms.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "btt/errors.hpp"
#include "btt/parallel.hpp"

namespace btt {

namespace {

// exp(2 pi i k / n), exact at multiples of a quarter turn.
Complex unit_root(std::size_t k, std::size_t n) {
  k %= n;
  if (n % 4 != 0) return std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(n));
  const std::size_t quarter = n / 4;
  const std::size_t q = k / quarter;
  const std::size_t r = k % quarter;
  Complex z = r == 0 ? Complex(1.0, 0.0)
                     : std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(n));
  for (std::size_t t = 0; t < q; ++t) z = Complex(-z.imag(), z.real());
  return z;
}

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw DimensionError(std::string(what) + ": length does not match the plan");
}

}  // namespace

FourierPlan::FourierPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) throw DimensionError("FourierPlan: length must be a power of two");
  roots_.resize(n);
  for (std::size_t k = 0; k < n; ++k) roots_[k] = unit_root(k, n);

  bitrev_.assign(n, 0);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
}

void FourierPlan::transform(std::span<Complex> x, bool conjugate) const {
  require_length(x.size(), n_, "FourierPlan::transform");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = roots_[j * stride];
        if (conjugate) w = std::conj(w);
        const Complex a = x[start + j];
        const Complex b = w * x[start + j + half];
        x[start + j] = a + b;
        x[start + j + half] = a - b;
      }
    }
  }
}

const FourierPlan& shared_plan(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const FourierPlan>> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<const FourierPlan>(n);
  return *slot;
}

std::vector<Complex> idft(const FourierPlan& plan, std::span<const Complex> x) {
  require_length(x.size(), plan.n(), "idft");
  std::vector<Complex> y(x.begin(), x.end());
  plan.transform(y, false);
  return y;
}

std::vector<Complex> dft(const FourierPlan& plan, std::span<const Complex> x) {
  require_length(x.size(), plan.n(), "dft");
  std::vector<Complex> y(x.begin(), x.end());
  plan.transform(y, true);
  const double inv_n = 1.0 / double(plan.n());
  for (auto& c : y) c *= inv_n;
  return y;
}

namespace {

// Applies the plan to each (r, s) entry sequence of v.
BlockVector entrywise_transform(const FourierPlan& plan, const BlockVector& v, bool conjugate,
                                double factor) {
  require_length(v.n(), plan.n(), "block transform");
  const auto m = static_cast<Eigen::Index>(v.m());
  const std::size_t n = v.n();
  BlockVector out(n, v.m());
  parallel_for(static_cast<std::size_t>(m * m), [&](std::size_t rs) {
    const auto r = static_cast<Eigen::Index>(rs) / m;
    const auto s = static_cast<Eigen::Index>(rs) % m;
    std::vector<Complex> seq(n);
    for (std::size_t k = 0; k < n; ++k) seq[k] = v[k](r, s);
    plan.transform(seq, conjugate);
    for (std::size_t k = 0; k < n; ++k) out[k](r, s) = seq[k] * factor;
  });
  return out;
}

}  // namespace

BlockVector block_idft(const FourierPlan& plan, const BlockVector& v) {
  return entrywise_transform(plan, v, false, 1.0);
}

BlockVector block_dft(const FourierPlan& plan, const BlockVector& v) {
  return entrywise_transform(plan, v, true, 1.0 / double(plan.n()));
}

BlockVector block_conj_transform(const FourierPlan& plan, const BlockVector& v) {
  return entrywise_transform(plan, v, true, 1.0);
}

EpsilonScaling::EpsilonScaling(Complex epsilon, std::size_t n) : epsilon_(epsilon) {
  if (n == 0) throw DimensionError("EpsilonScaling: n must be positive");
  if (epsilon == Complex(0.0, 0.0))
    throw ValidationError("EpsilonScaling: epsilon must be nonzero");
  const double rho = std::abs(epsilon);
  const double phi = std::arg(epsilon);
  const double dn = double(n);
  theta_ = std::polar(std::pow(rho, 1.0 / dn), phi / dn);

  powers_.resize(n);
  inv_powers_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = double(k) / dn;
    // Direct polar evaluation keeps every power within a few ulps.
    powers_[k] = std::polar(std::pow(rho, t), phi * t);
    inv_powers_[k] = std::polar(std::pow(rho, -t), -phi * t);
  }
}

BlockVector scale(const EpsilonScaling& es, const BlockVector& v, ScaleDirection direction) {
  require_length(v.n(), es.n(), "scale");
  const auto& factors = direction == ScaleDirection::forward ? es.powers() : es.inv_powers();
  BlockVector out = v;
  for (std::size_t k = 0; k < out.n(); ++k) out[k] *= factors[k];
  return out;
}

}  // namespace btt
