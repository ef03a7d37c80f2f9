#include "btt/exp_btt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "btt/errors.hpp"
#include "btt/parallel.hpp"
#include "btt/structured_mul.hpp"

namespace btt {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::eps_circulant: return "eps_circulant";
    case Method::eps_averaged: return "eps_averaged";
    case Method::embedding: return "embedding";
    case Method::taylor: return "taylor";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "eps_circulant" || name == "epc") return Method::eps_circulant;
  if (name == "eps_averaged" || name == "avg" || name == "averaged") return Method::eps_averaged;
  if (name == "embedding" || name == "emb") return Method::embedding;
  if (name == "taylor") return Method::taylor;
  return std::nullopt;
}

int scaling_exponent(double alpha) {
  if (!(alpha > 1.0)) return 0;
  return static_cast<int>(std::floor(std::log2(alpha))) + 1;
}

int scaling_exponent(const SubgeneratorSpec& spec) { return scaling_exponent(spec.alpha()); }

BlockVector repeated_squaring(BlockVector y, int p) {
  if (p < 0) throw ValidationError("repeated_squaring: p must be nonnegative");
  for (int i = 0; i < p; ++i) y = btt_times_btt(y, y);
  return y;
}

namespace {

// The subgenerator with U zero-padded to a power-of-two length.
SubgeneratorSpec padded(const SubgeneratorSpec& spec) {
  if (is_power_of_two(spec.n())) return spec;
  return validate_subgenerator(resized(spec.u(), next_power_of_two(spec.n())),
                               std::numeric_limits<double>::infinity());
}

BlockVector finish(const BlockVector& y, int p, std::size_t n) {
  BlockVector out = repeated_squaring(y, p);
  return out.n() == n ? out : resized(out, n);
}

void check_epsilon(Complex epsilon, EpsilonRange range, const char* what) {
  const double r = std::abs(epsilon);
  if (!std::isfinite(r) || r == 0.0) {
    throw ValidationError(std::string(what) + ": epsilon must be finite and nonzero");
  }
  if (range == EpsilonRange::unit_disk && !(r < 1.0)) {
    throw ValidationError(std::string(what) + ": |epsilon| must be below 1");
  }
}

// Golden-section minimization of f over [lo, hi], bracketed first by a scan
// of `grid` equispaced points. Returns {argmin, min}.
std::pair<double, double> minimize_1d(const std::function<double(double)>& f, double lo,
                                      double hi) {
  constexpr int grid = 200;
  constexpr int iterations = 200;
  const double h = (hi - lo) / (grid - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = f(lo + h * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (!std::isfinite(best_value)) return {lo + h * best, best_value};

  double a = lo + h * std::max(best - 1, 0);
  double b = lo + h * std::min(best + 1, grid - 1);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = fc < fd ? c : d;
  const double fx = std::min(fc, fd);
  if (fx <= best_value) return {x, fx};
  return {lo + h * best, best_value};
}

// log(sigma) = 10^t for t in [-6, 1].
constexpr double log_sigma_lo = -6.0;
constexpr double log_sigma_hi = 1.0;

double sigma_of(double t) { return std::exp(std::pow(10.0, t)); }

double spectral_radius_upper_estimate(const Eigen::MatrixXd& a) {
  // Collatz-Wielandt: for x > 0, max_i (A x)_i / x_i >= rho(A) when A >= 0.
  const Eigen::Index m = a.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 50; ++it) {
    const Eigen::VectorXd ax = a * x;
    best = std::min(best, (ax.array() / x.array()).maxCoeff());
    const double top = ax.maxCoeff();
    if (top <= 0.0) return 0.0;
    x = ax / top;
    x.array() += 1e-12;
  }
  return best;
}

}  // namespace

ExpResult exp_btt_eps(const SubgeneratorSpec& spec, Complex epsilon, bool use_scaling,
                      EpsilonRange range) {
  check_epsilon(epsilon, range, "exp_btt_eps");
  const SubgeneratorSpec work = padded(spec);
  const int p = use_scaling ? scaling_exponent(work) : 0;
  const SubgeneratorSpec s = scaled_by_power_of_two(work, p);

  const BlockVector y = real_part(exp_eps_circulant(s.u(), epsilon, EpsilonRange::unrestricted));

  ExpResult result{finish(y, p, spec.n()), {}, p, std::nullopt, 0};
  result.method_used.method = Method::eps_circulant;
  result.method_used.epsilon = epsilon;
  result.method_used.use_scaling = use_scaling;
  result.method_used.epsilon_range = range;
  const auto c = RoundoffConstants::for_block_order(s.m());
  result.predicted_bounds = PredictedBounds{
      eps_approx_bound(s.l_norm(), epsilon),
      eps_circulant_roundoff_bound(std::abs(epsilon), s.n(), s.m(), s.max_abs_entry(), 1.0, c)};
  return result;
}

ExpResult exp_btt_eps_averaged(const SubgeneratorSpec& spec, double theta_mag, std::size_t k,
                               bool use_scaling, EpsilonRange range) {
  if (k == 0) throw ValidationError("exp_btt_eps_averaged: k must be at least 1");
  if (!(theta_mag > 0.0) || !std::isfinite(theta_mag))
    throw ValidationError("exp_btt_eps_averaged: theta must be positive and finite");
  if (range == EpsilonRange::unit_disk && !(theta_mag < 1.0))
    throw ValidationError("exp_btt_eps_averaged: theta must be below 1");

  const SubgeneratorSpec work = padded(spec);
  const int p = use_scaling ? scaling_exponent(work) : 0;
  const SubgeneratorSpec s = scaled_by_power_of_two(work, p);

  const double dk = double(k);
  const Complex root_of_i = std::polar(1.0, std::numbers::pi / (2.0 * dk));
  std::vector<BlockVector> runs(k, BlockVector(s.n(), s.m()));
  parallel_for(k, [&](std::size_t j) {
    const Complex eps =
        root_of_i * std::polar(theta_mag, 2.0 * std::numbers::pi * double(j) / dk);
    runs[j] = exp_eps_circulant(s.u(), eps, EpsilonRange::unrestricted);
  });
  BlockVector sum = runs[0];
  for (std::size_t j = 1; j < k; ++j) sum = sum + runs[j];
  const BlockVector y = real_part(scaled(sum, 1.0 / dk));

  ExpResult result{finish(y, p, spec.n()), {}, p, std::nullopt, 0};
  result.method_used.method = Method::eps_averaged;
  result.method_used.theta_mag = theta_mag;
  result.method_used.k = k;
  result.method_used.use_scaling = use_scaling;
  result.method_used.epsilon_range = range;
  const auto c = RoundoffConstants::for_block_order(s.m());
  PredictedBounds bounds;
  if (k == 1) bounds.approximation = eps_approx_bound(s.l_norm(), Complex(0.0, theta_mag));
  bounds.roundoff =
      eps_circulant_roundoff_bound(theta_mag, s.n(), s.m(), s.max_abs_entry(), 1.0, c);
  result.predicted_bounds = bounds;
  return result;
}

ExpResult exp_btt_embedding(const SubgeneratorSpec& spec, std::size_t K, bool use_scaling) {
  if (K < spec.n()) {
    std::ostringstream os;
    os << "exp_btt_embedding: K = " << K << " is smaller than n = " << spec.n();
    throw ValidationError(os.str());
  }
  const SubgeneratorSpec work = padded(spec);
  const std::size_t k_eff = next_power_of_two(std::max(K, work.n()));
  const int p = use_scaling ? scaling_exponent(work) : 0;
  const SubgeneratorSpec s = scaled_by_power_of_two(work, p);

  const BlockVector big = exp_circulant(resized(s.u(), k_eff));
  const BlockVector y = resized(big, s.n());

  ExpResult result{finish(y, p, spec.n()), {}, p, std::nullopt, 0};
  result.method_used.method = Method::embedding;
  result.method_used.K = k_eff;
  result.method_used.use_scaling = use_scaling;
  const auto c = RoundoffConstants::for_block_order(s.m());
  result.predicted_bounds = PredictedBounds{
      min_embedding_bound(s.alpha(), s.l_norm(), s.n(), k_eff).value,
      circulant_roundoff_bound(k_eff, s.m(), s.max_abs_entry(), 1.0, c)};
  return result;
}

ExpResult exp_btt_taylor(const SubgeneratorSpec& spec, double tol, int max_terms,
                         bool use_scaling, bool spectral_radius_estimate) {
  if (!(tol > 0.0)) throw ValidationError("exp_btt_taylor: tol must be positive");
  if (max_terms < 1) throw ValidationError("exp_btt_taylor: max_terms must be at least 1");

  const SubgeneratorSpec work = padded(spec);
  const std::size_t n = work.n();
  const std::size_t m = work.m();
  const double alpha = work.alpha();

  BlockVector u_hat = work.u();
  u_hat[0] += alpha * Block::Identity(Eigen::Index(m), Eigen::Index(m));
  const Eigen::MatrixXd u0_hat = u_hat[0].real();
  const double rho = spectral_radius_estimate
                         ? spectral_radius_upper_estimate(u0_hat)
                         : u0_hat.cwiseAbs().rowwise().sum().maxCoeff();
  int p = 0;
  if (use_scaling && rho >= 1.0) p = static_cast<int>(std::floor(std::log2(rho))) + 1;

  const BlockVector v = scaled(u_hat, std::ldexp(1.0, -p));
  BlockVector y = v;
  y[0] += Block::Identity(Eigen::Index(m), Eigen::Index(m));
  BlockVector w = v;
  int terms = 1;
  bool converged = block_row_inf_norm(w) < tol * block_row_inf_norm(y);
  for (int r = 2; r <= max_terms && !converged; ++r) {
    w = btt_times_btt(v, scaled(w, 1.0 / double(r)));
    // Every exact term is nonnegative; clear negative roundoff.
    for (std::size_t h = 0; h < n; ++h) w[h].real() = w[h].real().cwiseMax(0.0);
    y = y + w;
    terms = r;
    converged = block_row_inf_norm(w) < tol * block_row_inf_norm(y);
  }
  if (!converged) {
    std::ostringstream os;
    os << "exp_btt_taylor: no convergence within " << max_terms << " terms";
    throw NumericalError(os.str());
  }

  y = scaled(y, std::exp(-alpha * std::ldexp(1.0, -p)));

  ExpResult result{finish(y, p, spec.n()), {}, p, std::nullopt, terms};
  result.method_used.method = Method::taylor;
  result.method_used.taylor_tol = tol;
  result.method_used.max_terms = max_terms;
  result.method_used.use_scaling = use_scaling;
  result.method_used.spectral_radius_estimate = spectral_radius_estimate;
  return result;
}

ExpResult expm_btt(const SubgeneratorSpec& spec, const MethodConfig& config) {
  switch (config.method) {
    case Method::eps_circulant: {
      Complex eps;
      if (config.epsilon) {
        eps = *config.epsilon;
      } else {
        const int p = config.use_scaling ? scaling_exponent(spec) : 0;
        eps = select_epsilon(scaled_by_power_of_two(padded(spec), p), true);
      }
      return exp_btt_eps(spec, eps, config.use_scaling, config.epsilon_range);
    }
    case Method::eps_averaged:
      return exp_btt_eps_averaged(spec, config.theta_mag, config.k, config.use_scaling,
                                  config.epsilon_range);
    case Method::embedding: {
      std::size_t K = 0;
      if (config.K) {
        K = *config.K;
      } else {
        const int p = config.use_scaling ? scaling_exponent(spec) : 0;
        K = select_embedding_K(scaled_by_power_of_two(padded(spec), p), config.embedding_target);
      }
      return exp_btt_embedding(spec, K, config.use_scaling);
    }
    case Method::taylor:
      return exp_btt_taylor(spec, config.taylor_tol, config.max_terms, config.use_scaling,
                            config.spectral_radius_estimate);
  }
  throw ValidationError("expm_btt: unknown method");
}

Complex select_epsilon(const SubgeneratorSpec& spec, bool imaginary, double mu,
                       std::optional<double> tau) {
  if (!(mu > 0.0)) throw ValidationError("select_epsilon: mu must be positive");
  if (spec.l_norm() == 0.0) return Complex(0.0, std::cbrt(mu));
  RoundoffConstants c = RoundoffConstants::for_block_order(spec.m());
  c.mu = mu;
  if (tau) c.tau = *tau;
  const std::size_t n = next_power_of_two(spec.n());
  const double m = double(spec.m());
  const double phi = phi_bound(n, spec.m(), spec.max_abs_entry(), 1.0, c);
  const double l = spec.l_norm();
  double mag = imaginary ? std::cbrt(m * mu * phi / (l * l)) : std::sqrt(m * mu * phi / l);
  mag = std::min(mag, 0.5);
  return imaginary ? Complex(0.0, mag) : Complex(mag, 0.0);
}

SigmaChoice optimal_embedding_sigma(const SubgeneratorSpec& spec, double target_error) {
  if (!(target_error > 0.0))
    throw ValidationError("optimal_embedding_sigma: target error must be positive");
  const double alpha = spec.alpha();
  const double l = spec.l_norm();
  const std::size_t n = spec.n();
  auto g = [&](double t) { return embedding_g(alpha, l, n, target_error, sigma_of(t)); };
  const auto [t, value] = minimize_1d(g, log_sigma_lo, log_sigma_hi);
  return {sigma_of(t), value};
}

std::size_t select_embedding_K(const SubgeneratorSpec& spec, double target_error) {
  if (!(target_error > 0.0))
    throw ValidationError("select_embedding_K: target error must be positive");
  const std::size_t floor_k = next_power_of_two(spec.n());
  if (spec.l_norm() == 0.0) return floor_k;
  const double g = optimal_embedding_sigma(spec, target_error).value;
  if (!std::isfinite(g) || g >= 0x1p62) throw NumericalError("select_embedding_K: K overflows");
  std::size_t k = 1;
  while (double(k) <= g) k <<= 1;
  return std::max(k, floor_k);
}

SigmaChoice min_embedding_bound(double alpha, double l_norm, std::size_t n, std::size_t K) {
  if (K < n) throw ValidationError("min_embedding_bound: K must be at least n");
  if (l_norm == 0.0) return {sigma_of(log_sigma_hi), 0.0};
  auto log_f = [&](double t) {
    const double f = embedding_bound_fK(alpha, l_norm, n, K, sigma_of(t));
    return f > 0.0 ? std::log(f) : -std::numeric_limits<double>::infinity();
  };
  const auto [t, value] = minimize_1d(log_f, log_sigma_lo, log_sigma_hi);
  return {sigma_of(t), std::exp(value)};
}

}  // namespace btt
