#include "btt/exp_circulant.hpp"

#include <sstream>

#include "btt/dense_expm.hpp"
#include "btt/errors.hpp"
#include "btt/fft_transforms.hpp"
#include "btt/parallel.hpp"

namespace btt {

namespace {

void exponentiate_blocks(BlockVector& v) {
  parallel_for(v.n(), [&v](std::size_t i) { v[i] = expm_small(v[i]); });
}

// (1/n) F W
BlockVector inverse_step(const FourierPlan& plan, const BlockVector& w) {
  BlockVector r = block_idft(plan, w);
  const double inv_n = 1.0 / double(w.n());
  for (std::size_t i = 0; i < r.n(); ++i) r[i] *= inv_n;
  return r;
}

}  // namespace

BlockVector exp_eps_circulant(const BlockVector& u, Complex epsilon, EpsilonRange range) {
  if (!is_power_of_two(u.n())) throw DimensionError("exp_eps_circulant: n must be a power of two");
  if (epsilon == Complex(0.0, 0.0)) throw ValidationError("exp_eps_circulant: epsilon must be nonzero");
  if (range == EpsilonRange::unit_disk && std::abs(epsilon) > 1.0) {
    std::ostringstream os;
    os << "exp_eps_circulant: |epsilon| = " << std::abs(epsilon) << " exceeds 1";
    throw ValidationError(os.str());
  }

  const FourierPlan& plan = shared_plan(u.n());
  const EpsilonScaling es(epsilon, u.n());
  BlockVector v = block_conj_transform(plan, scale(es, u, ScaleDirection::forward));
  exponentiate_blocks(v);
  const BlockVector y = scale(es, inverse_step(plan, v), ScaleDirection::inverse);

  if (u.is_real() && epsilon.imag() == 0.0) return real_part_checked(y, "exp_eps_circulant");
  return y;
}

BlockVector exp_circulant(const BlockVector& u) {
  if (!is_power_of_two(u.n())) throw DimensionError("exp_circulant: n must be a power of two");
  const FourierPlan& plan = shared_plan(u.n());
  BlockVector v = block_conj_transform(plan, u);
  exponentiate_blocks(v);
  const BlockVector y = inverse_step(plan, v);
  if (u.is_real()) return real_part_checked(y, "exp_circulant");
  return y;
}

}  // namespace btt
