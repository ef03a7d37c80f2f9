#include "btt/structured_mul.hpp"

#include "btt/errors.hpp"
#include "btt/fft_transforms.hpp"

namespace btt {

namespace {

void check_operands(const BlockVector& u, const BlockVector& x, const char* what) {
  if (u.n() != x.n() || u.m() != x.m())
    throw DimensionError(std::string(what) + ": operands differ in n or m");
  if (!is_power_of_two(u.n()))
    throw DimensionError(std::string(what) + ": n must be a power of two");
}

// C(U) = F diag(F U) F^{-1} with F^{-1} = (1/n) F^H.
BlockVector circulant_product_raw(const BlockVector& u, const BlockVector& x) {
  const FourierPlan& plan = shared_plan(u.n());
  const BlockVector eig = block_idft(plan, u);
  BlockVector w = block_dft(plan, x);
  for (std::size_t i = 0; i < w.n(); ++i) w[i] = eig[i] * w[i];
  return block_idft(plan, w);
}

BlockVector btt_product_raw(const BlockVector& u, const BlockVector& x) {
  const std::size_t n = u.n();
  const BlockVector y = circulant_product_raw(resized(u, 2 * n), resized(x, 2 * n));
  return resized(y, n);
}

BlockVector finish(BlockVector y, bool real_inputs, const char* what) {
  return real_inputs ? real_part_checked(y, what) : y;
}

}  // namespace

BlockVector circulant_times_vector(const BlockVector& u, const BlockVector& x) {
  check_operands(u, x, "circulant_times_vector");
  return finish(circulant_product_raw(u, x), u.is_real() && x.is_real(), "circulant_times_vector");
}

BlockVector btt_times_vector(const BlockVector& u, const BlockVector& x) {
  check_operands(u, x, "btt_times_vector");
  return finish(btt_product_raw(u, x), u.is_real() && x.is_real(), "btt_times_vector");
}

// The last block-column of T(X) is reversed(X), and T(U) maps it to the last
// block-column of the product; the same holds for circulants.
BlockVector btt_times_btt(const BlockVector& u, const BlockVector& x) {
  check_operands(u, x, "btt_times_btt");
  const BlockVector y = reversed(btt_product_raw(u, reversed(x)));
  return finish(y, u.is_real() && x.is_real(), "btt_times_btt");
}

BlockVector circulant_times_circulant(const BlockVector& u, const BlockVector& x) {
  check_operands(u, x, "circulant_times_circulant");
  const BlockVector y = reversed(circulant_product_raw(u, reversed(x)));
  return finish(y, u.is_real() && x.is_real(), "circulant_times_circulant");
}

}  // namespace btt
