#include <doctest.h>

#include "btt/errors.hpp"
#include "btt/structured_mul.hpp"
#include "oracles.hpp"

using namespace btt;

namespace {

BlockVector scalars(Complex a, Complex b) {
  BlockVector v(2, 1);
  v[0](0, 0) = a;
  v[1](0, 0) = b;
  return v;
}

}  // namespace

TEST_CASE("identity operands") {
  const BlockVector x = oracle::random_block_vector(8, 2, 3);
  const BlockVector id = BlockVector::identity(8, 2);
  CHECK(oracle::max_abs_diff(circulant_times_vector(id, x), x) <= 1e-15);
  CHECK(oracle::max_abs_diff(btt_times_vector(id, x), x) <= 1e-15);
  CHECK(oracle::max_abs_diff(btt_times_btt(x, id), x) <= 1e-15);
  CHECK(oracle::max_abs_diff(circulant_times_circulant(x, id), x) <= 1e-15);
}

TEST_CASE("2 x 2 scalar products by hand") {
  const Complex a(1.5, 0.0);
  const Complex b(-0.5, 0.0);
  const Complex c(2.0, 0.0);
  const Complex d(3.0, 0.0);
  const BlockVector u = scalars(a, b);
  const BlockVector x = scalars(c, d);

  const BlockVector cv = circulant_times_vector(u, x);
  CHECK(std::abs(cv[0](0, 0) - (a * c + b * d)) <= 1e-15);
  CHECK(std::abs(cv[1](0, 0) - (b * c + a * d)) <= 1e-15);

  const BlockVector tv = btt_times_vector(u, x);
  CHECK(std::abs(tv[0](0, 0) - (a * c + b * d)) <= 1e-15);
  CHECK(std::abs(tv[1](0, 0) - a * d) <= 1e-15);

  const BlockVector tt = btt_times_btt(u, x);
  CHECK(std::abs(tt[0](0, 0) - a * c) <= 1e-15);
  CHECK(std::abs(tt[1](0, 0) - (a * d + b * c)) <= 1e-15);

  const BlockVector cc = circulant_times_circulant(u, x);
  CHECK(std::abs(cc[0](0, 0) - (a * c + b * d)) <= 1e-15);
  CHECK(std::abs(cc[1](0, 0) - (a * d + b * c)) <= 1e-15);
}

TEST_CASE("products against dense assembly") {
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 32u}) {
    for (std::size_t m : {1u, 2u, 3u}) {
      const BlockVector u = oracle::random_block_vector(n, m, 10 * n + m);
      const BlockVector x = oracle::random_block_vector(n, m, 1000 + 10 * n + m);
      const Eigen::MatrixXcd cu = oracle::dense_circulant(u);
      const Eigen::MatrixXcd tu = oracle::dense_btt(u);
      const Eigen::MatrixXcd xs = oracle::stack(x);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(oracle::max_abs_diff(circulant_times_vector(u, x), oracle::unstack(cu * xs, m)) <=
            1e-12);
      CHECK(oracle::max_abs_diff(btt_times_vector(u, x), oracle::unstack(tu * xs, m)) <= 1e-12);
      CHECK(oracle::max_abs_diff(btt_times_btt(u, x),
                                 oracle::first_block_row(tu * oracle::dense_btt(x), m)) <= 1e-12);
      CHECK(oracle::max_abs_diff(circulant_times_circulant(u, x),
                                 oracle::first_block_row(cu * oracle::dense_circulant(x), m)) <=
            1e-12);
    }
  }
}

TEST_CASE("real inputs give real outputs") {
  const BlockVector u = oracle::random_block_vector(8, 2, 1, false);
  const BlockVector x = oracle::random_block_vector(8, 2, 2, false);
  CHECK(circulant_times_vector(u, x).is_real());
  CHECK(btt_times_vector(u, x).is_real());
  CHECK(btt_times_btt(u, x).is_real());
  CHECK(circulant_times_circulant(u, x).is_real());
  CHECK_FALSE(btt_times_btt(oracle::random_block_vector(8, 2, 3), x).is_real());
}

TEST_CASE("linearity of the circulant product") {
  const BlockVector u = oracle::random_block_vector(16, 2, 5);
  const BlockVector x = oracle::random_block_vector(16, 2, 6);
  const BlockVector z = oracle::random_block_vector(16, 2, 7);
  const Complex al(0.7, -0.2);
  const Complex be(-1.3, 0.4);
  const BlockVector lhs = circulant_times_vector(u, scaled(x, al) + scaled(z, be));
  const BlockVector rhs =
      scaled(circulant_times_vector(u, x), al) + scaled(circulant_times_vector(u, z), be);
  CHECK(oracle::max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("associativity of the BTT product") {
  for (std::size_t n : {2u, 4u, 8u}) {
    const BlockVector a = oracle::random_block_vector(n, 2, 31 * n);
    const BlockVector b = oracle::random_block_vector(n, 2, 37 * n);
    const BlockVector c = oracle::random_block_vector(n, 2, 41 * n);
    CHECK(oracle::max_abs_diff(btt_times_btt(btt_times_btt(a, b), c),
                               btt_times_btt(a, btt_times_btt(b, c))) <= 1e-11);
  }
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(circulant_times_vector(BlockVector(4, 2), BlockVector(8, 2)), DimensionError);
  CHECK_THROWS_AS(btt_times_vector(BlockVector(4, 2), BlockVector(4, 3)), DimensionError);
  CHECK_THROWS_AS(btt_times_btt(BlockVector(3, 2), BlockVector(3, 2)), DimensionError);
  CHECK_THROWS_AS(circulant_times_circulant(BlockVector(6, 1), BlockVector(6, 1)),
                  DimensionError);
}
