#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "btt/block_linalg.hpp"

namespace btt {

/// Parameters of the synthetic subgenerator family.
///
/// Every entry of U_1..U_{n-1} and every off-diagonal entry of U_0 is
/// rate * r / (n m) with r uniform on [0, 1), and is zeroed independently
/// with probability 1 - density. Each diagonal entry of U_0 is minus the sum
/// of the other entries of its block-row, minus slack * (1/2 + r'). A row
/// with no positive entry gets diagonal -rate (1/2 + r') / (n m) so that the
/// diagonal stays negative.
///
/// With slack = 0 (and no empty row) T(U) has zero block-row sums; with
/// slack > 0 it is a strict subgenerator. The expected off-diagonal mass per
/// row is rate * density / 2, independent of n and m.
struct GeneratorParams {
  std::size_t n = 4;
  std::size_t m = 2;
  double density = 1.0;
  double slack = 0.0;
  double rate = 4.0;
  /// Blocks U_i with i >= bandwidth are zero; 0 means no band limit.
  std::size_t bandwidth = 0;
  std::uint64_t seed = 1;
};

/// Throws ValidationError for n or m = 0, density outside (0, 1], negative
/// slack, non-positive rate or bandwidth > n.
SubgeneratorSpec generate_subgenerator(const GeneratorParams& params);

SubgeneratorSpec random_subgenerator(std::size_t n, std::size_t m, double density, double slack,
                                     std::uint64_t seed);

/// random_subgenerator with U_i = 0 for i >= bandwidth (1 <= bandwidth <= n).
SubgeneratorSpec banded_subgenerator(std::size_t n, std::size_t m, std::size_t bandwidth,
                                     std::uint64_t seed);

/// Portable uniform stream: std::mt19937_64 (its output sequence is fixed by
/// the C++ standard) mapped to [0, 1) through the top 53 bits.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace btt
