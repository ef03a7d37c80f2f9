#include "btt/model_gen.hpp"

#include <sstream>

#include "btt/errors.hpp"

namespace btt {

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() { return double(engine_() >> 11) * 0x1.0p-53; }

SubgeneratorSpec generate_subgenerator(const GeneratorParams& p) {
  if (p.n == 0 || p.m == 0) throw ValidationError("generator: n and m must be positive");
  if (!(p.density > 0.0 && p.density <= 1.0))
    throw ValidationError("generator: density must lie in (0, 1]");
  if (!(p.slack >= 0.0)) throw ValidationError("generator: slack must be nonnegative");
  if (!(p.rate > 0.0)) throw ValidationError("generator: rate must be positive");
  if (p.bandwidth > p.n) throw ValidationError("generator: bandwidth exceeds n");

  const std::size_t band = p.bandwidth == 0 ? p.n : p.bandwidth;
  const double unit = p.rate / double(p.n * p.m);
  const auto m = static_cast<Eigen::Index>(p.m);
  UniformStream rng(p.seed);

  // Draw order is fixed: block by block, row-major, one value for the
  // magnitude then one for the density mask.
  auto draw = [&] {
    const double value = unit * rng.next();
    const bool keep = rng.next() < p.density;
    return keep ? value : 0.0;
  };

  BlockVector u(p.n, p.m);
  for (std::size_t h = 0; h < band; ++h) {
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index s = 0; s < m; ++s)
        if (h != 0 || r != s) u[h](r, s) = draw();
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    double others = 0.0;
    for (std::size_t h = 0; h < band; ++h) others += u[h].row(r).real().sum();
    const double extra = 0.5 + rng.next();
    const double diag = others > 0.0 ? -others - p.slack * extra : -unit * extra - p.slack * extra;
    u[0](r, r) = diag;
  }
  return validate_subgenerator(u);
}

SubgeneratorSpec random_subgenerator(std::size_t n, std::size_t m, double density, double slack,
                                     std::uint64_t seed) {
  GeneratorParams p;
  p.n = n;
  p.m = m;
  p.density = density;
  p.slack = slack;
  p.seed = seed;
  return generate_subgenerator(p);
}

SubgeneratorSpec banded_subgenerator(std::size_t n, std::size_t m, std::size_t bandwidth,
                                     std::uint64_t seed) {
  if (bandwidth < 1 || bandwidth > n)
    throw ValidationError("banded_subgenerator: bandwidth must lie in [1, n]");
  GeneratorParams p;
  p.n = n;
  p.m = m;
  p.bandwidth = bandwidth;
  p.seed = seed;
  return generate_subgenerator(p);
}

}  // namespace btt
