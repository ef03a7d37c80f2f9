#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "btt/block_linalg.hpp"
#include "btt/dense_expm.hpp"
#include "btt/exp_btt.hpp"

namespace btt {

// Drivers behind the btt-expm subcommands. Each returns plain rows; the
// CSV writers put them out with 17 significant digits.

enum class ReferenceKind { oracle, embedding_pseudo_oracle };

struct Reference {
  BlockVector y;
  ReferenceKind kind;
};

/// Dense oracle when n m <= oracle_cap, else the embedding with
/// K = 8 * next_power_of_two(n).
Reference reference_solution(const SubgeneratorSpec& spec,
                             std::size_t oracle_cap = default_oracle_cap);

std::string reference_label(ReferenceKind kind);

/// Wall-clock seconds of one call.
template <class F>
double time_call(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct EpsilonSweepRow {
  double theta;
  std::size_t k;
  ErrorReport error;
  double wall_time;
};

/// eps_averaged for every (theta, k); theta may reach 1 and beyond.
std::vector<EpsilonSweepRow> sweep_epsilon(const SubgeneratorSpec& spec,
                                           const std::vector<double>& thetas,
                                           const std::vector<std::size_t>& ks,
                                           const Reference& reference, bool use_scaling = true);

struct KSweepRow {
  std::size_t K;
  ErrorReport error;
  double wall_time;
  /// f_K(sigma*) with sigma* minimizing g for `target` on the scaled problem.
  double fk_pred;
};

std::vector<KSweepRow> sweep_K(const SubgeneratorSpec& spec, const std::vector<std::size_t>& Ks,
                               const Reference& reference, bool use_scaling = true,
                               double target = 1e-12);

struct BenchRow {
  std::size_t n;
  std::string method;
  double wall_time;
};

struct BenchConfig {
  std::vector<std::size_t> ns{256, 512, 1024, 2048};
  std::size_t m = 2;
  /// Any of epc, avg, emb, taylor, dense.
  std::vector<std::string> methods{"epc", "emb", "taylor", "dense"};
  std::uint64_t seed = 1;
  /// The dense baseline runs only while n m <= dense_cap.
  std::size_t dense_cap = 1024;
  /// Minimum over this many timed runs.
  int repeats = 3;
};

/// Times each method on random_subgenerator(n, m, 1, 0, seed). Throws
/// ValidationError for an unknown method name.
std::vector<BenchRow> bench(const BenchConfig& config);

struct ValidationSummary {
  double alpha;
  double l_norm;
  int scaling_p;
  Complex epsilon_imaginary;
  Complex epsilon_real;
  std::size_t K;
  double target;
};

/// Parameter recommendations for the scaled problem.
ValidationSummary summarize(const SubgeneratorSpec& spec, double target = 1e-12);

void write_epsilon_sweep_csv(std::ostream& out, const std::vector<EpsilonSweepRow>& rows,
                             ReferenceKind kind);
void write_K_sweep_csv(std::ostream& out, const std::vector<KSweepRow>& rows, ReferenceKind kind);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace btt
