#include "btt/experiments.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>

#include "btt/errors.hpp"
#include "btt/io.hpp"
#include "btt/model_gen.hpp"

namespace btt {

Reference reference_solution(const SubgeneratorSpec& spec, std::size_t oracle_cap) {
  if (spec.n() * spec.m() <= oracle_cap) {
    return {expm_dense_oracle(spec, oracle_cap), ReferenceKind::oracle};
  }
  const std::size_t K = 8 * next_power_of_two(spec.n());
  return {exp_btt_embedding(spec, K).y, ReferenceKind::embedding_pseudo_oracle};
}

std::string reference_label(ReferenceKind kind) {
  return kind == ReferenceKind::oracle ? "oracle" : "embedding-pseudo-oracle";
}

std::vector<EpsilonSweepRow> sweep_epsilon(const SubgeneratorSpec& spec,
                                           const std::vector<double>& thetas,
                                           const std::vector<std::size_t>& ks,
                                           const Reference& reference, bool use_scaling) {
  std::vector<EpsilonSweepRow> rows;
  rows.reserve(thetas.size() * ks.size());
  for (const std::size_t k : ks) {
    for (const double theta : thetas) {
      BlockVector y(1, 1);
      const double t = time_call([&] {
        y = exp_btt_eps_averaged(spec, theta, k, use_scaling, EpsilonRange::unrestricted).y;
      });
      rows.push_back({theta, k, error_report(y, reference.y), t});
    }
  }
  return rows;
}

std::vector<KSweepRow> sweep_K(const SubgeneratorSpec& spec, const std::vector<std::size_t>& Ks,
                               const Reference& reference, bool use_scaling, double target) {
  const int p = use_scaling ? scaling_exponent(spec) : 0;
  const SubgeneratorSpec scaled = scaled_by_power_of_two(spec, p);
  const double sigma = optimal_embedding_sigma(scaled, target).sigma;

  std::vector<KSweepRow> rows;
  rows.reserve(Ks.size());
  for (const std::size_t K : Ks) {
    std::optional<ExpResult> res;
    const double t = time_call([&] { res = exp_btt_embedding(spec, K, use_scaling); });
    const std::size_t used = res->method_used.K.value_or(K);
    const double pred =
        embedding_bound_fK(scaled.alpha(), scaled.l_norm(), scaled.n(), used, sigma);
    rows.push_back({used, error_report(res->y, reference.y), t, pred});
  }
  return rows;
}

namespace {

// Minimum wall time over `repeats` runs, cut short once a second has been spent.
template <class F>
double best_time(int repeats, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  double spent = 0.0;
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    const double t = time_call(f);
    best = std::min(best, t);
    spent += t;
    if (spent > 1.0) break;
  }
  return best;
}

}  // namespace

std::vector<BenchRow> bench(const BenchConfig& config) {
  for (const auto& name : config.methods) {
    if (name != "epc" && name != "avg" && name != "emb" && name != "taylor" && name != "dense")
      throw ValidationError("bench: unknown method '" + name + "'");
  }
  std::vector<BenchRow> rows;
  for (const std::size_t n : config.ns) {
    const SubgeneratorSpec spec = random_subgenerator(n, config.m, 1.0, 0.0, config.seed);
    for (const auto& name : config.methods) {
      double t = 0.0;
      if (name == "dense") {
        if (n * config.m > config.dense_cap) continue;
        t = best_time(config.repeats, [&] { expm_dense_oracle(spec, config.dense_cap); });
      } else {
        MethodConfig mc;
        if (name == "epc") mc.method = Method::eps_circulant;
        if (name == "avg") {
          mc.method = Method::eps_averaged;
          mc.k = 4;
        }
        if (name == "emb") mc.method = Method::embedding;
        if (name == "taylor") mc.method = Method::taylor;
        t = best_time(config.repeats, [&] { expm_btt(spec, mc); });
      }
      rows.push_back({n, name, t});
    }
  }
  return rows;
}

ValidationSummary summarize(const SubgeneratorSpec& spec, double target) {
  const int p = scaling_exponent(spec);
  const SubgeneratorSpec scaled = scaled_by_power_of_two(spec, p);
  return {spec.alpha(),
          spec.l_norm(),
          p,
          select_epsilon(scaled, true),
          select_epsilon(scaled, false),
          select_embedding_K(scaled, target),
          target};
}

namespace {

void write_error_columns(std::ostream& out, const ErrorReport& e) {
  out << format_double(e.cw_abs) << ',' << format_double(e.cw_rel) << ','
      << format_double(e.nw_abs) << ',' << format_double(e.nw_rel);
}

}  // namespace

void write_epsilon_sweep_csv(std::ostream& out, const std::vector<EpsilonSweepRow>& rows,
                             ReferenceKind kind) {
  out << "# reference=" << reference_label(kind) << '\n';
  out << "theta,k,cw_abs,cw_rel,nw_abs,nw_rel,wall_time\n";
  for (const auto& r : rows) {
    out << format_double(r.theta) << ',' << r.k << ',';
    write_error_columns(out, r.error);
    out << ',' << format_double(r.wall_time) << '\n';
  }
}

void write_K_sweep_csv(std::ostream& out, const std::vector<KSweepRow>& rows, ReferenceKind kind) {
  out << "# reference=" << reference_label(kind) << '\n';
  out << "K,cw_abs,cw_rel,nw_abs,nw_rel,wall_time,fK_pred\n";
  for (const auto& r : rows) {
    out << r.K << ',';
    write_error_columns(out, r.error);
    out << ',' << format_double(r.wall_time) << ',' << format_double(r.fk_pred) << '\n';
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,method,wall_time\n";
  for (const auto& r : rows) out << r.n << ',' << r.method << ',' << format_double(r.wall_time) << '\n';
}

}  // namespace btt
