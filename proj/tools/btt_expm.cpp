#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btt/block_linalg.hpp"
#include "btt/dense_expm.hpp"
#include "btt/errors.hpp"
#include "btt/exp_btt.hpp"
#include "btt/experiments.hpp"
#include "btt/io.hpp"
#include "btt/model_gen.hpp"
#include "btt/parallel.hpp"

namespace {

constexpr int exit_parse = 2;
constexpr int exit_validation = 3;
constexpr int exit_numerical = 4;

struct MethodFlags {
  std::string method = "embedding";
  std::string epsilon = "auto";
  double theta = 1e-2;
  std::size_t k = 1;
  std::size_t K = 0;
  double tol = 1e-15;
  int max_terms = 200;
  bool no_scaling = false;
};

void add_method_flags(CLI::App* cmd, MethodFlags& f) {
  cmd->add_option("--method", f.method,
                  "eps_circulant|epc, eps_averaged|avg, embedding|emb, taylor")
      ->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "epsilon as a+bi, or 'auto'")->capture_default_str();
  cmd->add_option("--theta", f.theta, "|epsilon| of the averaged method")->capture_default_str();
  cmd->add_option("--k", f.k, "averaging points")->capture_default_str();
  cmd->add_option("--K", f.K, "embedding size (default: chosen from the error bound)");
  cmd->add_option("--tol", f.tol, "Taylor stopping tolerance")->capture_default_str();
  cmd->add_option("--max-terms", f.max_terms, "Taylor term limit")->capture_default_str();
  cmd->add_flag("--no-scaling", f.no_scaling, "skip scaling and squaring");
}

btt::MethodConfig to_config(const MethodFlags& f) {
  btt::MethodConfig c;
  const auto method = btt::parse_method(f.method);
  if (!method) throw btt::ParseError("unknown method '" + f.method + "'");
  c.method = *method;
  if (f.epsilon != "auto") c.epsilon = btt::parse_complex(f.epsilon);
  c.theta_mag = f.theta;
  c.k = f.k;
  if (f.K > 0) c.K = f.K;
  c.taylor_tol = f.tol;
  c.max_terms = f.max_terms;
  c.use_scaling = !f.no_scaling;
  return c;
}

// Writes to `path`, or stdout for "" and "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw btt::ParseError("cannot write '" + path + "'");
  write(out);
  if (!out) throw btt::ParseError("write to '" + path + "' failed");
}

std::vector<std::string> result_metadata(const btt::ExpResult& r) {
  const auto& c = r.method_used;
  std::vector<std::string> meta;
  meta.push_back("method=" + std::string(btt::method_name(c.method)));
  meta.push_back("scaling_p=" + std::to_string(r.scaling_p));
  switch (c.method) {
    case btt::Method::eps_circulant:
      meta.push_back("epsilon=" + btt::format_complex(c.epsilon.value_or(0.0)));
      break;
    case btt::Method::eps_averaged:
      meta.push_back("theta=" + btt::format_double(c.theta_mag));
      meta.push_back("k=" + std::to_string(c.k));
      break;
    case btt::Method::embedding:
      meta.push_back("K=" + std::to_string(c.K.value_or(0)));
      break;
    case btt::Method::taylor:
      meta.push_back("tol=" + btt::format_double(c.taylor_tol));
      meta.push_back("taylor_terms=" + std::to_string(r.taylor_terms));
      break;
  }
  if (r.predicted_bounds) {
    if (r.predicted_bounds->approximation)
      meta.push_back("bound_approximation=" +
                     btt::format_double(*r.predicted_bounds->approximation));
    if (r.predicted_bounds->roundoff)
      meta.push_back("bound_roundoff=" + btt::format_double(*r.predicted_bounds->roundoff));
  }
  return meta;
}

btt::SubgeneratorSpec load_spec(const std::string& path) {
  return btt::validate_subgenerator(btt::read_block_vector_file(path));
}

std::vector<double> default_thetas() {
  std::vector<double> t;
  for (int i = 20; i >= 0; --i) t.push_back(std::pow(10.0, -0.5 * i));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponentials of block-triangular block-Toeplitz subgenerators"};
  app.require_subcommand(1);

  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads")
      ->envname("BTT_EXPM_THREADS")
      ->check(CLI::PositiveNumber);

  std::string input;
  std::string out;
  std::size_t oracle_cap = btt::default_oracle_cap;

  MethodFlags mflags;
  auto* expm = app.add_subcommand("expm", "first block-row of exp(T(U))");
  expm->add_option("input", input, "block-vector file")->required();
  add_method_flags(expm, mflags);
  expm->add_option("--out", out, "output file (default stdout)");

  std::vector<double> thetas = default_thetas();
  std::vector<std::size_t> ks{1, 2, 4};
  auto* sweep_eps = app.add_subcommand("sweep-epsilon", "error of averaged eps-circulant vs theta");
  sweep_eps->add_option("input", input, "block-vector file")->required();
  sweep_eps->add_option("--theta", thetas, "theta grid")->delimiter(',');
  sweep_eps->add_option("--k", ks, "averaging points")->delimiter(',');
  sweep_eps->add_flag("--no-scaling", mflags.no_scaling, "skip scaling and squaring");
  sweep_eps->add_option("--oracle-cap", oracle_cap, "largest n m for the dense oracle")
      ->capture_default_str();
  sweep_eps->add_option("--out", out, "CSV file (default stdout)");

  std::vector<std::size_t> Ks;
  double target = 1e-12;
  auto* sweep_k = app.add_subcommand("sweep-K", "error of the embedding vs K");
  sweep_k->add_option("input", input, "block-vector file")->required();
  sweep_k->add_option("--K", Ks, "embedding sizes (default n, 2n, ..., 32n)")->delimiter(',');
  sweep_k->add_option("--target", target, "target error fixing sigma for fK_pred")
      ->capture_default_str();
  sweep_k->add_flag("--no-scaling", mflags.no_scaling, "skip scaling and squaring");
  sweep_k->add_option("--oracle-cap", oracle_cap, "largest n m for the dense oracle")
      ->capture_default_str();
  sweep_k->add_option("--out", out, "CSV file (default stdout)");

  btt::BenchConfig bconf;
  auto* bench = app.add_subcommand("bench", "wall time vs n");
  bench->add_option("--n", bconf.ns, "block counts")->delimiter(',')->capture_default_str();
  bench->add_option("--m", bconf.m, "block order")->capture_default_str();
  bench->add_option("--methods", bconf.methods, "epc, avg, emb, taylor, dense")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--seed", bconf.seed, "generator seed")->capture_default_str();
  bench->add_option("--oracle-cap", bconf.dense_cap, "largest n m for the dense baseline")
      ->capture_default_str();
  bench->add_option("--repeats", bconf.repeats, "timed runs per point (minimum kept)")
      ->capture_default_str();
  bench->add_option("--out", out, "CSV file (default stdout)");

  auto* validate = app.add_subcommand("validate", "check a subgenerator, recommend parameters");
  validate->add_option("input", input, "block-vector file")->required();

  btt::GeneratorParams gp;
  auto* gen = app.add_subcommand("gen", "write a random subgenerator");
  gen->add_option("--n", gp.n, "number of blocks")->capture_default_str();
  gen->add_option("--m", gp.m, "block order")->capture_default_str();
  gen->add_option("--density", gp.density, "fraction of nonzero entries")->capture_default_str();
  gen->add_option("--slack", gp.slack, "row-sum deficit")->capture_default_str();
  gen->add_option("--rate", gp.rate, "entry scale")->capture_default_str();
  gen->add_option("--bandwidth", gp.bandwidth, "nonzero blocks (0 = all)")->capture_default_str();
  gen->add_option("--seed", gp.seed, "generator seed")->capture_default_str();
  gen->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }

  try {
    btt::set_max_threads(threads);

    if (expm->parsed()) {
      const auto spec = load_spec(input);
      const auto result = btt::expm_btt(spec, to_config(mflags));
      with_output(out, [&](std::ostream& os) {
        btt::write_block_vector(os, result.y, result_metadata(result));
      });
    } else if (sweep_eps->parsed()) {
      const auto spec = load_spec(input);
      const auto ref = btt::reference_solution(spec, oracle_cap);
      const auto rows = btt::sweep_epsilon(spec, thetas, ks, ref, !mflags.no_scaling);
      with_output(out,
                  [&](std::ostream& os) { btt::write_epsilon_sweep_csv(os, rows, ref.kind); });
    } else if (sweep_k->parsed()) {
      const auto spec = load_spec(input);
      if (Ks.empty()) {
        const std::size_t n = btt::next_power_of_two(spec.n());
        for (std::size_t f = 1; f <= 32; f *= 2) Ks.push_back(f * n);
      }
      const auto ref = btt::reference_solution(spec, oracle_cap);
      const auto rows = btt::sweep_K(spec, Ks, ref, !mflags.no_scaling, target);
      with_output(out, [&](std::ostream& os) { btt::write_K_sweep_csv(os, rows, ref.kind); });
    } else if (bench->parsed()) {
      const auto rows = btt::bench(bconf);
      with_output(out, [&](std::ostream& os) { btt::write_bench_csv(os, rows); });
    } else if (validate->parsed()) {
      const auto spec = load_spec(input);
      const auto s = btt::summarize(spec);
      std::cout << "valid subgenerator n=" << spec.n() << " m=" << spec.m() << '\n'
                << "alpha=" << btt::format_double(s.alpha) << '\n'
                << "l_norm=" << btt::format_double(s.l_norm) << '\n'
                << "scaling_p=" << s.scaling_p << '\n'
                << "epsilon_imaginary=" << btt::format_complex(s.epsilon_imaginary) << '\n'
                << "epsilon_real=" << btt::format_complex(s.epsilon_real) << '\n'
                << "K=" << s.K << " (target " << btt::format_double(s.target) << ")\n";
    } else if (gen->parsed()) {
      const auto spec = btt::generate_subgenerator(gp);
      std::ostringstream note;
      note << "gen n=" << gp.n << " m=" << gp.m << " density=" << gp.density
           << " slack=" << gp.slack << " rate=" << gp.rate << " bandwidth=" << gp.bandwidth
           << " seed=" << gp.seed;
      with_output(out,
                  [&](std::ostream& os) { btt::write_block_vector(os, spec.u(), {note.str()}); });
    }
  } catch (const btt::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_parse;
  } catch (const btt::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_validation;
  } catch (const btt::DimensionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_validation;
  } catch (const btt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
  return 0;
}
