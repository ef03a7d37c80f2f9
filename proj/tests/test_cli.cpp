#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "btt/dense_expm.hpp"
#include "btt/io.hpp"
#include "btt/model_gen.hpp"
#include "oracles.hpp"

using namespace btt;
namespace fs = std::filesystem;

namespace {

const fs::path workdir = fs::temp_directory_path() / "btt_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(BTT_EXPM_EXE) + " " + args + " >" +
                          (workdir / "stdout.txt").string() + " 2>" +
                          (workdir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_input(const std::string& name, const BlockVector& u) {
  const fs::path p = workdir / name;
  write_block_vector_file(p, u);
  return p.string();
}

std::size_t data_lines(const std::string& text) {
  std::size_t count = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') ++count;
  return count;
}

struct Workdir {
  Workdir() { fs::create_directories(workdir); }
  ~Workdir() { fs::remove_all(workdir); }
};

}  // namespace

TEST_CASE("expm") {
  const Workdir wd;
  const auto spec = random_subgenerator(8, 2, 1.0, 0.0, 5);
  const std::string in = write_input("u.txt", spec.u());
  const std::string emb = (workdir / "emb.txt").string();
  const std::string tay = (workdir / "tay.txt").string();

  REQUIRE(run("expm " + in + " --method emb --K 64 --out " + emb) == 0);
  REQUIRE(run("expm " + in + " --method taylor --out " + tay) == 0);
  const BlockVector a = read_block_vector_file(emb);
  const BlockVector b = read_block_vector_file(tay);
  CHECK(error_report(a, b).nw_rel <= 1e-9);
  CHECK(error_report(b, oracle::btt_exponential(spec.u())).nw_rel <= 1e-9);
  CHECK(slurp(emb).find("# method=embedding") != std::string::npos);
  CHECK(slurp(emb).find("# K=64") != std::string::npos);

  SUBCASE("n = 1 for every method") {
    const auto one = random_subgenerator(1, 3, 1.0, 0.2, 9);
    const std::string in1 = write_input("one.txt", one.u());
    const Block want = expm_small(one.u()[0]);
    for (const char* method : {"epc", "avg", "emb", "taylor"}) {
      CAPTURE(method);
      REQUIRE(run(std::string("expm ") + in1 + " --method " + method) == 0);
      const BlockVector y = read_block_vector_file(workdir / "stdout.txt");
      CHECK((y[0] - want).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  SUBCASE("explicit epsilon") {
    CHECK(run("expm " + in + " --method epc --epsilon 1e-4i") == 0);
    CHECK(slurp(workdir / "stdout.txt").find("# epsilon=") != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  const Workdir wd;
  const auto spec = random_subgenerator(4, 2, 1.0, 0.0, 1);
  const std::string in = write_input("u.txt", spec.u());

  CHECK(run("expm " + (workdir / "missing.txt").string()) == 2);
  CHECK_FALSE(slurp(workdir / "stderr.txt").empty());
  CHECK(run("expm " + in + " --method bogus") == 2);
  CHECK(run("expm " + in + " --epsilon 1+x") == 2);
  CHECK(run("frobnicate") == 2);
  {
    std::ofstream bad(workdir / "bad.txt");
    bad << "btt v1 n=2 m=1\n1\n";
  }
  CHECK(run("expm " + (workdir / "bad.txt").string()) == 2);

  BlockVector pos(2, 1);
  pos[0](0, 0) = 1.0;
  CHECK(run("expm " + write_input("pos.txt", pos)) == 3);
  CHECK(run("expm " + in + " --method epc --epsilon 2i") == 3);
  CHECK(run("expm " + in + " --method emb --K 2") == 3);

  CHECK(run("expm " + in + " --method taylor --max-terms 2") == 4);
}

TEST_CASE("sweeps, validate and gen") {
  const Workdir wd;
  const std::string gen_out = (workdir / "gen.txt").string();
  REQUIRE(run("gen --n 8 --m 2 --seed 3 --out " + gen_out) == 0);
  const BlockVector u = read_block_vector_file(gen_out);
  CHECK(oracle::max_abs_diff(u, random_subgenerator(8, 2, 1.0, 0.0, 3).u()) == 0.0);

  REQUIRE(run("sweep-epsilon " + gen_out + " --theta 1e-1,1e-2,1e-3 --k 1,2") == 0);
  const std::string eps_csv = slurp(workdir / "stdout.txt");
  CHECK(eps_csv.rfind("# reference=oracle", 0) == 0);
  CHECK(data_lines(eps_csv) == 1 + 6);

  REQUIRE(run("sweep-epsilon " + gen_out + " --theta 1e-2 --k 1 --oracle-cap 4") == 0);
  CHECK(slurp(workdir / "stdout.txt").rfind("# reference=embedding-pseudo-oracle", 0) == 0);

  REQUIRE(run("sweep-K " + gen_out + " --K 8,16,32") == 0);
  CHECK(data_lines(slurp(workdir / "stdout.txt")) == 1 + 3);

  REQUIRE(run("--threads 2 bench --n 8,16 --m 2 --methods epc,emb --repeats 1") == 0);
  CHECK(data_lines(slurp(workdir / "stdout.txt")) == 1 + 4);
  CHECK(run("bench --n 8 --methods nope") == 3);

  REQUIRE(run("validate " + gen_out) == 0);
  const std::string summary = slurp(workdir / "stdout.txt");
  for (const char* key : {"alpha", "l_norm", "epsilon_imaginary", "epsilon_real", "K"})
    CHECK(summary.find(key) != std::string::npos);
}
