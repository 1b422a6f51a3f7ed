#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bipres/firep_io.hpp"

// End-to-end checks of the command-line tool. The binary path comes from the
// BIPRES_CLI environment variable (set by ctest); the suite is skipped when
// it is absent so the test executable can still run standalone.

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* env = std::getenv("BIPRES_CLI");
  return env ? env : "";
}

std::string data_path(const std::string& name) {
  const char* env = std::getenv("BIPRES_TEST_DATA");
  REQUIRE(env != nullptr);
  return (fs::path(env) / name).string();
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "bipres_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& stdout_file) {
  std::string cmd = cli_path() + " " + args + " > " + stdout_file.string() + " 2> " +
                    (stdout_file.string() + ".err");
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli betti on the corner module") {
  if (cli_path().empty()) return;
  fs::path out = temp_dir() / "betti.txt";
  int code = run("betti --firep " + data_path("corner.firep"), out);
  CHECK(code == 0);
  CHECK(slurp(out) ==
        "betti v1\n"
        "beta0 1\n"
        "0 0 1\n"
        "beta1 2\n"
        "0 1 1\n"
        "1 0 1\n"
        "beta2 1\n"
        "1 1 1\n");
}

TEST_CASE("cli minimal presentation on the corner module") {
  if (cli_path().empty()) return;
  fs::path out = temp_dir() / "pres.txt";
  int code = run("presentation --minimal --firep " + data_path("corner.firep"), out);
  CHECK(code == 0);
  CHECK(slurp(out) ==
        "presentation v1\n"
        "p 2\n"
        "kind minimal\n"
        "rows=1 cols=2\n"
        "0 0\n"
        "0 1 ; 0:1\n"
        "1 0 ; 0:1\n");
}

TEST_CASE("cli hilbert on the corner module") {
  if (cli_path().empty()) return;
  fs::path out = temp_dir() / "hilbert.txt";
  int code = run("hilbert --firep " + data_path("corner.firep"), out);
  CHECK(code == 0);
  CHECK(slurp(out) ==
        "hilbert v1\n"
        "grid 2 2\n"
        "0 0 1\n"
        "0 1 0\n"
        "1 0 0\n"
        "1 1 0\n");
}

TEST_CASE("cli oracle check reports MATCH") {
  if (cli_path().empty()) return;
  fs::path out = temp_dir() / "oracle.txt";
  int code = run("oracle-check --firep " + data_path("corner.firep"), out);
  CHECK(code == 0);
  CHECK(slurp(out).rfind("MATCH\n", 0) == 0);
}

TEST_CASE("cli firep generation is deterministic and well-formed") {
  if (cli_path().empty()) return;
  fs::path out1 = temp_dir() / "a.firep";
  fs::path out2 = temp_dir() / "b.firep";
  std::string args = "firep --annulus 12 --seed 3 --radius 1 --degree 1 -o ";
  fs::path log = temp_dir() / "firep.log";
  CHECK(run(args + out1.string(), log) == 0);
  CHECK(run(args + out2.string(), log) == 0);
  std::string doc = slurp(out1);
  CHECK(doc == slurp(out2));

  bipres::FIRep fr = bipres::parse_firep(doc);
  CHECK(fr.d1.num_rows == 12);
  CHECK(fr.d1.num_cols() == 66);
  CHECK(fr.d2.num_cols() == 220);
}

TEST_CASE("cli betti is byte-identical across thread counts") {
  if (cli_path().empty()) return;
  fs::path fr = temp_dir() / "cloud.firep";
  fs::path log = temp_dir() / "cloud.log";
  CHECK(run("firep --annulus 15 --seed 9 --radius 1 --degree 1 -o " + fr.string(), log) == 0);
  fs::path one = temp_dir() / "betti_t1.txt";
  fs::path four = temp_dir() / "betti_t4.txt";
  CHECK(run("betti --threads 1 --firep " + fr.string(), one) == 0);
  CHECK(run("betti --threads 4 --firep " + fr.string(), four) == 0);
  CHECK(slurp(one) == slurp(four));
  // the lazy-heap backend produces the same bytes
  fs::path lazy = temp_dir() / "betti_lazy.txt";
  CHECK(run("betti --column-backend lazy-heap --firep " + fr.string(), lazy) == 0);
  CHECK(slurp(one) == slurp(lazy));
}

TEST_CASE("cli exit codes distinguish error classes") {
  if (cli_path().empty()) return;
  fs::path out = temp_dir() / "err.txt";
  CHECK(run("betti --firep /nonexistent/file.firep", out) == 3);

  fs::path bad = temp_dir() / "bad.firep";
  std::ofstream(bad) << "firep v1\np 2\nsizes 0 1 2\n0 1 ; 0:1\n1 0 ; 0:1\n0 0 ;\n";
  CHECK(run("betti --firep " + bad.string(), out) == 4);

  CHECK(run("nonsense-command", out) == 2);
  CHECK(run("betti", out) == 4);  // no input given
}
