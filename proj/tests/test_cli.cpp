#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "drss/csv.hpp"

using namespace drss;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("drss_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// Runs the installed binary and returns its exit status.
int run_cli(const std::string& args) {
  const std::string cmd = std::string(DRSS_CLI_PATH) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("run subcommand produces deterministic csv output") {
  ScratchDir dir("run");
  const fs::path config = dir.path / "exp.cfg";
  write_file_atomic(config,
                    "n=4\nt_pk=3\nseed=99\nbatch_size=30\n# comment\n");

  const std::string a = (dir.path / "a").string();
  const std::string b = (dir.path / "b").string();
  CHECK(run_cli("run --config " + config.string() + " --out " + a) == 0);
  CHECK(run_cli("run --config " + config.string() + " --out " + b) == 0);

  const CsvTable first = read_csv_file(dir.path / "a" / "runs.csv");
  const CsvTable second = read_csv_file(dir.path / "b" / "runs.csv");
  CHECK(first.rows().size() == 30);
  CHECK(csv_equal_deterministic(first, second));

  // A different seed changes the data.
  const std::string c = (dir.path / "c").string();
  CHECK(run_cli("run --config " + config.string() + " --seed 100 --out " +
                c) == 0);
  CHECK_FALSE(csv_equal_deterministic(
      first, read_csv_file(dir.path / "c" / "runs.csv")));
}

TEST_CASE("sweep and leakage subcommands emit csv plus svg") {
  ScratchDir dir("sweep");
  const std::string out = dir.path.string();
  CHECK(run_cli("sweep --case3 --batch 25 --seed 5 --out " + out) == 0);
  CHECK(fs::exists(dir.path / "sweep_case3.csv"));
  CHECK(fs::exists(dir.path / "sweep_case3.svg"));
  CHECK(read_csv_file(dir.path / "sweep_case3.csv").rows().size() == 4);

  CHECK(run_cli("sweep --param n --values 2 4 6 --batch 25 --seed 5 --out " +
                out) == 0);
  CHECK(read_csv_file(dir.path / "sweep.csv").rows().size() == 3);

  CHECK(run_cli("leakage --trials 400 --l-values 2 --k-values 1 2 --out " +
                out) == 0);
  const CsvTable leakage = read_csv_file(dir.path / "leakage.csv");
  CHECK(leakage.rows().size() == 2);
  CHECK(fs::exists(dir.path / "leakage.svg"));

  CHECK(run_cli("report --out " + out) == 0);
  CHECK(fs::exists(dir.path / "report.md"));
}

TEST_CASE("exit codes distinguish config, feasibility and io failures") {
  ScratchDir dir("codes");
  const std::string out = dir.path.string();

  // Config/usage errors -> 2.
  const fs::path bad_syntax = dir.path / "bad.cfg";
  write_file_atomic(bad_syntax, "not a config\n");
  CHECK(run_cli("run --config " + bad_syntax.string() + " --out " + out) == 2);
  CHECK(run_cli("run --no-such-flag") == 2);
  CHECK(run_cli("sweep --out " + out) == 2);  // no case, no param
  CHECK(run_cli("sweep --case1 --case2 --out " + out) == 2);

  // Infeasible parameters -> 3.
  const fs::path too_small = dir.path / "small.cfg";
  write_file_atomic(too_small, "n=1\n");
  CHECK(run_cli("run --config " + too_small.string() + " --out " + out) == 3);
  const fs::path tight = dir.path / "tight.cfg";
  write_file_atomic(tight, "m=6\nt_pk=4\n");  // m < 2*t_pk
  CHECK(run_cli("run --config " + tight.string() + " --out " + out) == 3);
  CHECK(run_cli("sweep --param n --values 1 2 --out " + out) == 3);

  // I/O failures -> 4.
  CHECK(run_cli("run --config " + (dir.path / "missing.cfg").string() +
                " --out " + out) == 4);
  const std::string empty = (dir.path / "empty").string();
  fs::create_directories(dir.path / "empty");
  CHECK(run_cli("report --out " + empty) == 4);

  CHECK(run_cli("--help") == 0);
}
