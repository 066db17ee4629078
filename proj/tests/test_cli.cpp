#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbitlab/runner.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.txt";
  const std::string cmd = std::string(ORBITLAB_CLI_PATH) + " " + args + " > " +
                          log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "orbitlab_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string strip_runtime(std::string json) {
  const auto pos = json.find("\"runtime_seconds\"");
  if (pos == std::string::npos) return json;
  const auto end = json.find('\n', pos);
  return json.erase(pos, end - pos);
}

const char* kGoodConfig = R"(label = cli_demo
action = scalar_cyclic(r=2,n=1)
embedding = scalar_cyclic
pairs = 2000
mix = 0.5 0.25 0.25
restarts = 4
seed = 9
out_json = cli_demo.json
out_csv = cli_demo.csv
out_dump = cli_demo.bin
)";

}  // namespace

TEST_CASE("estimate subcommand writes reports and exits cleanly") {
  const fs::path dir = scratch_dir();
  write(dir / "good.cfg", kGoodConfig);
  const auto result =
      run_cli("estimate --config " + (dir / "good.cfg").string() + " --out " + dir.string(),
              dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "cli_demo.json"));
  CHECK(fs::exists(dir / "cli_demo.csv"));
  CHECK(fs::exists(dir / "cli_demo.bin"));
}

TEST_CASE("estimate rejects malformed configs with a named key") {
  const fs::path dir = scratch_dir();
  write(dir / "bad.cfg", std::string(kGoodConfig) + "plot_style = fancy\n");
  const auto result = run_cli("estimate --config " + (dir / "bad.cfg").string(), dir);
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("plot_style") != std::string::npos);
}

TEST_CASE("estimate is reproducible byte for byte apart from the runtime") {
  const fs::path dir = scratch_dir();
  write(dir / "good.cfg", kGoodConfig);
  const std::string out1 = (dir / "run1").string();
  const std::string out2 = (dir / "run2").string();
  CHECK(run_cli("estimate --config " + (dir / "good.cfg").string() + " --out " + out1 +
                    " --threads 1",
                dir).exit_code == 0);
  CHECK(run_cli("estimate --config " + (dir / "good.cfg").string() + " --out " + out2 +
                    " --threads 8",
                dir).exit_code == 0);
  const std::string a = strip_runtime(slurp(fs::path(out1) / "cli_demo.json"));
  const std::string b = strip_runtime(slurp(fs::path(out2) / "cli_demo.json"));
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("verify subcommand") {
  const fs::path dir = scratch_dir();

  SUBCASE("empty suite warns and exits zero") {
    write(dir / "empty.suite", "# nothing here\n");
    const auto result = run_cli("verify --suite " + (dir / "empty.suite").string(), dir);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("warning") != std::string::npos);
  }

  SUBCASE("honest entry passes, poisoned entry fails") {
    write(dir / "good.suite", R"(label = torus_claim
action = rect_torus(lengths=[1,1])
embedding = rect_torus
pairs = 3000
restarts = 8
seed = 5
claim = ref:rect-lattice
)");
    const auto good = run_cli("verify --suite " + (dir / "good.suite").string() +
                                  " --out " + dir.string(),
                              dir);
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("PASS torus_claim") != std::string::npos);
    CHECK(fs::exists(dir / "verify_summary.json"));

    write(dir / "poisoned.suite", R"(label = impossible
action = scalar_cyclic(r=2,n=2)
embedding = complex_phase
pairs = 2000
restarts = 5
seed = 6
claim = exact:1.0
)");
    const auto bad = run_cli("verify --suite " + (dir / "poisoned.suite").string(), dir);
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("FAIL impossible") != std::string::npos);
  }
}

TEST_CASE("the shipped constants suite passes") {
  const fs::path dir = scratch_dir();
  const fs::path suite = fs::path(ORBITLAB_SOURCE_DIR) / "configs" / "constants.suite";
  REQUIRE(fs::exists(suite));
  const auto result =
      run_cli("verify --suite " + suite.string() + " --threads 2 --out " + dir.string(),
              dir);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("FAIL") == std::string::npos);
  CHECK(result.output.find("PASS torus_pi_half") != std::string::npos);
}

TEST_CASE("report subcommand aggregates and charts") {
  const fs::path dir = scratch_dir();
  write(dir / "good.cfg", kGoodConfig);
  for (int i = 0; i < 3; ++i) {
    const std::string out = (dir / ("r" + std::to_string(i))).string();
    REQUIRE(run_cli("estimate --config " + (dir / "good.cfg").string() + " --out " + out,
                    dir).exit_code == 0);
  }
  std::string files;
  for (int i = 0; i < 3; ++i) {
    files += " " + (dir / ("r" + std::to_string(i)) / "cli_demo.json").string();
  }
  const std::string prefix = (dir / "summary").string();
  const auto result = run_cli("report" + files + " --out " + prefix, dir);
  CHECK(result.exit_code == 0);
  const std::string csv = slurp(prefix + ".csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
  const std::string svg = slurp(prefix + ".svg");
  CHECK(svg.find("<svg") != std::string::npos);

  const auto missing =
      run_cli("report " + (dir / "nope.json").string() + " --out " + prefix, dir);
  CHECK(missing.exit_code == 2);
}
