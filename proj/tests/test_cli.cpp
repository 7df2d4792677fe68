#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

// The CLI binary path arrives as the first plain argument (see CMake).
static std::string g_cli;

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const int rc = std::system((g_cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("spinchain --drive floquet") == 2);  // missing --checkpoints
  CHECK(run("lattice --builtin nope --k 1") == 2);
}

TEST_CASE("bounds and lattice subcommands run and write manifests") {
  auto dir = fresh_dir("qerg-cli-a");
  CHECK(run("bounds --d 3 --k 2 --json --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "manifest-bounds.json"));

  CHECK(run("lattice --builtin el-12 --verify --k 2 --out " + dir.string()) ==
        0);
  auto manifest =
      nlohmann::json::parse(slurp(dir / "manifest-lattice.json"));
  CHECK(manifest["report"]["pass"].get<bool>());
  CHECK(manifest.contains("started"));
  CHECK(manifest.contains("finished"));
}

TEST_CASE("verify-design: haar self test passes, stationary regime fails") {
  auto dir = fresh_dir("qerg-cli-b");
  CHECK(run("verify-design --ensemble haar --d 2 --k 2 --samples 50000 "
            "--tol 5e-3 --seed 3 --out " +
            dir.string()) == 0);
  // a period-two kick drive holds finite-k deviations away from zero
  CHECK(run("verify-design --drive floquet-kick --L 2 --k 1 --T 2e4 "
            "--tol 1e-2 --out " +
            dir.string()) == 1);
}

TEST_CASE("identical configurations reproduce identical CSV output") {
  auto dir1 = fresh_dir("qerg-cli-c1");
  auto dir2 = fresh_dir("qerg-cli-c2");
  const std::string args =
      "verify-design --drive qubit-cue --k 2 --T 2e4 --tol 1e-1 --seed 7 "
      "--out ";
  CHECK(run(args + dir1.string()) == 0);
  CHECK(run(args + dir2.string()) == 0);
  const auto csv1 = slurp(dir1 / "convergence-qubit-cue-k2.csv");
  const auto csv2 = slurp(dir2 / "convergence-qubit-cue-k2.csv");
  CHECK(!csv1.empty());
  CHECK(csv1 == csv2);
}

TEST_CASE("config file supplies defaults that flags override") {
  auto dir = fresh_dir("qerg-cli-e");
  const fs::path cfg = dir / "defaults.toml";
  {
    std::ofstream out(cfg);
    out << "[bounds]\nd=3\nk=2\neps=0.25\n";
  }
  // the config file supplies d/k/eps; no flags needed beyond --out
  CHECK(run("--config " + cfg.string() + " bounds --out " + dir.string()) ==
        0);
  auto manifest = nlohmann::json::parse(slurp(dir / "manifest-bounds.json"));
  CHECK(manifest["config"]["eps"].get<double>() == 0.25);
  CHECK(manifest["config"]["d"].get<int>() == 3);
  // a flag on the command line wins over the file
  CHECK(run("--config " + cfg.string() + " bounds --eps 0.5 --out " +
            dir.string()) == 0);
  manifest = nlohmann::json::parse(slurp(dir / "manifest-bounds.json"));
  CHECK(manifest["config"]["eps"].get<double>() == 0.5);
}

TEST_CASE("spinchain subcommand emits the delta CSV schema") {
  auto dir = fresh_dir("qerg-cli-d");
  CHECK(run("spinchain --drive fibonacci --L 3 --K 2 --order both "
            "--checkpoints 1e2,1e3 --Topt 1e2 --out " +
            dir.string()) == 0);
  const auto csv = slurp(dir / "spinchain-fibonacci-L3-K2.csv");
  CHECK(csv.rfind("drive,L,K,order,T,delta", 0) == 0);
  CHECK(csv.find("fibonacci,3,2,1,1000,") != std::string::npos);
  CHECK(csv.find("fibonacci,3,2,2,1000,") != std::string::npos);
}

int main(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && arg[0] != '-') g_cli = arg;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-qerg-binary>\n");
    return 2;
  }
  return context.run();
}
