// Command-line front end: configure drives, run convergence/verification
// pipelines and the spin-chain experiment, emit CSV/JSON artifacts.
//
// Exit codes: 0 pass, 1 scientific failure, 2 usage/config error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qerg/ergodicity.hpp"
#include "qerg/euler.hpp"
#include "qerg/haar.hpp"
#include "qerg/lattice.hpp"
#include "qerg/spinchain.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace qerg;

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof(buf), "%FT%T", std::gmtime(&t));
  return buf;
}

std::filesystem::path output_dir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    if (const char* env = std::getenv("QERG_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

struct Manifest {
  json body;
  std::string started = now_iso8601();

  Manifest(const std::string& command, const json& config) {
    body["command"] = command;
    body["config"] = config;
    body["version"] = kVersion;
    body["started"] = started;
    body["outputs"] = json::array();
  }
  void add_output(const std::filesystem::path& p) {
    body["outputs"].push_back(p.string());
  }
  void write(const std::filesystem::path& dir, const std::string& command) {
    body["finished"] = now_iso8601();
    std::ofstream out(dir / ("manifest-" + command + ".json"));
    out << body.dump(2) << '\n';
  }
};

std::vector<std::int64_t> parse_checkpoints(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::int64_t>(std::stod(item)));
  if (out.empty()) throw ArgumentError("no checkpoints given");
  return out;
}

Vector initial_state(const std::string& kind, int d, Rng& rng) {
  if (kind == "random") return haar_random_state(d, rng);
  Vector v = Vector::Zero(d);
  v(0) = 1.0;
  return v;
}

DriveSpec named_drive(const std::string& name, int d, int L,
                      std::uint64_t /*seed*/) {
  if (name == "qubit-cue") {
    auto p = qubit_cue_default_preset();
    return qubit_cue_drive(p.omega1, p.omega2, p.q);
  }
  if (name == "cue") {
    auto [om, qs] = cue_default_frequencies(d);
    return cue_drive(d, om, qs);
  }
  if (name == "great-circle")
    return great_circle_3design_drive(1.0, std::sqrt(2.0));
  if (name == "el11" || name == "el12" || name == "el23") {
    ErgodicLattice lat = name == "el11"  ? el_11(d)
                         : name == "el12" ? el_12_qubit()
                                          : el_23_qubit();
    std::vector<double> om;
    const double irr[3] = {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0,
                           std::sqrt(7.0) - 2.0};
    for (int i = 0; i < lat.m; ++i) om.push_back(kTwoPi * irr[i]);
    std::vector<double> qs;
    for (int a = 1; a < lat.d; ++a)
      qs.push_back(kTwoPi * (std::sqrt(5.0) - 2.0) / a);
    return lattice_to_drive(lat, om, qs);
  }
  if (name == "design-cycle-pauli")
    return design_cycle_drive({Matrix::Identity(2, 2), pauli_1q('X'),
                               pauli_1q('Y'), pauli_1q('Z')});
  if (name == "floquet-kick" || name == "cosine" || name == "fibonacci") {
    auto [h0, h1] = ising_hamiltonians(L);
    if (name == "floquet-kick") return floquet_kick_drive(h0, h1);
    if (name == "cosine") return cosine_drive(h0, h1);
    return fibonacci_drive(h0, h1);
  }
  throw CLI::ValidationError("unknown drive: " + name);
}

int cmd_verify_design(const std::string& drive, const std::string& ensemble,
                      int d, int L, int k, double T, std::int64_t samples,
                      double tol, const std::string& psi0_kind,
                      std::uint64_t seed, int workers,
                      const std::string& out_flag, bool as_json) {
  Rng rng(seed);
  auto dir = output_dir(out_flag);
  json config{{"drive", drive},   {"ensemble", ensemble}, {"d", d},
              {"L", L},           {"k", k},               {"T", T},
              {"samples", samples}, {"tol", tol},
              {"psi0", psi0_kind},  {"seed", seed}};
  Manifest manifest("verify-design", config);

  bool pass = true;
  json report;
  if (!ensemble.empty()) {
    if (ensemble != "haar")
      throw CLI::ValidationError("only the haar ensemble is built in");
    auto mc = haar_state_moment_mc(d, k, samples, rng, workers);
    const double dev = trace_distance(mc.mean, haar_state_moment(d, k));
    pass = dev <= tol;
    report = {{"kind", "haar-ensemble"}, {"deviation", dev}, {"tol", tol},
              {"pass", pass}};
  } else {
    DriveSpec spec = named_drive(drive, d, L, seed);
    Vector psi0 = initial_state(psi0_kind, spec.dim(), rng);
    std::vector<std::int64_t> checkpoints;
    for (std::int64_t c = 1000; c < static_cast<std::int64_t>(T); c *= 10)
      checkpoints.push_back(c);
    checkpoints.push_back(static_cast<std::int64_t>(T));
    auto series =
        state_convergence_series(spec, checkpoints, k, psi0, 20000, rng);
    const auto csv = dir / ("convergence-" + drive + "-k" +
                            std::to_string(k) + ".csv");
    write_convergence_csv(csv.string(), series);
    manifest.add_output(csv);
    const double final_dev = series.back().deviation;
    pass = final_dev <= tol;
    report = {{"kind", "drive"},
              {"drive", drive},
              {"deviation", final_dev},
              {"frame_potential", series.back().frame_potential},
              {"tol", tol},
              {"pass", pass}};
  }
  manifest.body["report"] = report;
  manifest.write(dir, "verify-design");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << (pass ? "PASS" : "FAIL")
              << "  deviation=" << report["deviation"].get<double>()
              << "  tol=" << tol << '\n';
  return pass ? 0 : 1;
}

int cmd_lattice(const std::string& builtin, const std::string& file, int d,
                int k, double tol, const std::string& out_flag, bool as_json) {
  ErgodicLattice lat;
  std::string name = builtin;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw CLI::ValidationError("cannot read " + file);
    json j;
    in >> j;
    lat = lattice_from_json(j);
    name = file;
  } else if (builtin == "el-11") {
    lat = el_11(d);
  } else if (builtin == "el-12") {
    lat = el_12_qubit();
  } else if (builtin == "el-23") {
    lat = el_23_qubit();
  } else {
    throw CLI::ValidationError("pick --builtin el-11|el-12|el-23 or --file");
  }
  auto dir = output_dir(out_flag);
  json config{{"lattice", name}, {"d", lat.d}, {"m", lat.m}, {"k", k},
              {"tol", tol}};
  Manifest manifest("lattice", config);

  auto ortho = verify_orthonormality(lat, tol);
  json report{{"lattice", name},
              {"orthonormality_violation", ortho.max_violation},
              {"orthonormality_pass", ortho.pass}};
  bool pass = ortho.pass;
  json per_k = json::array();
  for (int kk = 1; kk <= k; ++kk) {
    auto rep = verify_khse_constraints(lat, kk, tol);
    per_k.push_back({{"k", kk},
                     {"max_deviation", rep.max_deviation},
                     {"pass", rep.pass}});
    pass = pass && rep.pass;
  }
  report["constraints"] = per_k;
  report["pass"] = pass;
  manifest.body["report"] = report;
  manifest.write(dir, "lattice");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else {
    std::cout << (pass ? "PASS" : "FAIL") << "  orthonormality="
              << ortho.max_violation << "  (tol " << tol << ")\n";
    for (const auto& r : per_k)
      std::cout << "  k=" << r["k"] << "  deviation=" << r["max_deviation"]
                << (r["pass"].get<bool>() ? "  ok" : "  FAIL") << '\n';
  }
  return pass ? 0 : 1;
}

int cmd_spinchain(const std::string& drive, int L, int K,
                  const std::string& order, const std::string& checkpoints,
                  std::int64_t T_opt, const std::string& out_flag,
                  bool as_json) {
  ChainConfig cfg;
  cfg.L = L;
  cfg.K = K;
  if (drive == "floquet")
    cfg.drive = ChainDrive::Floquet;
  else if (drive == "cosine")
    cfg.drive = ChainDrive::Cosine;
  else if (drive == "fibonacci")
    cfg.drive = ChainDrive::Fibonacci;
  else
    throw CLI::ValidationError("drive must be floquet|cosine|fibonacci");
  auto cps = parse_checkpoints(checkpoints);
  cfg.T_opt = T_opt;
  cfg.T_max = *std::max_element(cps.begin(), cps.end());
  cfg.validate();

  auto dir = output_dir(out_flag);
  json config{{"drive", drive}, {"L", L},       {"K", K},
              {"order", order}, {"T_opt", T_opt}, {"checkpoints", cps}};
  Manifest manifest("spinchain", config);

  std::vector<DeltaSeries> all;
  if (order == "1" || order == "both")
    all.push_back(delta_series(cfg, 1, cps));
  if (order == "2" || order == "both")
    all.push_back(delta_series(cfg, 2, cps));
  if (all.empty()) throw CLI::ValidationError("order must be 1, 2, or both");

  const auto csv = dir / ("spinchain-" + drive + "-L" + std::to_string(L) +
                          "-K" + std::to_string(K) + ".csv");
  write_delta_csv(csv.string(), all);
  manifest.add_output(csv);
  json report = json::array();
  for (const auto& s : all) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back({{"T", p.T}, {"delta", p.delta}});
    report.push_back({{"order", s.order},
                      {"optimized", s.optimized_value},
                      {"series", pts}});
  }
  manifest.body["report"] = report;
  manifest.write(dir, "spinchain");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else
    for (const auto& s : all)
      std::cout << "order " << s.order << ": delta(T_opt)="
                << s.optimized_value << "  delta(T_max)="
                << s.points.back().delta << '\n';
  return 0;
}

int cmd_bounds(int d, int k, double eps, const std::string& out_flag,
               bool as_json) {
  auto rep = b_bounds(d, k);
  json report{{"d", d},
              {"k", k},
              {"gamma", rep.gamma},
              {"B1", rep.b1},
              {"B2", rep.b2},
              {"packing", {{"eps", eps}, {"n", rep.packing_n(eps)}}}};
  auto dir = output_dir(out_flag);
  Manifest manifest("bounds", json{{"d", d}, {"k", k}, {"eps", eps}});
  manifest.body["report"] = report;
  manifest.write(dir, "bounds");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << "gamma=" << rep.gamma << "  B1=" << rep.b1
              << "  B2=" << rep.b2 << "  packing_n(" << eps
              << ")=" << rep.packing_n(eps) << '\n';
  return 0;
}

int cmd_cue(int d, double T, std::int64_t pushforward_samples, double tol,
            std::uint64_t seed, int workers, const std::string& out_flag,
            bool as_json) {
  Rng rng(seed);
  auto dir = output_dir(out_flag);
  json config{{"d", d}, {"T", T}, {"pushforward", pushforward_samples},
              {"tol", tol}, {"seed", seed}};
  Manifest manifest("cue", config);

  auto [om, qs] = cue_default_frequencies(d);
  DriveSpec spec = cue_drive(d, om, qs);
  auto acc = accumulate_unitary_moment(spec, static_cast<std::int64_t>(T), 1);
  const double u_dev = unitary_deviation(acc);
  auto push = haar_pushforward_check(d, pushforward_samples, rng, workers);

  bool pass = u_dev <= tol && push.first_moment_deviation <= 5e-3;
  json report{{"unitary_first_moment_deviation", u_dev},
              {"frame_potential_time_k1", frame_potential_from_moment(acc.mean())},
              {"pushforward_first_moment_deviation",
               push.first_moment_deviation},
              {"pushforward_fp_k2", push.frame_potential_k2},
              {"pushforward_fp_k2_stderr", push.frame_potential_k2_stderr},
              {"pass", pass}};
  manifest.body["report"] = report;
  manifest.write(dir, "cue");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << (pass ? "PASS" : "FAIL") << "  unitary-dev=" << u_dev
              << "  pushforward-dev=" << push.first_moment_deviation << '\n';
  return pass ? 0 : 1;
}

int cmd_haar_oracle(int d, int k, std::int64_t samples, double tol,
                    std::uint64_t seed, int workers,
                    const std::string& out_flag, bool as_json) {
  Rng rng(seed);
  auto dir = output_dir(out_flag);
  Manifest manifest("haar-oracle",
                    json{{"d", d}, {"k", k}, {"samples", samples},
                         {"seed", seed}});
  auto mc = haar_state_moment_mc(d, k, samples, rng, workers);
  const double state_dev = trace_distance(mc.mean, haar_state_moment(d, k));
  auto fp = haar_unitary_frame_potential_mc(d, k, samples / 2, rng, workers);
  double fp_exact = -1.0;
  bool fp_ok = true;
  fp_exact = haar_unitary_frame_potential(d, k);
  fp_ok = std::abs(fp.value - fp_exact) <= 3.0 * fp.stderr_;
  const bool pass = state_dev <= tol && fp_ok;
  json report{{"state_moment_deviation", state_dev},
              {"unitary_fp_mc", fp.value},
              {"unitary_fp_mc_stderr", fp.stderr_},
              {"unitary_fp_exact", fp_exact},
              {"pass", pass}};
  manifest.body["report"] = report;
  manifest.write(dir, "haar-oracle");
  if (as_json)
    std::cout << report.dump(2) << '\n';
  else
    std::cout << (pass ? "PASS" : "FAIL") << "  state-dev=" << state_dev
              << "  fp=" << fp.value << "±" << fp.stderr_ << " vs "
              << fp_exact << '\n';
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-ensemble ergodicity toolkit"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "read defaults from a TOML config file");
  app.require_subcommand(1);

  std::string drive, ensemble, builtin, file, order = "1", checkpoints;
  std::string psi0_kind = "basis", out_dir;
  int d = 2, L = 2, k = 1, K = 2;
  double T = 1e5, tol = 1e-2, eps = 0.5, T_opt_f = 1000;
  double samples_f = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  bool as_json = false;

  app.add_flag("--json", as_json, "emit JSON reports");
  app.add_option("--workers", workers,
                 "Monte-Carlo worker count (results are deterministic per\n"
                 "fixed count; default 1)");
  app.add_option("--out", out_dir,
                 "output directory (or QERG_OUTPUT_DIR, default .)")
      ->envname("QERG_OUTPUT_DIR");

  auto* vd = app.add_subcommand("verify-design",
                                "deviation of temporal moments from Haar");
  vd->add_option("--drive", drive,
                 "qubit-cue|cue|great-circle|el11|el12|el23|floquet-kick|"
                 "cosine|fibonacci|design-cycle-pauli");
  vd->add_option("--ensemble", ensemble, "haar: Monte-Carlo self test");
  vd->add_option("--d", d);
  vd->add_option("--L", L, "chain length for the kick drives");
  vd->add_option("--k", k, "moment order");
  vd->add_option("--T", T, "observation horizon (integer sample times)");
  vd->add_option("--samples", samples_f);
  vd->add_option("--tol", tol);
  vd->add_option("--psi0", psi0_kind, "basis|random");
  vd->add_option("--seed", seed);

  auto* lt = app.add_subcommand("lattice", "verify frequency-lattice data");
  lt->add_option("--builtin", builtin, "el-11|el-12|el-23");
  lt->add_option("--file", file, "lattice JSON file");
  lt->add_option("--d", d, "dimension for el-11");
  lt->add_option("--k", k, "verify constraints up to this order");
  double lattice_tol = 1e-10;
  lt->add_option("--tol", lattice_tol);
  lt->add_flag("--verify", "verify (default action)");

  auto* sc = app.add_subcommand("spinchain", "kicked-chain deviation series");
  sc->add_option("--drive", drive)->required();
  sc->add_option("--L", L);
  sc->add_option("--K", K);
  sc->add_option("--order", order, "1|2|both");
  sc->add_option("--checkpoints", checkpoints, "comma list, e.g. 1e3,1e4")
      ->required();
  sc->add_option("--Topt", T_opt_f);

  auto* bd = app.add_subcommand("bounds", "obstruction bounds and packing");
  bd->add_option("--d", d)->required();
  bd->add_option("--k", k)->required();
  bd->add_option("--eps", eps);

  auto* cu = app.add_subcommand("cue", "many-tone drive checks");
  cu->add_option("--d", d);
  cu->add_option("--T", T);
  cu->add_option("--pushforward", samples_f);
  cu->add_option("--tol", tol);
  cu->add_option("--seed", seed);

  auto* ho = app.add_subcommand("haar-oracle", "closed forms vs Monte Carlo");
  ho->add_option("--d", d);
  ho->add_option("--k", k);
  ho->add_option("--samples", samples_f);
  double oracle_tol = 5e-3;
  ho->add_option("--tol", oracle_tol);
  ho->add_option("--seed", seed);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (vd->parsed())
      return cmd_verify_design(drive, ensemble, d, L, k, T,
                               static_cast<std::int64_t>(samples_f), tol,
                               psi0_kind, seed, workers, out_dir, as_json);
    if (lt->parsed())
      return cmd_lattice(builtin, file, d, k, lattice_tol, out_dir, as_json);
    if (sc->parsed())
      return cmd_spinchain(drive, L, K, order, checkpoints,
                           static_cast<std::int64_t>(T_opt_f), out_dir,
                           as_json);
    if (bd->parsed()) return cmd_bounds(d, k, eps, out_dir, as_json);
    if (cu->parsed())
      return cmd_cue(d, T, static_cast<std::int64_t>(samples_f), tol, seed,
                     workers, out_dir, as_json);
    if (ho->parsed())
      return cmd_haar_oracle(d, k, static_cast<std::int64_t>(samples_f),
                             oracle_tol, seed, workers,
                             out_dir, as_json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
