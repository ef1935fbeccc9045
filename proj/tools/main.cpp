#include "wzwsle/acceptance.hpp"
#include "wzwsle/blocks.hpp"
#include "wzwsle/conditions.hpp"
#include "wzwsle/invariant_space.hpp"
#include "wzwsle/report.hpp"
#include "wzwsle/sle_sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wzwsle;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

/// Relative output paths are resolved against WZWSLE_OUT_DIR when set.
fs::path resolve_output(const std::string& path)
{
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("WZWSLE_OUT_DIR")) {
      fs::path base(dir);
      fs::create_directories(base);
      return base / p;
    }
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_file(const std::string& path, const std::string& content)
{
  const fs::path p = resolve_output(path);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + p.string());
  out << content;
}

Rational parse_rational(const std::string& s)
{
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (...) {
    throw CLI::ValidationError("expected an integer or num/den rational, got '" + s + "'");
  }
}

json rational_json(const Rational& r)
{
  return json{{"num", rat_num(r).str()}, {"den", rat_den(r).str()}};
}

json matrix_json(const Eigen::Matrix2d& m)
{
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

struct ConditionsArgs {
  int n_max = 4;
  int k_max = 2;
  int label_sum_max = 0; // 0 = follow k_max
  std::string csv_path, json_path;
};

int run_conditions(const ConditionsArgs& a)
{
  const int sum_max = a.label_sum_max > 0 ? a.label_sum_max : a.k_max;
  const auto rows = enumerate_solutions(a.n_max, a.k_max, sum_max);
  const std::string csv = conditions_csv(rows);
  if (!a.json_path.empty()) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"n", r.n},
                     {"k", r.k},
                     {"labels", r.weight.labels},
                     {"kappa", rational_json(r.solution.kappa)},
                     {"kappa_free", r.solution.kappa_free},
                     {"tau", rational_json(r.solution.tau())},
                     {"rho", rational_json(r.solution.rho())},
                     {"degenerate", r.solution.degenerate}});
    }
    write_file(a.json_path, out.dump(2) + "\n");
  }
  if (!a.csv_path.empty())
    write_file(a.csv_path, csv);
  else
    std::cout << csv;
  return 0;
}

struct TensorsArgs {
  std::string case_name = "fund-antifund";
  int n = 3;
  std::string json_path;
};

int run_tensors(const TensorsArgs& a)
{
  const InvariantCase ic = a.case_name == "self-adjoint" ? InvariantCase::SelfAdjointFund
                                                         : InvariantCase::FundAntifund;
  if (ic == InvariantCase::SelfAdjointFund && a.n % 2 != 0)
    throw CLI::ValidationError("the self-adjoint case needs even n");
  const InvariantSpace space(ic, a.n);
  const auto spectrum = eigen_spectrum_check(space);

  json out;
  out["case"] = a.case_name;
  out["n"] = a.n;
  out["dim"] = space.dim();
  out["T01"] = matrix_json(space.coupling_matrix(0, 1));
  out["T02"] = matrix_json(space.coupling_matrix(0, 2));
  out["T12"] = matrix_json(space.coupling_matrix(1, 2));
  out["sum_rule_residual"] = space.tfn1_residual();
  json spec = json::array();
  for (std::size_t i = 0; i < spectrum.predictions.size(); ++i) {
    const auto& p = spectrum.predictions[i];
    spec.push_back({{"legs", {p.leg_i, p.leg_j}},
                    {"predicted", {to_string(p.eigenvalues[0]), to_string(p.eigenvalues[1])}},
                    {"residual", spectrum.residuals[i]}});
  }
  out["spectra"] = spec;
  out["max_spectrum_residual"] = spectrum.max_residual;

  const std::string text = out.dump(2) + "\n";
  if (!a.json_path.empty())
    write_file(a.json_path, text);
  else
    std::cout << text;
  return 0;
}

struct BlocksArgs {
  std::string case_name = "sun-fund";
  int n = 3;
  std::string kappa, tau;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string csv_path;
};

BlockCase parse_block_case(const std::string& name, int& n)
{
  if (name == "su2") {
    n = 2;
    return BlockCase::Su2Level1;
  }
  if (name == "su3") {
    n = 3;
    return BlockCase::SunFundLevel1;
  }
  if (name == "su4-selfadj") {
    n = 4;
    return BlockCase::SunSelfAdjLevel1;
  }
  if (name == "sun-fund") return BlockCase::SunFundLevel1;
  if (name == "sun-selfadj") return BlockCase::SunSelfAdjLevel1;
  throw CLI::ValidationError("unknown case '" + name + "'");
}

std::pair<Rational, Rational> default_parameters(BlockCase bc, int n)
{
  switch (bc) {
    case BlockCase::Su2Level1: return {2, 1};
    case BlockCase::SunFundLevel1: return {2, Rational(2, n)};
    case BlockCase::SunSelfAdjLevel1: return {Rational(8, n + 2), Rational(4, n + 2)};
  }
  return {2, 1};
}

int run_blocks(const BlocksArgs& a)
{
  int n = a.n;
  const BlockCase bc = parse_block_case(a.case_name, n);
  const auto blk = make_one_point_block(bc, n);
  auto [kappa, tau] = default_parameters(bc, n);
  if (!a.kappa.empty()) {
    kappa = parse_rational(a.kappa);
    tau = Rational(4 - kappa, n); // linear relation unless overridden
  }
  if (!a.tau.empty()) tau = parse_rational(a.tau);

  const QuadPolyMat2 m = martingale_matrix_1pt(blk, kappa, tau);
  std::mt19937 rng(static_cast<unsigned>(a.seed));
  std::uniform_real_distribution<double> th(0.05, 2 * M_PI - 0.05);
  std::vector<double> angles(a.samples);
  for (auto& x : angles) x = th(rng);
  std::sort(angles.begin(), angles.end());

  std::vector<BlockResidualRow> rows;
  XBranch br = XBranch::principal(0.5);
  Complex from = br.x;
  for (double angle : angles) {
    const Complex target = std::polar(1.0, angle);
    for (int s = 1; s <= 32; ++s) br.move_to(from + (target - from) * (s / 32.0));
    from = target;
    BlockResidualRow row;
    row.x = br.x;
    row.kz_residual = kz_residual(blk, br).cwiseAbs().maxCoeff();
    row.kz3c_residual = kz3c_residual(blk, br).cwiseAbs().maxCoeff();
    row.kernel_residual =
        (martingale_matrix_eval(m, br.x) * block_eval(blk, br)).cwiseAbs().maxCoeff();
    rows.push_back(row);
  }
  const std::string csv = blocks_csv(rows, a.seed);
  if (!a.csv_path.empty())
    write_file(a.csv_path, csv);
  else
    std::cout << csv;
  return 0;
}

struct SimulateArgs {
  std::string case_name = "su2";
  int n = 0;
  double kappa = 2.0;
  double tau = std::numeric_limits<double>::quiet_NaN();
  bool has_rho = false;
  double rho = 0.0;
  double y0 = 1.0;
  double z0_re = 0.0, z0_im = 1.0;
  double horizon = 0.05;
  double dt = 1e-4;
  long paths = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  int checkpoints = 10;
  std::string config_path, csv_path, svg_path;
};

void apply_config_file(SimulateArgs& a)
{
  std::ifstream in(a.config_path);
  if (!in) throw std::runtime_error("cannot open config file " + a.config_path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    try {
      if (key == "case") a.case_name = val;
      else if (key == "n") a.n = std::stoi(val);
      else if (key == "kappa") a.kappa = std::stod(val);
      else if (key == "tau") a.tau = std::stod(val);
      else if (key == "rho") { a.rho = std::stod(val); a.has_rho = true; }
      else if (key == "y0") a.y0 = std::stod(val);
      else if (key == "z0_re") a.z0_re = std::stod(val);
      else if (key == "z0_im") a.z0_im = std::stod(val);
      else if (key == "T") a.horizon = std::stod(val);
      else if (key == "dt") a.dt = std::stod(val);
      else if (key == "paths") a.paths = std::stol(val);
      else if (key == "seed") a.seed = std::stoull(val);
      else if (key == "threads") a.threads = std::stoi(val);
      else if (key == "checkpoints") a.checkpoints = std::stoi(val);
      else if (key == "csv") a.csv_path = val;
      else if (key == "svg") a.svg_path = val;
      else throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::exception& ex) {
      throw std::runtime_error(a.config_path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
}

int run_simulate(SimulateArgs& a)
{
  if (!a.config_path.empty()) apply_config_file(a);
  SimConfig cfg;
  int n = a.n;
  cfg.block_case = parse_block_case(a.case_name, n);
  if (a.n > 0 && (a.case_name == "sun-fund" || a.case_name == "sun-selfadj")) n = a.n;
  if (n < 2) throw CLI::ValidationError("--n required for the sun-* cases");
  cfg.n = n;
  cfg.kappa = a.kappa;
  cfg.tau = std::isnan(a.tau) ? (4.0 - a.kappa) / n : a.tau;
  if (a.has_rho) {
    cfg.rho_variant = true;
    cfg.rho = a.rho;
    cfg.y0 = a.y0;
  }
  cfg.z0 = Complex(a.z0_re, a.z0_im);
  cfg.horizon = a.horizon;
  cfg.dt = a.dt;
  cfg.paths = a.paths;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.checkpoints = a.checkpoints;

  const McReport rep = mc_martingale_test(cfg);
  const std::string csv = mc_report_csv(rep, cfg);
  if (!a.csv_path.empty())
    write_file(a.csv_path, csv);
  else
    std::cout << csv;
  if (!a.svg_path.empty()) write_file(a.svg_path, drift_svg(rep));

  std::cerr << (!rep.reliable ? "UNRELIABLE" : (rep.pass ? "PASS" : "FAIL"))
            << " (max z = " << format_double(rep.max_z) << ", discarded " << rep.discarded
            << " of " << rep.paths_total << ")\n";
  if (!rep.reliable) return 2;
  return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"SLE martingale analysis for boundary WZW models"};
  app.require_subcommand(1);

  ConditionsArgs ca;
  auto* conditions = app.add_subcommand(
      "conditions", "Enumerate exact (kappa, tau, rho) solutions of the level-two conditions");
  conditions->add_option("--n-max", ca.n_max, "largest su(n) rank parameter")->check(CLI::Range(2, 12));
  conditions->add_option("--k-max", ca.k_max, "largest level")->check(CLI::PositiveNumber);
  conditions->add_option("--label-sum-max", ca.label_sum_max,
                         "largest Dynkin label sum (default: k-max)");
  conditions->add_option("--csv", ca.csv_path, "write CSV here instead of stdout");
  conditions->add_option("--json", ca.json_path, "also write a JSON report");

  TensorsArgs ta;
  auto* tensors = app.add_subcommand(
      "tensors", "Invariant-subspace coupling matrices and spectrum report");
  tensors->add_option("--case", ta.case_name, "fund-antifund or self-adjoint")
      ->check(CLI::IsMember({"fund-antifund", "self-adjoint"}));
  tensors->add_option("--n", ta.n, "su(n) rank parameter")->check(CLI::Range(2, 6));
  tensors->add_option("--json", ta.json_path, "write JSON here instead of stdout");

  BlocksArgs ba;
  auto* blocks = app.add_subcommand(
      "blocks", "Residuals of the closed-form blocks and kernel identities");
  blocks->add_option("--case", ba.case_name, "su2, su3, su4-selfadj, sun-fund or sun-selfadj");
  blocks->add_option("--n", ba.n, "rank parameter for the sun-* cases")->check(CLI::Range(2, 8));
  blocks->add_option("--kappa", ba.kappa, "rational kappa (num/den)");
  blocks->add_option("--tau", ba.tau, "rational tau (num/den)");
  blocks->add_option("--samples", ba.samples, "sample count on the unit circle")
      ->check(CLI::PositiveNumber);
  blocks->add_option("--seed", ba.seed, "sampling seed");
  blocks->add_option("--csv", ba.csv_path, "write CSV here instead of stdout");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo martingale test");
  simulate->add_option("--case", sa.case_name, "su2, su3, su4-selfadj, sun-fund or sun-selfadj");
  simulate->add_option("--n", sa.n, "rank parameter for the sun-* cases");
  simulate->add_option("--kappa", sa.kappa, "diffusion coefficient");
  simulate->add_option("--tau", sa.tau, "gauge coupling (default: (4 - kappa)/n)");
  simulate->add_option("--rho", sa.rho, "enable the boundary-target variant with this drift")
      ->each([&sa](const std::string&) { sa.has_rho = true; });
  simulate->add_option("--y0", sa.y0, "initial target position");
  simulate->add_option("--z0-re", sa.z0_re, "bulk point, real part");
  simulate->add_option("--z0-im", sa.z0_im, "bulk point, imaginary part");
  simulate->add_option("--T", sa.horizon, "time horizon");
  simulate->add_option("--dt", sa.dt, "step size");
  simulate->add_option("--paths", sa.paths, "number of Monte Carlo paths");
  simulate->add_option("--seed", sa.seed, "master seed");
  simulate->add_option("--threads", sa.threads, "worker threads (0 = hardware)");
  simulate->add_option("--checkpoints", sa.checkpoints, "drift-curve checkpoints");
  simulate->add_option("--config", sa.config_path, "key = value file overriding the flags");
  simulate->add_option("--csv", sa.csv_path, "write the report CSV here instead of stdout");
  simulate->add_option("--svg", sa.svg_path, "write a drift-vs-time SVG plot");

  long acc_paths = 100000;
  int acc_threads = 0;
  auto* verify = app.add_subcommand("verify-all", "Run the full acceptance suite");
  verify->add_option("--paths", acc_paths, "Monte Carlo paths for the statistical criteria");
  verify->add_option("--threads", acc_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (conditions->parsed()) return run_conditions(ca);
    if (tensors->parsed()) return run_tensors(ta);
    if (blocks->parsed()) return run_blocks(ba);
    if (simulate->parsed()) return run_simulate(sa);
    if (verify->parsed()) {
      AcceptanceOptions opt;
      opt.mc_paths = acc_paths;
      opt.threads = acc_threads;
      const auto results = run_acceptance(std::cout, opt);
      return all_passed(results) ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
