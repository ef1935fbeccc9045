#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

#ifndef WZWSLE_CLI_PATH
#error "WZWSLE_CLI_PATH must point at the built binary"
#endif

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "")
{
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("wzwsle_cli_" + std::to_string(counter++));
  const std::string cmd = env + std::string(WZWSLE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  r.out = slurp(out);
  fs::remove(out);
  return r;
}

} // namespace

TEST_CASE("usage errors exit with 64")
{
  CHECK(run_cli("no-such-subcommand").exit_code == 64);
  CHECK(run_cli("conditions --n-max 1").exit_code == 64);
  CHECK(run_cli("tensors --case bogus").exit_code == 64);
  CHECK(run_cli("tensors --case self-adjoint --n 3").exit_code == 64);
  CHECK(run_cli("blocks --case su3 --kappa not-a-number").exit_code == 64);
}

TEST_CASE("conditions enumeration is deterministic and matches the closed forms")
{
  const auto a = run_cli("conditions --n-max 4 --k-max 2");
  const auto b = run_cli("conditions --n-max 4 --k-max 2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out); // byte identical
  // rows for the three families
  CHECK(a.out.find("2,2,1,16,5,2,5,-14,5,0") != std::string::npos);
  CHECK(a.out.find("3,1,1;0,2,1,2,3,-4,1,0") != std::string::npos);
  CHECK(a.out.find("4,1,0;1;0,4,3,2,3,-14,3,0") != std::string::npos);
  // degenerate su(2) level-1 row is flagged
  CHECK(a.out.find("2,1,1,3,1,1,2,-3,1,1") != std::string::npos);
}

TEST_CASE("conditions JSON output")
{
  const fs::path dir = fs::temp_directory_path() / "wzwsle_cli_json";
  fs::create_directories(dir);
  const fs::path json = dir / "rows.json";
  const auto r = run_cli("conditions --n-max 3 --k-max 1 --json " + json.string());
  CHECK(r.exit_code == 0);
  const std::string text = slurp(json);
  CHECK(text.find("\"kappa\"") != std::string::npos);
  CHECK(text.find("\"degenerate\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("blocks residual table stays below threshold")
{
  const auto r = run_cli("blocks --case sun-fund --n 3 --samples 40 --seed 3");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    // re,im,kz,kz3c,kernel
    double vals[5];
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    for (double& v : vals) fields >> v;
    CHECK(vals[2] < 1e-10);
    CHECK(vals[3] < 1e-10);
    CHECK(vals[4] < 1e-10);
    ++rows;
  }
  CHECK(rows == 40);
}

TEST_CASE("simulate: exit codes, seed echo, determinism, svg")
{
  const fs::path dir = fs::temp_directory_path() / "wzwsle_cli_sim";
  fs::create_directories(dir);
  const fs::path csv = dir / "report.csv";
  const fs::path svg = dir / "drift.svg";
  const std::string args = "simulate --case su2 --kappa 2 --paths 800 --T 0.01 --dt 0.0005 "
                           "--seed 7 --csv " + csv.string() + " --svg " + svg.string();
  const auto r = run_cli(args);
  CHECK(r.exit_code == 0);
  const std::string report = slurp(csv);
  CHECK(report.find("# seed = 7") != std::string::npos);
  CHECK(report.find("# verdict = PASS") != std::string::npos);
  const std::string first = report;
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  const auto r2 = run_cli(args);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(csv) == first); // byte identical for the same seed and config

  // a broken coupling drifts: exit code 1
  const auto bad = run_cli("simulate --case su2 --kappa 2 --tau 1.5 --paths 800 --T 0.01 "
                           "--dt 0.0005 --seed 7 --csv " + csv.string());
  CHECK(bad.exit_code == 1);
  CHECK(slurp(csv).find("# verdict = FAIL") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate config file overrides flags")
{
  const fs::path dir = fs::temp_directory_path() / "wzwsle_cli_cfg";
  fs::create_directories(dir);
  const fs::path cfgfile = dir / "run.cfg";
  const fs::path csv = dir / "out.csv";
  {
    std::ofstream cfg(cfgfile);
    cfg << "# small smoke run\n";
    cfg << "case = su2\n";
    cfg << "kappa = 2\n";
    cfg << "paths = 500\n";
    cfg << "T = 0.01\n";
    cfg << "dt = 0.0005\n";
    cfg << "seed = 11\n";
    cfg << "csv = " << csv.string() << "\n";
  }
  const auto r = run_cli("simulate --case su3 --paths 9999 --config " + cfgfile.string());
  CHECK(r.exit_code == 0);
  const std::string report = slurp(csv);
  CHECK(report.find("# seed = 11") != std::string::npos);
  CHECK(report.find("paths = 500") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("relative outputs resolve against WZWSLE_OUT_DIR")
{
  const fs::path dir = fs::temp_directory_path() / "wzwsle_cli_envdir";
  fs::remove_all(dir);
  const auto r = run_cli("conditions --n-max 2 --k-max 1 --csv rows.csv",
                         "WZWSLE_OUT_DIR=" + dir.string() + " ");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "rows.csv"));
  fs::remove_all(dir);
}
