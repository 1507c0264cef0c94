#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fieldrank/cli_app.hpp"
#include "fieldrank/expanalytic.hpp"
#include "fieldrank/kernels.hpp"
#include "fieldrank/mplaw.hpp"
#include "fieldrank/spectra.hpp"

using namespace fieldrank;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fieldrank_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
  CHECK(cli::run({"no-such-command"}) == 2);
  CHECK(cli::run({}) == 2);
  CHECK(cli::run({"complexity", "--sigma"}) == 2);
  CHECK(cli::run({"complexity", "--r", "4", "--h", "0.1", "--sigma", "0.1"}) == 2);
  CHECK(cli::run({"--help"}) == 0);
}

TEST_CASE("complexity: CSV rows per eps, consistent with the library") {
  TempDir tmp;
  const fs::path out = tmp.path / "complexity.csv";
  CHECK(cli::run({"complexity", "--kernel", "sq-exp", "--domain", "interval", "--sigma",
                  "0.02", "--r", "4", "--eps", "0.05,0.01", "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("# tool = fieldrank") != std::string::npos);
  CHECK(csv.find("eps,n,n_under,n_over,lower_bound") != std::string::npos);

  // count data rows
  int rows = 0;
  std::istringstream lines(csv);
  std::string line;
  bool seen_header = false;
  std::vector<std::string> data;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    ++rows;
    data.push_back(line);
  }
  REQUIRE(rows == 2);

  // cross-check against direct library values
  const SymMatrix m = kernels::assemble_covariance(
      kernels::KernelSpec::squared_exponential(0.02), kernels::build_interval(0.005));
  const spectra::Spectrum s = spectra::sym_eig_values(m);
  const spectra::ComplexityReport rep = spectra::analyze(s, 0.05);
  std::istringstream first(data[0]);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(first, field, ',')) fields.push_back(field);
  CHECK(std::stod(fields[0]) == 0.05);
  CHECK(std::stoi(fields[1]) == m.n());
  CHECK(std::stoi(fields[2]) == rep.n_under);
  CHECK(std::stoi(fields[3]) == rep.n_over);
  CHECK(std::stod(fields[4]) == doctest::Approx(rep.lower_bound).epsilon(1e-15));

  // byte-identical rerun
  const fs::path out2 = tmp.path / "complexity2.csv";
  CHECK(cli::run({"complexity", "--kernel", "sq-exp", "--domain", "interval", "--sigma",
                  "0.02", "--r", "4", "--eps", "0.05,0.01", "--out", out2.string()}) == 0);
  CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("exp-analytic: n=1, tau=2, eps=1 gives n_under=0 and lambda=1") {
  TempDir tmp;
  const fs::path out = tmp.path / "exp.json";
  CHECK(cli::run({"exp-analytic", "--n", "1", "--tau", "2", "--eps", "1", "--format", "json",
                  "--out", out.string()}) == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["config"]["lambda_max"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["n_under"].get<int>() == 0);
  CHECK(doc["rows"][0]["t_asymptotic"].get<double>() == 0.0);
}

TEST_CASE("mp: JSON output is round-trip consistent") {
  TempDir tmp;
  const fs::path out = tmp.path / "mp.json";
  CHECK(cli::run({"mp", "--alpha", "0.25", "--sigma2", "1", "--eps", "0.1", "--out",
                  out.string()}) == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 1);
  const auto& row = doc["rows"][0];
  const mplaw::MpParams p = mplaw::MpParams::make(1.0, 0.25);
  CHECK(row["rho"].get<double>() ==
        doctest::Approx(mplaw::asymptotic_ratio(0.1, p)).epsilon(1e-12));
  CHECK(row["y"].get<double>() ==
        doctest::Approx(mplaw::solve_quantile(0.1, p)).epsilon(1e-12));
  CHECK(row["drho_deps"].get<double>() ==
        doctest::Approx(mplaw::rho_derivative(0.1, p)).epsilon(1e-12));
  CHECK(row["best_k_error_roundtrip"].get<double>() == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("embed: deterministic by seed") {
  TempDir tmp;
  const fs::path a = tmp.path / "a.csv";
  const fs::path b = tmp.path / "b.csv";
  const fs::path c = tmp.path / "c.csv";
  const std::vector<std::string> common{"embed", "--n",   "80",  "--alpha", "0.25",
                                        "--dist", "gaussian", "--eps", "0.1"};
  auto with = [&](const fs::path& out, const std::string& seed) {
    std::vector<std::string> args = common;
    args.push_back("--seed");
    args.push_back(seed);
    args.push_back("--out");
    args.push_back(out.string());
    return cli::run(args);
  };
  CHECK(with(a, "7") == 0);
  CHECK(with(b, "7") == 0);
  CHECK(with(c, "8") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("embed with an exponential covariance sweep") {
  TempDir tmp;
  const fs::path out = tmp.path / "cov.json";
  CHECK(cli::run({"embed", "--n", "100", "--alpha", "0.25", "--eps", "0.1",
                  "--cov-exp-sigma", "4,1", "--seed", "3", "--format", "json", "--out",
                  out.string()}) == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["sigma_idx"].get<double>() == doctest::Approx(4.0));
  CHECK(doc["rows"][0]["d"].get<int>() == 400);
  // two tolerances is a usage error in this mode
  CHECK(cli::run({"embed", "--n", "100", "--alpha", "0.25", "--eps", "0.1,0.2",
                  "--cov-exp-sigma", "4", "--out", (tmp.path / "x.json").string()}) == 1);
}

TEST_CASE("runtime failures exit 1 and leave no partial file") {
  TempDir tmp;
  const fs::path out = tmp.path / "never.csv";
  CHECK(cli::run({"complexity", "--kernel", "sq-exp", "--domain", "interval", "--sigma",
                  "0.02", "--r", "400", "--eps", "0.1", "--out", out.string()}) == 1);
  CHECK(!fs::exists(out));
  CHECK(!fs::exists(out.string() + ".tmp"));
}

TEST_CASE("field-sample: coordinates plus one column per realization") {
  TempDir tmp;
  const fs::path out = tmp.path / "field.csv";
  CHECK(cli::run({"field-sample", "--kernel", "sq-exp", "--domain", "interval", "--sigma",
                  "0.2", "--h", "0.1", "--terms", "3", "--samples", "2", "--seed", "5",
                  "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("point,x,sample_0,sample_1") != std::string::npos);
  int rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == 11);  // header + 10 grid points
}

TEST_CASE("environment variables feed defaults, flags win") {
  TempDir tmp;
  const fs::path out = tmp.path / "env.csv";
  ::setenv("FIELDRANK_SIGMA", "0.5", 1);
  CHECK(cli::run({"complexity", "--kernel", "exp", "--domain", "interval", "--r", "4",
                  "--eps", "0.1", "--out", out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("# sigma = 0.5") != std::string::npos);
  ::unsetenv("FIELDRANK_SIGMA");
}

TEST_CASE("config file supplies defaults, flags still win") {
  TempDir tmp;
  const fs::path ini = tmp.path / "defaults.ini";
  {
    std::ofstream out(ini);
    out << "[complexity]\nsigma=0.25\nkernel=exp\n";
  }
  const fs::path a = tmp.path / "from_config.csv";
  CHECK(cli::run({"complexity", "--config", ini.string(), "--domain", "interval", "--r", "4",
                  "--eps", "0.1", "--out", a.string()}) == 0);
  CHECK(slurp(a).find("# sigma = 0.25") != std::string::npos);

  const fs::path b = tmp.path / "flag_wins.csv";
  CHECK(cli::run({"complexity", "--config", ini.string(), "--domain", "interval", "--r", "4",
                  "--sigma", "0.5", "--eps", "0.1", "--out", b.string()}) == 0);
  CHECK(slurp(b).find("# sigma = 0.5") != std::string::npos);
}

TEST_CASE("sweep subcommands write fits blocks") {
  TempDir tmp;
  const fs::path out = tmp.path / "sweep.csv";
  CHECK(cli::run({"sweep-sigma", "--kernel", "sq-exp", "--domain", "interval", "--r", "4",
                  "--sigma-list", "0.2,0.14,0.1,0.07", "--eps", "0.1", "--out",
                  out.string()}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("# fits") != std::string::npos);
  CHECK(csv.find("log_log_linear") != std::string::npos);
}
