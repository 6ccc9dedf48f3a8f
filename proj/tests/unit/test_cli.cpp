#include <qfim/errors.hpp>
#include <qfim_cli/commands.hpp>
#include <qfim_cli/config.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qfim::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kData(QFIM_TEST_DATA_DIR);

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qfim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

// Data rows of a CSV file, header and comment lines skipped.
std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("qfim_cli_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path write_config(const std::string& name, const Json& j) const {
    const fs::path p = dir / name;
    std::ofstream(p) << j.dump(2);
    return p;
  }

  fs::path dir;
};

TEST_F(CliTest, ConfigRoundTripAndHash) {
  const RunConfig c = load_config((kData / "ngd_qubit.json").string());
  const RunConfig again = parse_config(to_json(c));
  EXPECT_EQ(c, again);
  EXPECT_EQ(config_hash(c), config_hash(again));
  EXPECT_EQ(config_hash(c).size(), 16u);
  RunConfig changed = c;
  changed.ngd.learning_rate = 0.25;
  EXPECT_NE(config_hash(c), config_hash(changed));
  EXPECT_THROW((void)parse_config(Json{{"no_such_key", 1}}), ValidationError);
  EXPECT_THROW((void)parse_config(Json{{"kernel", {{"label", "nope"}}}}), ValidationError);
}

TEST_F(CliTest, ComputeBlochZ) {
  const auto r = run({"compute", "--config", (kData / "bloch_z_km.json").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  const Json j = read_json(dir / "info_matrix.json");
  const RunConfig c = load_config((kData / "bloch_z_km.json").string());
  RunConfig effective = c;
  effective.out_dir = dir.string();
  EXPECT_EQ(j["config_hash"].get<std::string>(), config_hash(effective));
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_NEAR(j["results"][0]["values"][0][0].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["results"][0]["method"].get<std::string>(), "spectral");
  const std::string csv = slurp(dir / "info_matrix.csv");
  EXPECT_EQ(csv.rfind("# config_hash=" + config_hash(effective), 0), 0u);
}

TEST_F(CliTest, ComputeBothReportsDeviation) {
  const auto r = run({"compute", "--config", (kData / "bloch_z_km.json").string(), "--out", dir.string(), "--method",
                      "both"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const Json j = read_json(dir / "info_matrix.json");
  ASSERT_EQ(j["results"].size(), 2u);
  EXPECT_EQ(j["results"][1]["method"].get<std::string>(), "hessian_fd");
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-6);
}

TEST_F(CliTest, ComputeClosedFormOnThermalFamily) {
  const auto r = run({"compute", "--config", (kData / "bloch_z_km.json").string(), "--out", dir.string(), "--method",
                      "closed", "--alpha", "0.3", "--z", "2"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const Json j = read_json(dir / "info_matrix.json");
  EXPECT_EQ(j["results"][0]["method"].get<std::string>(), "closed_form_thermal");
  EXPECT_NEAR(j["results"][0]["values"][0][0].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, NonHermitianInputExitsWithConfigError) {
  const auto r = run({"compute", "--config", (kData / "bad_nonhermitian.json").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("Hermitian"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExecutableExitCodes) {
  const std::string exe = QFIM_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("compute --config " + (kData / "bad_nonhermitian.json").string() + " --out " + dir.string()), 2);
  EXPECT_EQ(status("compute --config " + (kData / "bloch_z_km.json").string() + " --out " + dir.string()), 0);
  EXPECT_EQ(status("compute --method nonsense"), 2);
  EXPECT_EQ(status("--help"), 0);
}

TEST_F(CliTest, VerifySuiteSelection) {
  auto r = run({"verify", "--out", dir.string(), "--suite", ""});
  ASSERT_EQ(r.code, kPass) << r.err;
  Json j = read_json(dir / "verify_report.json");
  EXPECT_EQ(j["instances_run"].get<std::size_t>(), 0u);
  EXPECT_TRUE(j["pass"].get<bool>());

  r = run({"verify", "--out", dir.string(), "--suite", "kernel_ordering,closed_forms"});
  ASSERT_EQ(r.code, kPass) << r.err;
  j = read_json(dir / "verify_report.json");
  EXPECT_EQ(j["reports"].size(), 2u);

  r = run({"verify", "--out", dir.string(), "--suite", "not_a_suite"});
  EXPECT_EQ(r.code, kConfigError);
}

TEST_F(CliTest, VerifyNegativeControlFails) {
  const auto cfg = write_config("perturbed.json", Json{{"kernel_perturbation", 1.01},
                                                      {"suites", Json::array({"oracle_equivalence"})},
                                                      {"out_dir", dir.string()}});
  const auto r = run({"verify", "--config", cfg.string()});
  EXPECT_EQ(r.code, kPropertyFailure);
  const Json j = read_json(dir / "verify_report.json");
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST_F(CliTest, SweepIsDeterministicAndConsistent) {
  const auto cfg = (kData / "sweep_small.json").string();
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", (dir / "a").string()}).code, kPass);
  const std::string first = slurp(dir / "a" / "sweep.csv");
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", (dir / "a").string()}).code, kPass);
  EXPECT_EQ(first, slurp(dir / "a" / "sweep.csv"));

  // Index alpha_z rows by (alpha, z, i, j) and compare the specialized rows.
  std::map<std::string, double> az;
  const auto rows = csv_rows(dir / "a" / "sweep.csv");
  for (const auto& r : rows) {
    if (r[5] == "alpha_z") az[r[0] + "|" + r[1] + "|" + r[2] + "|" + r[3]] = std::stod(r[4]);
  }
  int petz = 0, sandwiched = 0;
  for (const auto& r : rows) {
    const std::string key = r[0] + "|" + r[1] + "|" + r[2] + "|" + r[3];
    if (r[5] == "petz") {
      ++petz;
      EXPECT_NEAR(std::stod(r[4]), az.at(key), 1e-12);
    } else if (r[5] == "sandwiched") {
      ++sandwiched;
      EXPECT_NEAR(std::stod(r[4]), az.at(key), 1e-12);
    }
    if (std::stod(r[0]) == 0.999999) EXPECT_NEAR(std::stod(r[4]), std::stod(r[6]), 1e-5);
  }
  EXPECT_EQ(petz, 4 * 4);
  EXPECT_EQ(sandwiched, 3 * 4);
}

TEST_F(CliTest, NgdConvergesMonotonically) {
  const auto r = run({"ngd", "--config", (kData / "ngd_qubit.json").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = csv_rows(dir / "ngd_log.csv");
  ASSERT_GE(rows.size(), 2u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LE(std::stod(rows[k][1]), std::stod(rows[k - 1][1]));
  const Json s = read_json(dir / "ngd_summary.json");
  EXPECT_LT(s["final_loss"].get<double>(), 1e-6);
  EXPECT_LE(s["iterations_run"].get<int>(), 200);
  EXPECT_NEAR(s["theta"][0].get<double>(), 0.7, 1e-4);
  EXPECT_NEAR(s["theta"][1].get<double>(), -0.4, 1e-4);
}

TEST_F(CliTest, NgdZeroStepKeepsTheta) {
  Json j = Json::parse(slurp(kData / "ngd_qubit.json"));
  j["ngd"]["learning_rate"] = 0.0;
  j["ngd"]["iterations"] = 5;
  j["ngd"]["initial_theta"] = Json::array({0.1, 0.2});
  const auto cfg = write_config("eta0.json", j);
  ASSERT_EQ(run({"ngd", "--config", cfg.string(), "--out", dir.string()}).code, kPass);
  const Json s = read_json(dir / "ngd_summary.json");
  EXPECT_EQ(s["theta"][0].get<double>(), 0.1);
  EXPECT_EQ(s["theta"][1].get<double>(), 0.2);
}

TEST_F(CliTest, NgdMetricsShareFixedPoint) {
  Json j = Json::parse(slurp(kData / "ngd_qubit.json"));
  ASSERT_EQ(run({"ngd", "--config", (kData / "ngd_qubit.json").string(), "--out", (dir / "km").string()}).code, kPass);
  j["ngd"]["metric"]["label"] = "rld";
  const auto cfg = write_config("rld.json", j);
  ASSERT_EQ(run({"ngd", "--config", cfg.string(), "--out", (dir / "rld").string()}).code, kPass);
  const Json km = read_json(dir / "km" / "ngd_summary.json");
  const Json rld = read_json(dir / "rld" / "ngd_summary.json");
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(km["theta"][i].get<double>(), rld["theta"][i].get<double>(), 1e-4);
  // Different metrics take different paths to it.
  EXPECT_NE(slurp(dir / "km" / "ngd_log.csv"), slurp(dir / "rld" / "ngd_log.csv"));
}

TEST_F(CliTest, NgdSingularMetricWithoutDampingIsNumericError) {
  const auto r = run({"ngd", "--config", (kData / "ngd_zero_generator.json").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, kNumericError);
  EXPECT_NE(r.err.find("damping"), std::string::npos) << r.err;
  Json j = Json::parse(slurp(kData / "ngd_zero_generator.json"));
  j["ngd"]["damping"] = 1e-3;
  const auto cfg = write_config("damped.json", j);
  EXPECT_EQ(run({"ngd", "--config", cfg.string(), "--out", dir.string()}).code, kPass);
}

TEST_F(CliTest, DensitiesTables) {
  const auto cfg = write_config("dens.json", Json{{"kernel", {{"label", "alpha_z"}, {"alpha", 0.5}, {"z", 0.5}}},
                                                 {"densities", {{"t_count", 20}, {"include_convolution", false}}},
                                                 {"out_dir", dir.string()}});
  const auto r = run({"densities", "--config", cfg.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = csv_rows(dir / "densities_t.csv");
  ASSERT_EQ(rows.size(), 20u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(std::stod(rows[k][1]), std::stod(rows[k][2]), 1e-12);
    EXPECT_NEAR(std::stod(rows[k][1]), std::stod(rows[rows.size() - 1 - k][1]), 1e-12);
  }
  const Json s = read_json(dir / "densities_summary.json");
  EXPECT_NEAR(s["integral_p"].get<double>(), 1.0, 1e-4);
  EXPECT_NEAR(s["integral_p_alpha_z"].get<double>(), 1.0, 1e-4);
  EXPECT_FALSE(csv_rows(dir / "densities_omega.csv").empty());
}

}  // namespace
}  // namespace qfim::cli
