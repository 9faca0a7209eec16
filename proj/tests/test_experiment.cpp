#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "krivine/experiment.hpp"

using namespace krivine;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "krivine_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KRIVINE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Parse) {
  const auto c = parse(
      "# comment\n"
      "experiment = approx\n"
      "\n"
      "dim=32\n seed = 9 \n"
      "deltas = 1, 0.5,0.2\n"
      "quad_n = 16,32\n"
      "measure.rule = trapezoid\n"
      "measure.a = -1\n"
      "norm = 2\n"
      "kernel = pnorm  # trailing\n");
  EXPECT_EQ(c.experiment, Experiment::approx);
  EXPECT_EQ(c.dim, 32u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.deltas, (std::vector<double>{1, 0.5, 0.2}));
  EXPECT_EQ(c.quad_ns, (std::vector<std::size_t>{16, 32}));
  EXPECT_EQ(c.measure.rule, QuadratureRule::trapezoid);
  EXPECT_EQ(c.measure.lower, -1.0);
  EXPECT_EQ(c.lattice_p, 2.0);
  EXPECT_EQ(c.kernel, "pnorm");
  EXPECT_FALSE(parse("norm = sup\n").lattice_p.has_value());
}

TEST(Config, Errors) {
  for (const char* bad : {"bogus = 1\n", "dim = x\n", "dim = -3\n", "deltas = 1,,2\n", "experiment = nope\n",
                          "no equals sign\n", "measure.rule = simpson\n", "tolerance = nan\n"}) {
    EXPECT_THROW(parse(bad), std::invalid_argument) << bad;
  }
  try {
    parse("dim = 4\nbogus = 1\n");
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_config("/nonexistent/krivine.cfg"), std::invalid_argument);
}

TEST(Config, Validate) {
  ExperimentConfig c;
  EXPECT_NO_THROW(validate(c));
  c.deltas = {0.5, 1.0};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.deltas = {};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.quad_ns = {64, 32};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.kmax = 40;
  c.atoms = 30;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.deltas = {3.0};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = {};
  c.lattice_p = 0.5;
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Report, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2 * 3.141592653589793, 1e-300, -7.25}) {
    EXPECT_EQ(std::strtod(format_number(v).c_str(), nullptr), v);
  }
}

TEST(Experiments, DeterministicOutputs) {
  for (auto e : {Experiment::kalton, Experiment::counterexample, Experiment::approx}) {
    ExperimentConfig c;
    c.experiment = e;
    c.dim = 16;
    std::string text[2], csv[2];
    for (int r = 0; r < 2; ++r) {
      c.out = scratch("det_" + experiment_name(e) + std::to_string(r) + ".csv").string();
      std::ostringstream os;
      EXPECT_EQ(run_experiment(c, os), ExitCode::pass) << os.str();
      text[r] = os.str();
      csv[r] = slurp(c.out);
    }
    EXPECT_EQ(text[0], text[1]);
    EXPECT_EQ(csv[0], csv[1]);
    EXPECT_FALSE(csv[0].empty());
  }
}

TEST(Experiments, ExitCodes) {
  ExperimentConfig c;
  c.quad_ns = {128};
  c.dim = 8;
  std::ostringstream sink;
  c.kernel = "squared";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::not_homogeneous);
  c.kernel = "counterexample";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::divergent_M);
  c.kernel = "singular";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::divergent_M);
  c.kernel = "zero";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::pass);
  c.kernel = "pnorm";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::pass);
  c.kernel = "nope";
  EXPECT_EQ(run_experiment(c, sink), ExitCode::bad_config);
  c.kernel = "kalton";
  c.deltas = {0.25, 0.5};
  EXPECT_EQ(run_experiment(c, sink), ExitCode::bad_config);
}

TEST(Experiments, CounterexampleCsv) {
  ExperimentConfig c;
  c.experiment = Experiment::counterexample;
  const auto r = run_counterexample(c);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_EQ(r.header, (std::vector<std::string>{"series", "k", "value", "expected", "abs_error"}));
  EXPECT_EQ(r.exit_code, ExitCode::pass);
}

TEST(Cli, ExitCodes) {
  const auto cfg = scratch("cli.cfg");
  {
    std::ofstream out(cfg);
    out << "dim = 8\nquad_n = 64\n";
  }
  EXPECT_EQ(run_cli("verify --config " + cfg.string() + " --kernel squared"), 3);
  EXPECT_EQ(run_cli("verify --config " + cfg.string() + " --kernel counterexample"), 2);
  EXPECT_EQ(run_cli("verify --config " + cfg.string() + " --kernel zero"), 0);
  EXPECT_EQ(run_cli("counterexample --kmax 10 --atoms 12"), 0);
  EXPECT_EQ(run_cli("approx --delta 0.5,1"), 4);
  EXPECT_EQ(run_cli("approx --config /nonexistent.cfg"), 4);
  EXPECT_EQ(run_cli("bogus"), 4);
  const auto csv = scratch("cli_out.csv");
  std::filesystem::remove(csv);
  EXPECT_EQ(run_cli("kalton --dim 8 --out " + csv.string()), 0);
  EXPECT_TRUE(std::filesystem::exists(csv));
}
