#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krivine/bochner.hpp"
#include "krivine/kernels.hpp"
#include "krivine/lattice.hpp"

namespace krivine {

/// Process exit codes of every experiment. Stable contract.
enum class ExitCode : int {
  pass = 0,
  tolerance_fail = 1,
  divergent_M = 2,
  not_homogeneous = 3,
  bad_config = 4,
};

enum class Experiment { verify, kalton, counterexample, approx };

std::optional<Experiment> parse_experiment(const std::string& name);
std::string experiment_name(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::verify;
  std::size_t dim = 64;
  std::uint64_t seed = 1;
  std::size_t n = 2;
  std::string kernel = "kalton";
  /// approx only: linear, euclidean, constant, pnorm3, quadratic
  std::string function = "euclidean";
  MeasureOverride measure;
  std::vector<double> deltas{1.0, 0.5, 0.25, 0.125};
  std::vector<std::size_t> quad_ns{4096};
  std::size_t kmax = 20;
  std::size_t atoms = 30;
  double tolerance = 1e-12;
  /// sup or a p-norm exponent >= 1 for the lattice X
  std::optional<double> lattice_p;
  std::string out;
  std::string mesh_out;
};

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Lists are comma separated. Keys:
///   experiment, dim, seed, n, kernel, function, measure.a, measure.b,
///   measure.rule, deltas, quad_n, kmax, atoms, tolerance, norm, out, mesh_out
/// where `norm` is `sup` or a p-norm exponent. Unknown keys and malformed
/// values throw std::invalid_argument naming the line.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Nonempty schedules, deltas strictly decreasing in (0, 2], quadrature
/// node counts strictly increasing. Throws std::invalid_argument.
void validate(const ExperimentConfig& config);

/// Human-readable lines plus one CSV table. Wall times are recorded but
/// kept out of both outputs so reports are byte-identical across runs.
struct Report {
  std::string title;
  std::vector<std::string> lines;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<double> wall_ms;
  ExitCode exit_code = ExitCode::pass;

  void write_text(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
};

/// %.17g, the shortest form that round-trips through strtod.
std::string format_number(double v);

/// Seeded vectors with entries uniform in [-1, 1].
std::vector<LatticeVector> random_tuple(const LatticeSpace& space, std::size_t n, std::uint64_t seed);

/// F(x) against the Bochner integral of f(x, .), per quadrature size at
/// matched quadrature, then through the lattice-term route per delta.
/// Refuses with not_homogeneous or divergent_M when the hypotheses fail.
Report verify_theorem(const ExperimentConfig& config);

/// verify_theorem on the Kalton kernel with coordinates 0 and 1 of (u, v)
/// pinned to (1, 1) and (1, 0) and checked against 8 and 2 pi.
Report run_kalton(const ExperimentConfig& config);

Report run_counterexample(const ExperimentConfig& config);

/// Sampled |SH - H| against the certified epsilon per delta.
Report run_approx(const ExperimentConfig& config);

/// Dispatches on config.experiment, prints the text report to `text`,
/// writes the CSV to config.out when set, and returns the exit code.
ExitCode run_experiment(const ExperimentConfig& config, std::ostream& text);

}  // namespace krivine
