// krivine: experiments on the function calculus of Banach lattices.
//
//   krivine verify         F(x) against the Bochner integral of f(x, .)
//   krivine kalton         the same for |s + e^{i theta} t| on [0, 2 pi]
//   krivine counterexample discontinuous F from a non-integrable M
//   krivine approx         interpolation error of S against its epsilon
//
// Exit codes: 0 pass, 1 tolerance failure, 2 M not integrable,
// 3 kernel not homogeneous, 4 bad configuration.

#include <CLI11.hpp>
#include <iostream>

#include "krivine/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Function calculus and Bochner integration experiments"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out, mesh_out, kernel, function;
  std::uint64_t seed = 0;
  std::size_t dim = 0, kmax = 0, n = 0, atoms = 0;
  std::vector<double> deltas;
  std::vector<std::size_t> quad_ns;
  double tolerance = 0.0;

  auto* o_config = app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  auto* o_out = app.add_option("--out", out, "CSV output path");
  auto* o_seed = app.add_option("--seed", seed, "seed for the random lattice vectors");
  auto* o_dim = app.add_option("--dim", dim, "dimension of the lattice X = R^dim");
  auto* o_delta = app.add_option("--delta", deltas, "mesh sizes, decreasing")->delimiter(',');
  auto* o_quad = app.add_option("--quad-n", quad_ns, "quadrature node counts, increasing")->delimiter(',');
  auto* o_kmax = app.add_option("--kmax", kmax, "counterexample: largest k in F(1, 2^-k)");
  auto* o_atoms = app.add_option("--atoms", atoms, "counterexample: number of atoms of mu");
  auto* o_n = app.add_option("--n", n, "arity of the homogeneous functions");
  auto* o_kernel = app.add_option("--kernel", kernel, "verify: kalton, zero, pnorm, singular, squared, counterexample");
  auto* o_function = app.add_option("--function", function, "approx: linear, euclidean, constant, pnorm3");
  auto* o_tol = app.add_option("--tolerance", tolerance, "verify: matched-quadrature tolerance");
  auto* o_mesh = app.add_option("--mesh-out", mesh_out, "approx: dump the finest mesh as CSV");

  for (const char* name : {"verify", "kalton", "counterexample", "approx"}) {
    app.add_subcommand(name, std::string("run the ") + name + " experiment");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(krivine::ExitCode::bad_config);
  }

  krivine::ExperimentConfig config;
  try {
    if (*o_config) config = krivine::load_config(config_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return static_cast<int>(krivine::ExitCode::bad_config);
  }
  config.experiment = *krivine::parse_experiment(app.get_subcommands().front()->get_name());
  if (*o_out) config.out = out;
  if (*o_seed) config.seed = seed;
  if (*o_dim) config.dim = dim;
  if (*o_delta) config.deltas = deltas;
  if (*o_quad) config.quad_ns = quad_ns;
  if (*o_kmax) config.kmax = kmax;
  if (*o_atoms) config.atoms = atoms;
  if (*o_n) config.n = n;
  if (*o_kernel) config.kernel = kernel;
  if (*o_function) config.function = function;
  if (*o_tol) config.tolerance = tolerance;
  if (*o_mesh) config.mesh_out = mesh_out;

  return static_cast<int>(krivine::run_experiment(config, std::cout));
}
