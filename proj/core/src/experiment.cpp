#include "krivine/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "krivine/calculus.hpp"
#include "krivine/kernels.hpp"
#include "krivine/triangulation.hpp"

namespace krivine {

namespace {

// Rounding allowance for comparisons that hold exactly in real arithmetic.
constexpr double kRoundoff = 1e-12;
constexpr double kClosedFormTol = 1e-6;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty list item in '" + s + "'");
    out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + s + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& s) {
  if (s.empty() || s.front() == '-') throw std::invalid_argument("not a nonnegative integer: '" + s + "'");
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

double max_abs_diff(const LatticeVector& a, const LatticeVector& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

LatticeSpace make_space(const ExperimentConfig& config) {
  return config.lattice_p ? LatticeSpace::p_norm(config.dim, *config.lattice_p)
                          : LatticeSpace::sup(config.dim);
}

Kernel kernel_for(const ExperimentConfig& config) {
  if (config.kernel == "counterexample") return counterexample_kernel(config.atoms).first;
  return make_kernel(config.kernel, config.n);
}

std::optional<LatticeVector> reference_value(const ExperimentConfig& config,
                                             const CalculusContext& ctx) {
  if (config.kernel == "zero") return LatticeVector::zero(ctx.space());
  if (config.kernel != "kalton") return std::nullopt;
  std::vector<double> out(ctx.space().dim());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = kalton_closed_form(ctx.x()[0][k], ctx.x()[1][k]);
  }
  return LatticeVector(ctx.space(), std::move(out));
}

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

Report verify_impl(const ExperimentConfig& config, bool kalton_pins) {
  validate(config);
  Report report;
  report.title = kalton_pins ? "kalton identity" : "theorem verification (" + config.kernel + ")";
  report.header = {"kind", "parameter", "discrepancy", "reference_error", "route_gap", "certificate"};

  const Kernel kernel = kernel_for(config);
  const MeasureSpace first =
      default_measure(config.kernel, config.quad_ns.front(), config.atoms, config.measure);

  // Hypotheses: F and every slice f(., omega) in H_n, then M integrable.
  const auto slices = check_kernel_homogeneous(kernel, first);
  const auto f_report = check_homogeneous(kernel.arity(), scalar_F_evaluator(kernel, first), 64);
  if (!slices.pass || !f_report.pass) {
    report.lines.push_back("REFUSED: kernel '" + kernel.name() + "' is not positively homogeneous");
    report.lines.push_back("  worst relative violation of F(lambda s) = lambda F(s): " +
                           format_number(std::max(f_report.worst_violation, slices.worst_violation)));
    report.lines.push_back("  the function calculus is only defined on continuous positively homogeneous functions");
    report.exit_code = ExitCode::not_homogeneous;
    return report;
  }
  const auto m_report = check_M_integrable(kernel, first);
  if (m_report.verdict == Integrability::divergent) {
    report.lines.push_back("REFUSED: M(omega) = |f(., omega)|_C(S) is not integrable");
    report.lines.push_back("  " + m_report.detail);
    report.lines.push_back("  f(x, .) is Bochner integrable iff |f(x, .)| is; with x_i = pi_i this is exactly M,");
    report.lines.push_back("  so the hypothesis cannot be dropped");
    report.exit_code = ExitCode::divergent_M;
    return report;
  }
  report.lines.push_back("hypotheses: homogeneous (worst violation " +
                         format_number(f_report.worst_violation) + "), " + m_report.detail);

  const LatticeSpace space = make_space(config);
  auto x = random_tuple(space, kernel.arity(), config.seed);
  if (kalton_pins) {
    if (config.dim < 2) throw std::invalid_argument("kalton experiment needs dim >= 2");
    std::vector<double> u(x[0].coords().begin(), x[0].coords().end());
    std::vector<double> v(x[1].coords().begin(), x[1].coords().end());
    u[0] = 1.0, v[0] = 1.0;
    u[1] = 1.0, v[1] = 0.0;
    x = {LatticeVector(space, u), LatticeVector(space, v)};
  }
  const CalculusContext ctx(std::move(x));

  bool ok = true;
  std::vector<std::size_t> schedule = config.quad_ns;
  if (first.kind() == MeasureSpace::Kind::discrete) schedule = {first.nodes()};

  MeasureSpace measure = first;
  LatticeVector lhs = LatticeVector::zero(space);
  for (std::size_t N : schedule) {
    const auto start = Clock::now();
    measure = first.kind() == MeasureSpace::Kind::interval ? first.with_nodes(N) : first;
    const HomogeneousFn F = scalar_F(kernel, measure);
    lhs = phi_pointwise(ctx, F);
    const LatticeVector rhs = bochner_integral(
        [&](double omega) { return phi_pointwise(ctx, kernel.slice(omega)); }, measure);
    const double gap = norm(lhs - rhs);
    const auto ref = reference_value(config, ctx);
    const double ref_err = ref ? max_abs_diff(lhs, *ref) : std::nan("");
    report.wall_ms.push_back(elapsed_ms(start));

    const bool row_ok = gap <= config.tolerance;
    ok = ok && row_ok;
    report.rows.push_back({"quad", std::to_string(N), format_number(gap),
                           ref ? format_number(ref_err) : "", "", ""});
    std::string line = "N=" + std::to_string(N) + "  |F(x) - int f(x,w) dmu| = " +
                       format_number(gap) + "  [" + pass_fail(row_ok) + "]";
    if (ref) line += "  |F(x) - closed form|_inf = " + format_number(ref_err);
    report.lines.push_back(line);

    const double norm_of_integral = norm(rhs);
    const double integral_of_norm = integrate_norm(
        [&](double omega) { return phi_pointwise(ctx, kernel.slice(omega)); }, measure);
    report.lines.push_back("  |int f(x,w) dmu| = " + format_number(norm_of_integral) +
                           " <= int |f(x,w)| dmu = " + format_number(integral_of_norm));

    if (kalton_pins) {
      const double e11 = std::fabs(lhs[0] - 8.0);
      const double e10 = std::fabs(lhs[1] - 2.0 * std::numbers::pi);
      const bool closed_ok = e11 <= kClosedFormTol && e10 <= kClosedFormTol;
      ok = ok && closed_ok;
      report.lines.push_back("  F(1,1) = " + format_number(lhs[0]) + " (8, error " + format_number(e11) +
                             "), F(1,0) = " + format_number(lhs[1]) + " (2 pi, error " +
                             format_number(e10) + ")  [" + pass_fail(closed_ok) + "]");
    }
  }

  // Lattice-term route: Phi(SF) against int sum_j f(s_j, w) Phi(d_j) dmu.
  const HomogeneousFn F = HomogeneousFn::trusted(kernel.arity(), scalar_F_evaluator(kernel, measure));
  for (double delta : config.deltas) {
    const auto start = Clock::now();
    const auto tri = Triangulation::build(kernel.arity(), delta);
    const auto hats = hat_images(ctx, tri);
    const auto approx = phi_approx(ctx, F, delta);
    const LatticeVector term_rhs = bochner_integral(
        [&](double omega) {
          LatticeVector acc = LatticeVector::zero(space);
          for (std::size_t j = 0; j < hats.size(); ++j) acc = axpy(acc, kernel(tri.node(j), omega), hats[j]);
          return acc;
        },
        measure);
    const double gap = norm(approx.value - term_rhs);
    const double route_gap = norm(approx.value - lhs);
    report.wall_ms.push_back(elapsed_ms(start));

    const bool row_ok = route_gap <= approx.certificate + kRoundoff;
    ok = ok && row_ok;
    report.rows.push_back({"delta", format_number(delta), format_number(gap), "",
                           format_number(route_gap), format_number(approx.certificate)});
    report.lines.push_back("delta=" + format_number(delta) + " (m=" + std::to_string(tri.node_count()) +
                           ")  |G(x) - int g(x,w) dmu| = " + format_number(gap) +
                           "  |G(x) - F(x)| = " + format_number(route_gap) +
                           " <= certificate " + format_number(approx.certificate) + "  [" +
                           pass_fail(row_ok) + "]");
  }

  report.exit_code = ok ? ExitCode::pass : ExitCode::tolerance_fail;
  report.lines.push_back(std::string("verdict: ") + pass_fail(ok));
  return report;
}

struct ApproxTarget {
  HomogeneousFn H;
  std::string label;
};

ApproxTarget approx_target(const std::string& id, std::size_t n) {
  if (id == "linear") return {coordinate_projection(0, n), "pi_0"};
  if (id == "euclidean") {
    return {HomogeneousFn(
                n,
                [](std::span<const double> s) {
                  double acc = 0.0;
                  for (double v : s) acc += v * v;
                  return std::sqrt(acc);
                },
                Modulus{std::sqrt(static_cast<double>(n))}),
            "euclidean norm"};
  }
  if (id == "constant") {
    return {extend(n, [](std::span<const double>) { return 1.0; }, Modulus{0.0}),
            "constant 1 on the sphere"};
  }
  if (id == "pnorm3") return {p_sum_function(n, 3.0), "l3 norm"};
  throw std::invalid_argument("unknown approx function '" + id + "'");
}

}  // namespace

std::optional<Experiment> parse_experiment(const std::string& name) {
  if (name == "verify") return Experiment::verify;
  if (name == "kalton") return Experiment::kalton;
  if (name == "counterexample") return Experiment::counterexample;
  if (name == "approx") return Experiment::approx;
  return std::nullopt;
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::verify: return "verify";
    case Experiment::kalton: return "kalton";
    case Experiment::counterexample: return "counterexample";
    case Experiment::approx: return "approx";
  }
  return "?";
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig config) {
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "experiment") {
        auto e = parse_experiment(value);
        if (!e) throw std::invalid_argument("unknown experiment '" + value + "'");
        config.experiment = *e;
      } else if (key == "dim") {
        config.dim = to_unsigned(value);
      } else if (key == "seed") {
        config.seed = to_unsigned(value);
      } else if (key == "n") {
        config.n = to_unsigned(value);
      } else if (key == "kernel") {
        config.kernel = value;
      } else if (key == "function") {
        config.function = value;
      } else if (key == "measure.a") {
        config.measure.lower = to_double(value);
      } else if (key == "measure.b") {
        config.measure.upper = to_double(value);
      } else if (key == "measure.rule") {
        auto r = parse_rule(value);
        if (!r) throw std::invalid_argument("unknown quadrature rule '" + value + "'");
        config.measure.rule = *r;
      } else if (key == "deltas") {
        config.deltas.clear();
        for (const auto& item : split_list(value)) config.deltas.push_back(to_double(item));
      } else if (key == "quad_n") {
        config.quad_ns.clear();
        for (const auto& item : split_list(value)) config.quad_ns.push_back(to_unsigned(item));
      } else if (key == "kmax") {
        config.kmax = to_unsigned(value);
      } else if (key == "atoms") {
        config.atoms = to_unsigned(value);
      } else if (key == "tolerance") {
        config.tolerance = to_double(value);
      } else if (key == "norm") {
        if (value == "sup") {
          config.lattice_p.reset();
        } else {
          config.lattice_p = to_double(value);
        }
      } else if (key == "out") {
        config.out = value;
      } else if (key == "mesh_out") {
        config.mesh_out = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

void validate(const ExperimentConfig& config) {
  if (config.dim == 0) throw std::invalid_argument("dim must be >= 1");
  if (config.n < 2) throw std::invalid_argument("n must be >= 2");
  if (config.deltas.empty()) throw std::invalid_argument("delta schedule is empty");
  if (config.quad_ns.empty()) throw std::invalid_argument("quadrature schedule is empty");
  for (std::size_t i = 0; i < config.deltas.size(); ++i) {
    const double d = config.deltas[i];
    if (!(d > 0.0 && d <= 2.0)) throw std::invalid_argument("deltas must lie in (0, 2]");
    if (i > 0 && !(d < config.deltas[i - 1])) throw std::invalid_argument("deltas must be strictly decreasing");
  }
  for (std::size_t i = 0; i < config.quad_ns.size(); ++i) {
    if (config.quad_ns[i] < 2) throw std::invalid_argument("quadrature node counts must be >= 2");
    if (i > 0 && config.quad_ns[i] <= config.quad_ns[i - 1]) {
      throw std::invalid_argument("quadrature node counts must be strictly increasing");
    }
  }
  if (config.atoms == 0) throw std::invalid_argument("atoms must be >= 1");
  if (config.kmax == 0 || config.kmax > config.atoms) {
    throw std::invalid_argument("kmax must lie in [1, atoms]");
  }
  if (!(config.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  if (config.lattice_p && !(*config.lattice_p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Report::write_text(std::ostream& out) const {
  out << "== " << title << " ==\n";
  for (const auto& line : lines) out << line << '\n';
}

void Report::write_csv(std::ostream& out) const {
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

std::vector<LatticeVector> random_tuple(const LatticeSpace& space, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(space.dim());
    for (auto& v : c) v = coord(rng);
    out.emplace_back(space, std::move(c));
  }
  return out;
}

Report verify_theorem(const ExperimentConfig& config) { return verify_impl(config, false); }

Report run_kalton(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.kernel = "kalton";
  c.n = 2;
  return verify_impl(c, true);
}

Report run_counterexample(const ExperimentConfig& config) {
  validate(config);
  Report report;
  report.title = "discontinuous F from a non-integrable M";
  report.header = {"series", "k", "value", "expected", "abs_error"};
  const auto start = Clock::now();

  const auto [kernel, measure] = counterexample_kernel(config.atoms);
  const HomogeneousFn F = scalar_F(kernel, measure);
  bool ok = true;

  const double at_zero = F({1.0, 0.0});
  ok = ok && at_zero == 0.0;
  report.rows.push_back({"F", "0", format_number(at_zero), "0", format_number(std::fabs(at_zero))});
  report.lines.push_back("F(1,0) = " + format_number(at_zero));

  bool witness = true;
  for (std::size_t k = 1; k <= config.kmax; ++k) {
    const int ki = static_cast<int>(k);
    const double t = std::ldexp(1.0, -ki);
    const double value = F({1.0, t});
    const double expected = 2.0 - std::ldexp(1.0, 1 - ki);
    const double err = std::fabs(value - expected);
    ok = ok && err <= kRoundoff;
    witness = witness && std::fabs(value - at_zero) >= 1.0;
    report.rows.push_back({"F", std::to_string(k), format_number(value), format_number(expected),
                           format_number(err)});
    report.lines.push_back("F(1,2^-" + std::to_string(k) + ") = " + format_number(value) +
                           "  expected 2 - 2^(1-k) = " + format_number(expected));
  }

  const auto m = check_M_integrable(kernel, measure);
  bool sums_exact = true;
  for (std::size_t K = 1; K <= m.partial_sums.size(); ++K) {
    const double expected = static_cast<double>(K);
    sums_exact = sums_exact && m.partial_sums[K - 1] == expected;
    report.rows.push_back({"M_partial", std::to_string(K), format_number(m.partial_sums[K - 1]),
                           format_number(expected), format_number(std::fabs(m.partial_sums[K - 1] - expected))});
  }
  const bool divergent = m.verdict == Integrability::divergent;
  report.lines.push_back("partial sums of int M dmu over K = 1.." + std::to_string(m.partial_sums.size()) +
                         " equal K: " + (sums_exact ? "yes" : "no"));
  report.lines.push_back(std::string("M integrability: ") + (divergent ? "DIVERGENT" : "CONVERGED") +
                         " (" + m.detail + ")");
  report.lines.push_back(std::string("discontinuity witness |F(1,2^-k) - F(1,0)| >= 1 while |(1,2^-k) - (1,0)|_inf -> 0: ") +
                         (witness ? "yes" : "no"));
  ok = ok && sums_exact && divergent && witness;
  report.wall_ms.push_back(elapsed_ms(start));
  report.exit_code = ok ? ExitCode::pass : ExitCode::tolerance_fail;
  report.lines.push_back(std::string("verdict: ") + pass_fail(ok));
  return report;
}

Report run_approx(const ExperimentConfig& config) {
  validate(config);
  const auto target = approx_target(config.function, config.n);
  Report report;
  report.title = "interpolation operator S on " + target.label + " (n=" + std::to_string(config.n) + ")";
  report.header = {"delta", "nodes", "simplices", "sampled_error", "certified_epsilon"};

  std::mt19937_64 rng(config.seed);
  std::vector<Point> dense;
  for (int i = 0; i < 4096; ++i) dense.push_back(sample_sphere(config.n, rng));

  bool ok = true;
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : config.deltas) {
    const auto start = Clock::now();
    const auto tri = Triangulation::build(config.n, delta);
    const auto SH = interpolate(tri, target.H);
    const double err = sup_norm(SH - target.H, tri, 3, dense);
    const double eps = target.H.modulus()->epsilon_for(delta);
    report.wall_ms.push_back(elapsed_ms(start));
    const bool row_ok = err <= eps + kRoundoff;
    ok = ok && row_ok;
    monotone = monotone && err < previous;
    previous = err;
    report.rows.push_back({format_number(delta), std::to_string(tri.node_count()),
                           std::to_string(tri.simplex_count()), format_number(err), format_number(eps)});
    report.lines.push_back("delta=" + format_number(delta) + " m=" + std::to_string(tri.node_count()) +
                           "  sampled |SH - H| = " + format_number(err) + " <= epsilon " +
                           format_number(eps) + "  [" + pass_fail(row_ok) + "]");
    if (!config.mesh_out.empty() && delta == config.deltas.back()) {
      std::ofstream mesh(config.mesh_out);
      if (!mesh) throw std::invalid_argument("cannot write mesh file '" + config.mesh_out + "'");
      write_mesh_csv(tri, mesh);
    }
  }
  report.lines.push_back(std::string("errors strictly decreasing: ") + (monotone ? "yes" : "no"));
  report.exit_code = ok ? ExitCode::pass : ExitCode::tolerance_fail;
  report.lines.push_back(std::string("verdict: ") + pass_fail(ok));
  return report;
}

ExitCode run_experiment(const ExperimentConfig& config, std::ostream& text) {
  Report report;
  try {
    switch (config.experiment) {
      case Experiment::verify: report = verify_theorem(config); break;
      case Experiment::kalton: report = run_kalton(config); break;
      case Experiment::counterexample: report = run_counterexample(config); break;
      case Experiment::approx: report = run_approx(config); break;
    }
  } catch (const std::invalid_argument& e) {
    text << "configuration error: " << e.what() << '\n';
    return ExitCode::bad_config;
  }
  report.write_text(text);
  if (!config.out.empty()) {
    std::ofstream csv(config.out);
    if (!csv) {
      text << "configuration error: cannot write '" << config.out << "'\n";
      return ExitCode::bad_config;
    }
    report.write_csv(csv);
  }
  return report.exit_code;
}

}  // namespace krivine
