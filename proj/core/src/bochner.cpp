#include "krivine/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace krivine {

MeasureSpace MeasureSpace::discrete(std::vector<Atom> atoms, bool truncated_sequence) {
  if (atoms.empty()) throw std::invalid_argument("discrete measure needs at least one atom");
  MeasureSpace m;
  m.kind_ = Kind::discrete;
  for (const auto& a : atoms) {
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight) || !std::isfinite(a.omega)) {
      throw std::invalid_argument("atom weights must be finite and nonnegative");
    }
    m.total_mass_ += a.weight;
  }
  m.atoms_ = std::move(atoms);
  m.truncated_ = truncated_sequence;
  return m;
}

MeasureSpace MeasureSpace::interval(double a, double b, QuadratureRule rule, std::size_t nodes) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("interval measure needs finite a < b");
  }
  if (nodes == 0 || (rule == QuadratureRule::trapezoid && nodes < 2)) {
    throw std::invalid_argument("too few quadrature nodes");
  }
  MeasureSpace m;
  m.kind_ = Kind::interval;
  m.a_ = a;
  m.b_ = b;
  m.rule_ = rule;
  m.total_mass_ = b - a;
  m.atoms_.reserve(nodes);
  const double N = static_cast<double>(nodes);
  switch (rule) {
    case QuadratureRule::midpoint: {
      const double h = (b - a) / N;
      for (std::size_t i = 0; i < nodes; ++i) m.atoms_.push_back({a + (static_cast<double>(i) + 0.5) * h, h});
      break;
    }
    case QuadratureRule::trapezoid: {
      const double h = (b - a) / (N - 1.0);
      for (std::size_t i = 0; i < nodes; ++i) {
        const bool end = i == 0 || i + 1 == nodes;
        m.atoms_.push_back({a + static_cast<double>(i) * h, end ? h / 2 : h});
      }
      break;
    }
    case QuadratureRule::periodic_trapezoid: {
      const double h = (b - a) / N;
      for (std::size_t i = 0; i < nodes; ++i) m.atoms_.push_back({a + static_cast<double>(i) * h, h});
      break;
    }
  }
  return m;
}

MeasureSpace MeasureSpace::with_nodes(std::size_t nodes) const {
  if (kind_ != Kind::interval) throw std::logic_error("with_nodes needs an interval measure");
  return interval(a_, b_, rule_, nodes);
}

MeasureSpace MeasureSpace::prefix(std::size_t count) const {
  if (kind_ != Kind::discrete) throw std::logic_error("prefix needs a discrete measure");
  if (count == 0 || count > atoms_.size()) throw std::out_of_range("prefix length out of range");
  return discrete({atoms_.begin(), atoms_.begin() + static_cast<std::ptrdiff_t>(count)}, truncated_);
}

Kernel::Kernel(std::string name, std::size_t arity, KernelEval f,
               std::optional<Modulus> uniform_modulus, PeakFinder peaks)
    : name_(std::move(name)),
      arity_(arity),
      f_(std::move(f)),
      modulus_(uniform_modulus),
      peaks_(std::move(peaks)) {
  if (arity_ == 0) throw std::invalid_argument("kernel arity must be >= 1");
  if (!f_) throw std::invalid_argument("empty kernel evaluator");
}

double Kernel::operator()(std::span<const double> s, double omega) const {
  if (s.size() != arity_) throw std::invalid_argument("kernel evaluated at point of wrong arity");
  return f_(s, omega);
}

HomogeneousFn Kernel::slice(double omega) const {
  return HomogeneousFn::trusted(
      arity_, [f = f_, omega](std::span<const double> s) { return f(s, omega); }, modulus_,
      peaks_ ? peaks_(omega) : std::vector<Point>{});
}

Evaluator scalar_F_evaluator(const Kernel& kernel, const MeasureSpace& measure) {
  return [kernel, measure](std::span<const double> s) {
    double acc = 0.0;
    for (const auto& atom : measure.atoms()) {
      const double v = kernel(s, atom.omega);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "kernel '" << kernel.name() << "' is not finite at s=(";
        for (std::size_t i = 0; i < s.size(); ++i) msg << (i ? "," : "") << s[i];
        msg << "), omega=" << atom.omega;
        throw std::domain_error(msg.str());
      }
      acc += atom.weight * v;
    }
    return acc;
  };
}

HomogeneousFn scalar_F(const Kernel& kernel, const MeasureSpace& measure) {
  std::optional<Modulus> modulus;
  if (kernel.uniform_modulus()) {
    modulus = Modulus{kernel.uniform_modulus()->lipschitz * measure.total_mass()};
  }
  return HomogeneousFn(kernel.arity(), scalar_F_evaluator(kernel, measure), modulus);
}

KernelHomogeneityReport check_kernel_homogeneous(const Kernel& kernel, const MeasureSpace& measure,
                                                 std::size_t samples, double tol) {
  KernelHomogeneityReport report;
  const auto atoms = measure.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double omega = atoms[i].omega;
    const auto r = check_homogeneous(
        kernel.arity(), [&](std::span<const double> s) { return kernel(s, omega); }, samples, tol,
        0x5eed + i);
    report.worst_violation = std::max(report.worst_violation, r.worst_violation);
    if (!r.pass) {
      report.failing_atoms.push_back(i);
      report.failing_weight += atoms[i].weight;
    }
  }
  report.pass = report.failing_weight == 0.0;
  return report;
}

std::pair<Kernel, MeasureSpace> counterexample_kernel(std::size_t max_k) {
  if (max_k == 0) throw std::invalid_argument("counterexample needs max_k >= 1");
  auto f = [](std::span<const double> s, double omega) {
    const double r = sup_norm_inf(s);
    if (r == 0.0 || s[0] != r) return 0.0;  // only the face x_0 = 1 carries mass
    const int k = static_cast<int>(omega);
    const double t = s[1] / r;
    const double peak = std::ldexp(1.0, -k);
    if (t < 0.0 || t > 2.0 * peak) return 0.0;
    const double height = std::ldexp(1.0, k);
    return r * (height - std::ldexp(1.0, 2 * k) * std::fabs(t - peak));
  };
  auto peaks = [](double omega) {
    return std::vector<Point>{{1.0, std::ldexp(1.0, -static_cast<int>(omega))}};
  };
  std::vector<Atom> atoms;
  for (std::size_t k = 1; k <= max_k; ++k) {
    atoms.push_back({static_cast<double>(k), std::ldexp(1.0, -static_cast<int>(k))});
  }
  return {Kernel("counterexample", 2, f, std::nullopt, peaks),
          MeasureSpace::discrete(std::move(atoms), true)};
}

double M_function(const Kernel& kernel, double omega, const Triangulation& mesh, int refine) {
  return sup_norm(kernel.slice(omega), mesh, refine);
}

MIntegrabilityReport check_M_integrable(const Kernel& kernel, const MeasureSpace& measure,
                                        const MIntegrabilityOptions& options) {
  MIntegrabilityReport report;
  const auto mesh = Triangulation::build(kernel.arity(), options.mesh_delta);
  std::ostringstream detail;

  auto quadrature_of_M = [&](const MeasureSpace& m) {
    double acc = 0.0;
    for (const auto& atom : m.atoms()) {
      acc += atom.weight * M_function(kernel, atom.omega, mesh, options.refine);
    }
    return acc;
  };

  if (measure.kind() == MeasureSpace::Kind::discrete) {
    double acc = 0.0;
    for (const auto& atom : measure.atoms()) {
      acc += atom.weight * M_function(kernel, atom.omega, mesh, options.refine);
      report.partial_sums.push_back(acc);
    }
    report.value = acc;
    if (!std::isfinite(acc)) {
      report.verdict = Integrability::divergent;
      detail << "partial sums are not finite";
    } else if (!measure.truncated_sequence()) {
      detail << "finite atom set: integral of M = " << acc;
    } else {
      const std::size_t count = report.partial_sums.size();
      const std::size_t window = std::min(options.growth_window, count - 1);
      const double before = count > window ? report.partial_sums[count - 1 - window] : 0.0;
      const double growth = acc - before;
      if (window > 0 && growth > options.tol) {
        report.verdict = Integrability::divergent;
        detail << "partial sums grew by " << growth << " over the last " << window
               << " atoms (tolerance " << options.tol << ")";
      } else {
        detail << "partial sums settled at " << acc;
      }
    }
  } else {
    std::size_t nodes = measure.nodes();
    double prev_increment = -1.0;
    for (std::size_t level = 0; level < std::max<std::size_t>(options.refinement_levels, 2); ++level) {
      report.partial_sums.push_back(quadrature_of_M(measure.with_nodes(nodes)));
      nodes *= 2;
      if (level == 0) continue;
      const double inc = std::fabs(report.partial_sums[level] - report.partial_sums[level - 1]);
      if (level + 1 == std::max<std::size_t>(options.refinement_levels, 2)) {
        const bool contracting = prev_increment < 0.0 || inc <= 0.5 * prev_increment;
        if (!std::isfinite(inc) || (inc > options.tol && !contracting)) {
          report.verdict = Integrability::divergent;
          detail << "quadrature of M keeps changing under refinement (last change " << inc << ")";
        }
      }
      prev_increment = inc;
    }
    report.value = report.partial_sums.back();
    if (report.verdict == Integrability::converged) {
      detail << "quadrature of M converges to " << report.value;
    }
  }
  report.detail = detail.str();
  return report;
}

LatticeVector bochner_integral(const VectorIntegrand& g, const MeasureSpace& measure) {
  const auto atoms = measure.atoms();
  LatticeVector acc = atoms.front().weight * g(atoms.front().omega);
  for (const auto& atom : atoms.subspan(1)) acc = axpy(acc, atom.weight, g(atom.omega));
  return acc;
}

double integrate_norm(const VectorIntegrand& g, const MeasureSpace& measure) {
  double acc = 0.0;
  for (const auto& atom : measure.atoms()) acc += atom.weight * norm(g(atom.omega));
  return acc;
}

double integrate_scalar(const std::function<double(double)>& u, const MeasureSpace& measure) {
  double acc = 0.0;
  for (const auto& atom : measure.atoms()) acc += atom.weight * u(atom.omega);
  return acc;
}

}  // namespace krivine
