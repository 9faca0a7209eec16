#include "krivine/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "krivine/triangulation.hpp"

namespace krivine {

namespace {

constexpr double kConstructTol = 1e-10;
constexpr std::size_t kConstructSamples = 64;

std::optional<Modulus> combine(const HomogeneousFn& f, const HomogeneousFn& g) {
  if (f.modulus() && g.modulus()) return Modulus{f.modulus()->lipschitz + g.modulus()->lipschitz};
  return std::nullopt;
}

std::vector<Point> merge_hints(const HomogeneousFn& f, const HomogeneousFn& g) {
  std::vector<Point> out = f.hints();
  out.insert(out.end(), g.hints().begin(), g.hints().end());
  return out;
}

void require_same_arity(const HomogeneousFn& f, const HomogeneousFn& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("homogeneous functions differ in arity");
}

}  // namespace

double Modulus::delta_for(double eps) const {
  if (lipschitz <= 0.0) return std::numeric_limits<double>::infinity();
  return eps / lipschitz;
}

HomogeneousFn::HomogeneousFn(Trusted, std::size_t arity, Evaluator f,
                             std::optional<Modulus> modulus, std::vector<Point> hints)
    : arity_(arity), f_(std::move(f)), modulus_(modulus), hints_(std::move(hints)) {
  if (arity_ == 0) throw std::invalid_argument("arity must be >= 1");
  if (!f_) throw std::invalid_argument("empty evaluator");
}

HomogeneousFn::HomogeneousFn(std::size_t arity, Evaluator f, std::optional<Modulus> modulus,
                             std::vector<Point> hints)
    : HomogeneousFn(Trusted{}, arity, std::move(f), modulus, std::move(hints)) {
  const auto report = check_homogeneous(arity_, f_, kConstructSamples, kConstructTol);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "function is not positively homogeneous: relative violation "
        << report.worst_violation << " at lambda=" << report.worst_lambda;
    throw std::domain_error(msg.str());
  }
}

HomogeneousFn HomogeneousFn::trusted(std::size_t arity, Evaluator f,
                                     std::optional<Modulus> modulus, std::vector<Point> hints) {
  return {Trusted{}, arity, std::move(f), modulus, std::move(hints)};
}

double HomogeneousFn::operator()(std::span<const double> s) const {
  if (s.size() != arity_) throw std::invalid_argument("argument size does not match arity");
  return f_(s);
}

double HomogeneousFn::operator()(std::initializer_list<double> s) const {
  return (*this)(std::span<const double>(s.begin(), s.size()));
}

HomogeneousFn HomogeneousFn::with_modulus(Modulus m) const {
  return trusted(arity_, f_, m, hints_);
}

HomogeneousFn HomogeneousFn::with_hints(std::vector<Point> hints) const {
  return trusted(arity_, f_, modulus_, std::move(hints));
}

HomogeneousFn coordinate_projection(std::size_t i, std::size_t n) {
  if (i >= n) throw std::out_of_range("projection index out of range");
  return HomogeneousFn::trusted(
      n, [i](std::span<const double> s) { return s[i]; }, Modulus{1.0});
}

double sup_norm_inf(std::span<const double> s) {
  double r = 0.0;
  for (double v : s) r = std::max(r, std::fabs(v));
  return r;
}

HomogeneousFn extend(std::size_t n, Evaluator h, std::optional<Modulus> modulus) {
  return HomogeneousFn::trusted(
      n,
      [h = std::move(h)](std::span<const double> s) {
        const double r = sup_norm_inf(s);
        if (r == 0.0) return 0.0;
        Point u(s.begin(), s.end());
        for (double& v : u) v /= r;
        return r * h(u);
      },
      modulus);
}

Evaluator restrict_to_sphere(const HomogeneousFn& F) { return F.evaluator(); }

HomogeneousFn sup(const HomogeneousFn& f, const HomogeneousFn& g) {
  require_same_arity(f, g);
  return HomogeneousFn::trusted(
      f.arity(), [f, g](std::span<const double> s) { return std::max(f(s), g(s)); },
      // max of two L-Lipschitz functions is max(Lf, Lg)-Lipschitz
      (f.modulus() && g.modulus())
          ? std::optional<Modulus>(Modulus{std::max(f.modulus()->lipschitz, g.modulus()->lipschitz)})
          : std::nullopt,
      merge_hints(f, g));
}

HomogeneousFn inf(const HomogeneousFn& f, const HomogeneousFn& g) {
  require_same_arity(f, g);
  return HomogeneousFn::trusted(
      f.arity(), [f, g](std::span<const double> s) { return std::min(f(s), g(s)); },
      (f.modulus() && g.modulus())
          ? std::optional<Modulus>(Modulus{std::max(f.modulus()->lipschitz, g.modulus()->lipschitz)})
          : std::nullopt,
      merge_hints(f, g));
}

HomogeneousFn abs(const HomogeneousFn& f) {
  return HomogeneousFn::trusted(
      f.arity(), [f](std::span<const double> s) { return std::fabs(f(s)); }, f.modulus(),
      f.hints());
}

HomogeneousFn operator+(const HomogeneousFn& f, const HomogeneousFn& g) {
  require_same_arity(f, g);
  return HomogeneousFn::trusted(
      f.arity(), [f, g](std::span<const double> s) { return f(s) + g(s); }, combine(f, g),
      merge_hints(f, g));
}

HomogeneousFn operator-(const HomogeneousFn& f, const HomogeneousFn& g) {
  require_same_arity(f, g);
  return HomogeneousFn::trusted(
      f.arity(), [f, g](std::span<const double> s) { return f(s) - g(s); }, combine(f, g),
      merge_hints(f, g));
}

HomogeneousFn operator*(double c, const HomogeneousFn& f) {
  std::optional<Modulus> m;
  if (f.modulus()) m = Modulus{std::fabs(c) * f.modulus()->lipschitz};
  return HomogeneousFn::trusted(
      f.arity(), [c, f](std::span<const double> s) { return c * f(s); }, m, f.hints());
}

HomogeneityReport check_homogeneous(std::size_t n, const Evaluator& f, std::size_t samples,
                                    double tol, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("check_homogeneous needs samples > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> log_radius(-1.0, 1.0);
  std::uniform_real_distribution<double> lam(0.0, 4.0);

  HomogeneityReport report;
  report.samples = samples;

  auto record = [&](double violation, const Point& s, double lambda) {
    if (!(violation <= report.worst_violation)) {  // catches NaN
      report.worst_violation = std::isnan(violation) ? std::numeric_limits<double>::infinity()
                                                     : violation;
      report.worst_point = s;
      report.worst_lambda = lambda;
    }
  };

  const Point origin(n, 0.0);
  const double at_zero = f(origin);
  record(std::fabs(at_zero), origin, 0.0);

  Point s(n), scaled(n);
  for (std::size_t i = 0; i < samples; ++i) {
    const double radius = std::pow(10.0, log_radius(rng));
    for (auto& v : s) v = radius * coord(rng);
    // every eighth sample probes lambda = 0 and a few probe the integers
    const double lambda = (i % 8 == 0) ? 0.0 : (i % 8 == 1) ? 2.0 : lam(rng);
    for (std::size_t k = 0; k < n; ++k) scaled[k] = lambda * s[k];
    const double lhs = f(scaled);
    const double rhs = lambda * f(s);
    const double denom = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    record(std::fabs(lhs - rhs) / denom, s, lambda);
  }
  report.pass = report.worst_violation <= tol;
  return report;
}

Point sample_sphere(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> face(0, 2 * n - 1);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Point s(n);
  for (auto& v : s) v = coord(rng);
  const std::size_t f = face(rng);
  s[f % n] = f < n ? 1.0 : -1.0;
  return s;
}

double sup_norm(const HomogeneousFn& H, const Triangulation& mesh, int refine,
                std::span<const Point> extra) {
  if (mesh.arity() != H.arity()) throw std::invalid_argument("mesh arity does not match function");
  if (refine < 0) throw std::invalid_argument("refine must be >= 0");
  double best = 0.0;
  auto probe = [&](std::span<const double> s) { best = std::max(best, std::fabs(H(s))); };

  for (std::size_t j = 0; j < mesh.node_count(); ++j) probe(mesh.node(j));
  for (const auto& p : H.hints()) probe(p);
  for (const auto& p : extra) probe(p);

  const std::size_t n = mesh.arity();
  const int denom = 1 << refine;
  if (denom > 1) {
    // integer compositions of `denom` into n parts, excluding the vertices
    std::vector<int> parts(n, 0);
    Point s(n);
    std::vector<std::vector<int>> compositions;
    auto gen = [&](auto&& self, std::size_t idx, int left) -> void {
      if (idx + 1 == n) {
        parts[idx] = left;
        if (std::count(parts.begin(), parts.end(), denom) == 0) compositions.push_back(parts);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        parts[idx] = v;
        self(self, idx + 1, left - v);
      }
    };
    gen(gen, 0, denom);
    for (std::size_t id = 0; id < mesh.simplex_count(); ++id) {
      const auto verts = mesh.simplex(id);
      for (const auto& comp : compositions) {
        std::fill(s.begin(), s.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v) {
          if (comp[v] == 0) continue;
          const double w = static_cast<double>(comp[v]) / denom;
          const auto node = mesh.node(verts[v]);
          for (std::size_t c = 0; c < n; ++c) s[c] += w * node[c];
        }
        probe(s);
      }
    }
  }
  return best;
}

}  // namespace krivine
