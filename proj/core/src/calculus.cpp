#include "krivine/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace krivine {

namespace {

std::vector<LatticeVector> checked(std::vector<LatticeVector> x) {
  if (x.empty()) throw std::invalid_argument("calculus context needs at least one vector");
  for (const auto& v : x) {
    if (!(v.space() == x.front().space())) {
      throw std::invalid_argument("calculus context vectors live in different spaces");
    }
  }
  return x;
}

void require_arity(const CalculusContext& ctx, std::size_t arity) {
  if (arity != ctx.arity()) {
    throw std::invalid_argument("function arity " + std::to_string(arity) +
                                " does not match context arity " + std::to_string(ctx.arity()));
  }
}

}  // namespace

CalculusContext::CalculusContext(std::vector<LatticeVector> x)
    : x_(checked(std::move(x))), envelope_(sup_abs(x_)), e_(envelope_) {}

CalculusContext::CalculusContext(std::vector<LatticeVector> x, LatticeVector e)
    : x_(checked(std::move(x))), envelope_(sup_abs(x_)), e_(std::move(e)) {
  if (!(e_.space() == space())) throw std::invalid_argument("e lives in a different space");
  if (!is_positive(e_)) throw std::invalid_argument("e must be positive");
  for (const auto& v : x_) {
    if (!ideal_norm(v, e_)) throw std::invalid_argument("x_i is not in the ideal generated by e");
  }
}

Point CalculusContext::column(std::size_t k) const {
  Point s(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) s[i] = x_[i][k];
  return s;
}

LatticeVector phi_pointwise(const CalculusContext& ctx, const HomogeneousFn& H) {
  require_arity(ctx, H.arity());
  std::vector<double> out(ctx.space().dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = H(ctx.column(k));
  return {ctx.space(), std::move(out)};
}

LatticeVector phi_term(const CalculusContext& ctx, const LatticeTerm& t) {
  require_arity(ctx, t.arity());
  using Kind = LatticeTerm::Kind;
  switch (t.kind()) {
    case Kind::linear: {
      LatticeVector acc = LatticeVector::zero(ctx.space());
      const auto c = t.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0.0) acc = axpy(acc, c[i], ctx.x()[i]);
      }
      return acc;
    }
    case Kind::scale:
      return scale(t.factor(), phi_term(ctx, t.children().front()));
    default: {
      const auto kids = t.children();
      LatticeVector acc = phi_term(ctx, kids.front());
      for (const auto& child : kids.subspan(1)) {
        const LatticeVector v = phi_term(ctx, child);
        acc = t.kind() == Kind::sup ? sup(acc, v) : t.kind() == Kind::inf ? inf(acc, v) : add(acc, v);
      }
      return acc;
    }
  }
}

ApproxResult phi_approx(const CalculusContext& ctx, const HomogeneousFn& H, double delta,
                        int refine) {
  require_arity(ctx, H.arity());
  const auto tri = Triangulation::build(ctx.arity(), delta);
  const auto a = node_values(tri, H);
  const auto term = pl_to_lattice_term(tri, a);
  const auto SH = pl_extend(tri, a);

  std::vector<Point> directions;
  for (std::size_t k = 0; k < ctx.space().dim(); ++k) {
    Point s = ctx.column(k);
    const double r = sup_norm_inf(s);
    if (r == 0.0) continue;
    for (double& v : s) v /= r;
    directions.push_back(std::move(s));
  }
  const double err = sup_norm(H - SH, tri, refine, directions);
  return {phi_term(ctx, term), err * norm(ctx.envelope()), err, tri.node_count()};
}

std::vector<LatticeVector> hat_images(const CalculusContext& ctx, const Triangulation& tri) {
  require_arity(ctx, tri.arity());
  std::vector<LatticeVector> out;
  out.reserve(tri.node_count());
  for (std::size_t j = 0; j < tri.node_count(); ++j) out.push_back(phi_term(ctx, hat_term(tri, j)));
  return out;
}

double p_sum_value(std::span<const double> t, double p) {
  const double m = sup_norm_inf(t);
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : t) acc += std::pow(std::fabs(v) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

HomogeneousFn p_sum_function(std::size_t n, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p_sum needs 0 < p < inf");
  // l-infinity Lipschitz constant of the p-"norm" is n^(1/p) for p >= 1.
  std::optional<Modulus> modulus;
  if (p >= 1.0) modulus = Modulus{std::pow(static_cast<double>(n), 1.0 / p)};
  return HomogeneousFn::trusted(
      n,
      [p](std::span<const double> t) { return p_sum_value(t, p); },
      modulus);
}

LatticeVector p_sum(const CalculusContext& ctx, double p) {
  return phi_pointwise(ctx, p_sum_function(ctx.arity(), p));
}

}  // namespace krivine
