#include "krivine/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace krivine {

namespace {

void require_same_space(const LatticeVector& x, const LatticeVector& y) {
  if (!(x.space() == y.space())) {
    throw std::invalid_argument("lattice vectors live in different spaces (dim " +
                                std::to_string(x.dim()) + " vs " +
                                std::to_string(y.dim()) + ")");
  }
}

template <class Op>
LatticeVector zip(const LatticeVector& x, const LatticeVector& y, Op op) {
  require_same_space(x, y);
  std::vector<double> out(x.dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = op(x[k], y[k]);
  return LatticeVector(x.space(), std::move(out));
}

template <class Op>
LatticeVector map(const LatticeVector& x, Op op) {
  std::vector<double> out(x.dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = op(x[k]);
  return LatticeVector(x.space(), std::move(out));
}

}  // namespace

LatticeSpace::LatticeSpace(std::size_t dim, NormKind kind, double p)
    : dim_(dim), kind_(kind), p_(p) {
  if (dim == 0) throw std::invalid_argument("lattice space dimension must be >= 1");
  if (kind == NormKind::p && !(p >= 1.0 && std::isfinite(p))) {
    throw std::invalid_argument("p-norm exponent must be finite and >= 1");
  }
}

LatticeSpace LatticeSpace::sup(std::size_t dim) { return {dim, NormKind::sup, 0.0}; }

LatticeSpace LatticeSpace::p_norm(std::size_t dim, double p) {
  return {dim, NormKind::p, p};
}

LatticeVector::LatticeVector(LatticeSpace space, std::vector<double> coords)
    : space_(space), coords_(std::move(coords)) {
  if (coords_.size() != space_.dim()) {
    throw std::invalid_argument("coordinate count " + std::to_string(coords_.size()) +
                                " does not match space dimension " +
                                std::to_string(space_.dim()));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("lattice vector entries must be finite");
  }
}

LatticeVector LatticeVector::zero(LatticeSpace space) {
  return {space, std::vector<double>(space.dim(), 0.0)};
}

LatticeVector sup(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return std::max(a, b); });
}

LatticeVector inf(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return std::min(a, b); });
}

LatticeVector abs(const LatticeVector& x) {
  return map(x, [](double a) { return std::fabs(a); });
}

LatticeVector add(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return a + b; });
}

LatticeVector sub(const LatticeVector& x, const LatticeVector& y) {
  return zip(x, y, [](double a, double b) { return a - b; });
}

LatticeVector scale(double c, const LatticeVector& x) {
  return map(x, [c](double a) { return c * a; });
}

LatticeVector axpy(const LatticeVector& x, double c, const LatticeVector& y) {
  return zip(x, y, [c](double a, double b) { return a + c * b; });
}

LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) { return add(x, y); }
LatticeVector operator-(const LatticeVector& x, const LatticeVector& y) { return sub(x, y); }
LatticeVector operator-(const LatticeVector& x) { return scale(-1.0, x); }
LatticeVector operator*(double c, const LatticeVector& x) { return scale(c, x); }

LatticeVector sup_abs(std::span<const LatticeVector> xs) {
  if (xs.empty()) throw std::invalid_argument("sup_abs of an empty list");
  LatticeVector e = abs(xs.front());
  for (const auto& x : xs.subspan(1)) e = sup(e, abs(x));
  return e;
}

double norm(const LatticeVector& x) {
  const auto& sp = x.space();
  if (sp.norm_kind() == LatticeSpace::NormKind::sup) {
    double m = 0.0;
    for (double c : x.coords()) m = std::max(m, std::fabs(c));
    return m;
  }
  // Scale by the largest entry so large exponents do not overflow.
  double m = 0.0;
  for (double c : x.coords()) m = std::max(m, std::fabs(c));
  if (m == 0.0) return 0.0;
  const double p = sp.exponent();
  double acc = 0.0;
  for (double c : x.coords()) acc += std::pow(std::fabs(c) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

std::optional<double> ideal_norm(const LatticeVector& x, const LatticeVector& e) {
  require_same_space(x, e);
  double best = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (e[k] < 0.0) throw std::invalid_argument("ideal generator e must be positive");
    const double a = std::fabs(x[k]);
    if (a == 0.0) continue;
    if (e[k] == 0.0) return std::nullopt;
    best = std::max(best, a / e[k]);
  }
  return best;
}

double eval_functional(std::size_t k, const LatticeVector& x) {
  if (k >= x.dim()) {
    throw std::out_of_range("functional index " + std::to_string(k) +
                            " out of range for dimension " + std::to_string(x.dim()));
  }
  return x[k];
}

bool is_positive(const LatticeVector& x) {
  return std::all_of(x.coords().begin(), x.coords().end(), [](double c) { return c >= 0.0; });
}

}  // namespace krivine
