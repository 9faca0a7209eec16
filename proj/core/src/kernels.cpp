#include "krivine/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "krivine/calculus.hpp"

namespace krivine {

Kernel kalton_kernel() {
  return Kernel(
      "kalton", 2,
      [](std::span<const double> s, double theta) {
        return std::sqrt(s[0] * s[0] + 2.0 * s[0] * s[1] * std::cos(theta) + s[1] * s[1]);
      },
      Modulus{2.0});
}

double kalton_closed_form(double s, double t) {
  const double a = std::fabs(s), b = std::fabs(t);
  if (a + b == 0.0) return 0.0;
  const double k = std::min(1.0, 2.0 * std::sqrt(a * b) / (a + b));
  return 4.0 * (a + b) * std::comp_ellint_2(k);
}

Kernel zero_kernel(std::size_t n) {
  return Kernel("zero", n, [](std::span<const double>, double) { return 0.0; }, Modulus{0.0});
}

Kernel pnorm_kernel(std::size_t n) {
  return Kernel(
      "pnorm", n,
      [](std::span<const double> s, double p) { return p_sum_value(s, p); },
      Modulus{static_cast<double>(n)});
}

Kernel singular_kernel(std::size_t n) {
  return Kernel("singular", n,
                [](std::span<const double> s, double omega) { return sup_norm_inf(s) / omega; });
}

Kernel squared_kernel(std::size_t n) {
  return Kernel("squared", n, [](std::span<const double> s, double) { return s[0] * s[0]; });
}

std::vector<std::string> kernel_ids() {
  return {"kalton", "zero", "pnorm", "singular", "squared", "counterexample"};
}

Kernel make_kernel(const std::string& id, std::size_t n) {
  auto binary = [&] {
    if (n != 2) throw std::invalid_argument("kernel '" + id + "' needs n = 2");
  };
  if (n < 1) throw std::invalid_argument("kernel arity must be >= 1");
  if (id == "kalton") return binary(), kalton_kernel();
  if (id == "counterexample") return binary(), counterexample_kernel(1).first;
  if (id == "zero") return zero_kernel(n);
  if (id == "pnorm") return pnorm_kernel(n);
  if (id == "singular") return singular_kernel(n);
  if (id == "squared") return squared_kernel(n);
  throw std::invalid_argument("unknown kernel '" + id + "'");
}

MeasureSpace default_measure(const std::string& kernel_id, std::size_t nodes, std::size_t atoms,
                             const MeasureOverride& override) {
  if (kernel_id == "counterexample") return counterexample_kernel(atoms).second;
  double a = 0.0, b = 1.0;
  QuadratureRule rule = QuadratureRule::midpoint;
  if (kernel_id == "kalton") {
    b = 2.0 * std::numbers::pi;
    rule = QuadratureRule::periodic_trapezoid;
  } else if (kernel_id == "pnorm") {
    a = 1.0;
    b = 4.0;
  }
  return MeasureSpace::interval(override.lower.value_or(a), override.upper.value_or(b),
                                override.rule.value_or(rule), nodes);
}

std::optional<QuadratureRule> parse_rule(const std::string& name) {
  if (name == "midpoint") return QuadratureRule::midpoint;
  if (name == "trapezoid") return QuadratureRule::trapezoid;
  if (name == "periodic_trapezoid" || name == "periodic") return QuadratureRule::periodic_trapezoid;
  return std::nullopt;
}

std::string rule_name(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::midpoint: return "midpoint";
    case QuadratureRule::trapezoid: return "trapezoid";
    case QuadratureRule::periodic_trapezoid: return "periodic_trapezoid";
  }
  return "?";
}

}  // namespace krivine
