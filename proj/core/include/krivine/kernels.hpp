#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "krivine/bochner.hpp"

namespace krivine {

/// f((s,t), theta) = |s + e^{i theta} t| on [0, 2 pi].
Kernel kalton_kernel();

/// int_0^{2 pi} |s + e^{i theta} t| d theta
///   = 4 (|s| + |t|) E(2 sqrt|st| / (|s| + |t|)),
/// E the complete elliptic integral of the second kind.
double kalton_closed_form(double s, double t);

Kernel zero_kernel(std::size_t n);

/// f(s, p) = (sum_i |s_i|^p)^(1/p) for p in [1, 4].
Kernel pnorm_kernel(std::size_t n);

/// f(s, omega) = |s|_inf / omega on (0, 1]; M is not integrable.
Kernel singular_kernel(std::size_t n);

/// f(s, omega) = s_0^2, not homogeneous.
Kernel squared_kernel(std::size_t n);

/// Kernel ids: kalton, zero, pnorm, singular, squared, counterexample.
std::vector<std::string> kernel_ids();

/// Throws std::invalid_argument for an unknown id or an arity the kernel
/// does not support (kalton and counterexample are binary).
Kernel make_kernel(const std::string& id, std::size_t n);

struct MeasureOverride {
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<QuadratureRule> rule;
};

/// The measure a kernel is integrated against: [0, 2 pi] with the periodic
/// trapezoid rule for kalton, atoms 2^-k for counterexample (`atoms` of
/// them), [1, 4] for pnorm, (0, 1] for the rest; midpoint rule otherwise.
MeasureSpace default_measure(const std::string& kernel_id, std::size_t nodes, std::size_t atoms,
                             const MeasureOverride& override = {});

std::optional<QuadratureRule> parse_rule(const std::string& name);
std::string rule_name(QuadratureRule rule);

}  // namespace krivine
