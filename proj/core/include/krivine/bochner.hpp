#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krivine/homogeneous.hpp"
#include "krivine/lattice.hpp"
#include "krivine/triangulation.hpp"

namespace krivine {

struct Atom {
  double omega;
  double weight;
};

enum class QuadratureRule { midpoint, trapezoid, periodic_trapezoid };

/// A finite measure realized by finitely many weighted atoms.
///
/// Discrete measures list their atoms explicitly; a discrete measure may be
/// flagged as the truncation of an infinite sequence of atoms (the measure
/// on N in the counterexample). Interval measures on [a, b] materialize the
/// nodes and weights of a quadrature rule with N nodes. Integrals are
/// always accumulated over atoms in ascending order.
class MeasureSpace {
 public:
  enum class Kind { discrete, interval };

  static MeasureSpace discrete(std::vector<Atom> atoms, bool truncated_sequence = false);
  static MeasureSpace interval(double a, double b, QuadratureRule rule, std::size_t nodes);

  Kind kind() const { return kind_; }
  std::span<const Atom> atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  bool truncated_sequence() const { return truncated_; }

  double lower() const { return a_; }
  double upper() const { return b_; }
  QuadratureRule rule() const { return rule_; }
  std::size_t nodes() const { return atoms_.size(); }

  /// Same interval and rule with a different node count.
  MeasureSpace with_nodes(std::size_t nodes) const;
  /// First `count` atoms of a discrete measure.
  MeasureSpace prefix(std::size_t count) const;

 private:
  MeasureSpace() = default;

  Kind kind_ = Kind::discrete;
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
  bool truncated_ = false;
  double a_ = 0.0, b_ = 0.0;
  QuadratureRule rule_ = QuadratureRule::midpoint;
};

using KernelEval = std::function<double(std::span<const double>, double)>;
using PeakFinder = std::function<std::vector<Point>(double)>;

/// f(s, omega) with f(., omega) positively homogeneous for every omega.
class Kernel {
 public:
  Kernel(std::string name, std::size_t arity, KernelEval f,
         std::optional<Modulus> uniform_modulus = std::nullopt, PeakFinder peaks = {});

  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }
  /// Lipschitz constant valid for every slice, if one is known.
  const std::optional<Modulus>& uniform_modulus() const { return modulus_; }

  double operator()(std::span<const double> s, double omega) const;

  /// f(., omega) as an element of H_n, carrying the sphere points where
  /// its sup norm is attained when the kernel knows them.
  HomogeneousFn slice(double omega) const;

 private:
  std::string name_;
  std::size_t arity_;
  KernelEval f_;
  std::optional<Modulus> modulus_;
  PeakFinder peaks_;
};

/// F(s) = sum_i w_i f(s, omega_i). Throws std::domain_error if F fails the
/// homogeneity check, and at evaluation time on a non-finite kernel value
/// (the message names s and omega).
HomogeneousFn scalar_F(const Kernel& kernel, const MeasureSpace& measure);

/// Raw evaluator of F, without the homogeneity check.
Evaluator scalar_F_evaluator(const Kernel& kernel, const MeasureSpace& measure);

struct KernelHomogeneityReport {
  bool pass = true;
  /// Atoms whose slice fails the check; tolerated when their weight is 0.
  std::vector<std::size_t> failing_atoms;
  double failing_weight = 0.0;
  double worst_violation = 0.0;
};

/// Homogeneity of f(., omega) at every atom.
KernelHomogeneityReport check_kernel_homogeneous(const Kernel& kernel, const MeasureSpace& measure,
                                                 std::size_t samples = 16, double tol = 1e-10);

/// The discontinuous-F example on N with mu({k}) = 2^-k, truncated at
/// k = 1..max_k. f_k is the tent on the segment from (1,0) to
/// (1, 2^(1-k)) peaking at f_k(1, 2^-k) = 2^k, zero elsewhere on the
/// sphere.
std::pair<Kernel, MeasureSpace> counterexample_kernel(std::size_t max_k = 30);

/// M(omega) = sampled sup norm of f(., omega) on the mesh.
double M_function(const Kernel& kernel, double omega, const Triangulation& mesh, int refine = 2);

enum class Integrability { converged, divergent };

struct MIntegrabilityReport {
  Integrability verdict = Integrability::converged;
  /// Discrete: partial sums over atoms. Interval: quadrature of M at
  /// N, 2N, 4N, ...
  std::vector<double> partial_sums;
  double value = 0.0;
  std::string detail;
};

struct MIntegrabilityOptions {
  std::size_t growth_window = 16;
  double tol = 1e-8;
  std::size_t refinement_levels = 4;
  double mesh_delta = 0.5;
  int refine = 2;
};

/// Heuristic test for integrability of M.
///
/// A finite discrete measure always integrates M. A truncated sequence is
/// DIVERGENT when the last `growth_window` increments of the partial sums
/// add up to more than `tol`. An interval measure is DIVERGENT when
/// doubling the node count changes the quadrature of M by more than `tol`
/// and the change is not contracting (ratio above 1/2).
MIntegrabilityReport check_M_integrable(const Kernel& kernel, const MeasureSpace& measure,
                                        const MIntegrabilityOptions& options = {});

using VectorIntegrand = std::function<LatticeVector(double)>;

/// sum_i w_i g(omega_i), ascending in i. Every integrand over a finite
/// atom set is simple, so this is its Bochner integral.
LatticeVector bochner_integral(const VectorIntegrand& g, const MeasureSpace& measure);

/// sum_i w_i |g(omega_i)|
double integrate_norm(const VectorIntegrand& g, const MeasureSpace& measure);

double integrate_scalar(const std::function<double(double)>& u, const MeasureSpace& measure);

}  // namespace krivine
