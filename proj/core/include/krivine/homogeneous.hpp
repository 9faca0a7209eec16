#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace krivine {

class Triangulation;

using Point = std::vector<double>;
using Evaluator = std::function<double(std::span<const double>)>;

/// Uniform modulus of continuity on the sphere, given as an l-infinity
/// Lipschitz constant: |H(s) - H(t)| <= lipschitz * |s - t|_inf.
struct Modulus {
  double lipschitz = 0.0;

  /// Smallest epsilon certified for a mesh finer than `delta`.
  double epsilon_for(double delta) const { return lipschitz * delta; }
  /// Largest delta for which `eps` is certified; +inf when lipschitz is 0.
  double delta_for(double eps) const;
};

/// A continuous positively homogeneous function R^n -> R.
///
/// Carries its evaluator (no sampling, no loss of precision), an optional
/// modulus of continuity, and optional "hint" sphere points where the sup
/// norm is attained or approached; sup_norm() always samples the hints.
class HomogeneousFn {
 public:
  /// Checks homogeneity on pseudorandom samples and throws
  /// std::domain_error when F(lambda s) != lambda F(s) beyond 1e-10 relative.
  HomogeneousFn(std::size_t arity, Evaluator f, std::optional<Modulus> modulus = std::nullopt,
                std::vector<Point> hints = {});

  /// For functions homogeneous by construction (PL extensions, lattice
  /// combinations of checked functions, kernel slices checked elsewhere).
  static HomogeneousFn trusted(std::size_t arity, Evaluator f,
                               std::optional<Modulus> modulus = std::nullopt,
                               std::vector<Point> hints = {});

  std::size_t arity() const { return arity_; }
  const std::optional<Modulus>& modulus() const { return modulus_; }
  const std::vector<Point>& hints() const { return hints_; }
  const Evaluator& evaluator() const { return f_; }

  double operator()(std::span<const double> s) const;
  double operator()(std::initializer_list<double> s) const;

  HomogeneousFn with_modulus(Modulus m) const;
  HomogeneousFn with_hints(std::vector<Point> hints) const;

 private:
  struct Trusted {};
  HomogeneousFn(Trusted, std::size_t arity, Evaluator f, std::optional<Modulus> modulus,
                std::vector<Point> hints);

  std::size_t arity_;
  Evaluator f_;
  std::optional<Modulus> modulus_;
  std::vector<Point> hints_;
};

/// pi_i(s) = s_i, zero-based index.
HomogeneousFn coordinate_projection(std::size_t i, std::size_t n);

/// F(s) = |s|_inf * h(s / |s|_inf), F(0) = 0. `h` is only called on the
/// l-infinity unit sphere.
HomogeneousFn extend(std::size_t n, Evaluator h, std::optional<Modulus> modulus = std::nullopt);

/// Restriction to the sphere; the evaluator itself, since points passed to
/// it are expected to satisfy |s|_inf = 1.
Evaluator restrict_to_sphere(const HomogeneousFn& F);

// Pointwise lattice operations in H_n. The modulus is propagated when both
// operands carry one.
HomogeneousFn sup(const HomogeneousFn& f, const HomogeneousFn& g);
HomogeneousFn inf(const HomogeneousFn& f, const HomogeneousFn& g);
HomogeneousFn abs(const HomogeneousFn& f);
HomogeneousFn operator+(const HomogeneousFn& f, const HomogeneousFn& g);
HomogeneousFn operator-(const HomogeneousFn& f, const HomogeneousFn& g);
HomogeneousFn operator*(double c, const HomogeneousFn& f);

struct HomogeneityReport {
  bool pass = true;
  double worst_violation = 0.0;  // relative
  Point worst_point;
  double worst_lambda = 0.0;
  std::size_t samples = 0;
};

/// Tests F(lambda s) = lambda F(s) on `samples` pseudorandom pairs
/// (lambda >= 0, lambda = 0 included) and F(0) = 0.
HomogeneityReport check_homogeneous(std::size_t n, const Evaluator& f, std::size_t samples,
                                    double tol = 1e-10, std::uint64_t seed = 0x5eed);

/// Uniformly random face, then uniform position on that face.
Point sample_sphere(std::size_t n, std::mt19937_64& rng);

double sup_norm_inf(std::span<const double> s);

/// Sampled C(S^n_inf) norm: max |H| over the mesh nodes, the barycentric
/// points with denominator 2^refine inside every simplex, the hints of H,
/// and `extra` points. A lower bound that converges as the mesh refines.
double sup_norm(const HomogeneousFn& H, const Triangulation& mesh, int refine = 2,
                std::span<const Point> extra = {});

}  // namespace krivine
