#pragma once

#include <span>
#include <vector>

#include "krivine/homogeneous.hpp"
#include "krivine/lattice.hpp"
#include "krivine/lattice_term.hpp"
#include "krivine/triangulation.hpp"

namespace krivine {

/// The tuple x = (x_1, ..., x_n) in a lattice X together with a positive
/// e whose principal ideal contains every x_i (default |x_1| v ... v |x_n|).
class CalculusContext {
 public:
  explicit CalculusContext(std::vector<LatticeVector> x);
  /// Throws std::invalid_argument if e is not positive or some x_i is not
  /// in the ideal generated by e.
  CalculusContext(std::vector<LatticeVector> x, LatticeVector e);

  const LatticeSpace& space() const { return x_.front().space(); }
  std::size_t arity() const { return x_.size(); }
  std::span<const LatticeVector> x() const { return x_; }
  const LatticeVector& e() const { return e_; }
  /// |x_1| v ... v |x_n|
  const LatticeVector& envelope() const { return envelope_; }

  /// (x_1[k], ..., x_n[k])
  Point column(std::size_t k) const;

 private:
  std::vector<LatticeVector> x_;
  LatticeVector envelope_;
  LatticeVector e_;
};

/// Phi(H) computed coordinatewise: result[k] = H(x_1[k], ..., x_n[k]).
LatticeVector phi_pointwise(const CalculusContext& ctx, const HomogeneousFn& H);

/// Phi(t) by structural recursion: linear leaves map to sum_i c_i x_i and
/// sup/inf/add/scale to the lattice operations of X.
LatticeVector phi_term(const CalculusContext& ctx, const LatticeTerm& t);

struct ApproxResult {
  LatticeVector value;
  /// sampled |H - SH| times |x_1 v ... v x_n|
  double certificate;
  /// sampled |H - SH| alone
  double interpolation_error;
  std::size_t nodes;
};

/// Phi(SH) through the lattice term of the PL interpolant of H on a
/// delta-mesh. The sampled interpolation error includes the directions
/// x(k)/|x(k)|_inf, so the certificate bounds |value - Phi(H)| on this
/// context up to rounding.
ApproxResult phi_approx(const CalculusContext& ctx, const HomogeneousFn& H, double delta,
                        int refine = 2);

/// Phi(d_j) for every hat function of the mesh.
std::vector<LatticeVector> hat_images(const CalculusContext& ctx, const Triangulation& tri);

/// (sum_i |x_i|^p)^(1/p), 0 < p < inf.
LatticeVector p_sum(const CalculusContext& ctx, double p);

/// (sum_i |t_i|^p)^(1/p), scaled by max |t_i| so large p cannot overflow.
double p_sum_value(std::span<const double> t, double p);

/// H(t) = (sum_i |t_i|^p)^(1/p) on R^n.
HomogeneousFn p_sum_function(std::size_t n, double p);

}  // namespace krivine
