#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace krivine {

/// A coordinatewise-ordered Banach lattice on a finite index set K.
///
/// Either the sup norm or a p-norm (p >= 1) is attached. Sampled function
/// spaces C(K) use the same type with `dim` equal to the number of points.
class LatticeSpace {
 public:
  enum class NormKind { sup, p };

  static LatticeSpace sup(std::size_t dim);
  static LatticeSpace p_norm(std::size_t dim, double p);

  std::size_t dim() const { return dim_; }
  NormKind norm_kind() const { return kind_; }
  double exponent() const { return p_; }

  friend bool operator==(const LatticeSpace&, const LatticeSpace&) = default;

 private:
  LatticeSpace(std::size_t dim, NormKind kind, double p);

  std::size_t dim_;
  NormKind kind_;
  double p_;
};

class LatticeVector {
 public:
  LatticeVector(LatticeSpace space, std::vector<double> coords);

  static LatticeVector zero(LatticeSpace space);

  const LatticeSpace& space() const { return space_; }
  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t k) const { return coords_[k]; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  LatticeSpace space_;
  std::vector<double> coords_;
};

// Lattice and vector operations. Binary operations throw
// std::invalid_argument when the operands live in different spaces.
LatticeVector sup(const LatticeVector& x, const LatticeVector& y);
LatticeVector inf(const LatticeVector& x, const LatticeVector& y);
LatticeVector abs(const LatticeVector& x);
LatticeVector add(const LatticeVector& x, const LatticeVector& y);
LatticeVector sub(const LatticeVector& x, const LatticeVector& y);
LatticeVector scale(double c, const LatticeVector& x);

/// x + c*y, the accumulation step of every finite integral.
LatticeVector axpy(const LatticeVector& x, double c, const LatticeVector& y);

LatticeVector operator+(const LatticeVector& x, const LatticeVector& y);
LatticeVector operator-(const LatticeVector& x, const LatticeVector& y);
LatticeVector operator-(const LatticeVector& x);
LatticeVector operator*(double c, const LatticeVector& x);

/// Supremum of |x_1|, ..., |x_n|. Requires a nonempty list.
LatticeVector sup_abs(std::span<const LatticeVector> xs);

double norm(const LatticeVector& x);

/// Norm of the principal ideal I_e: inf{lambda > 0 : |x| <= lambda e}.
///
/// Computed as max_k |x_k| / e_k with 0/0 = 0. Returns std::nullopt when
/// x does not belong to I_e, i.e. some x_k != 0 where e_k = 0. Throws if
/// e has a negative coordinate.
std::optional<double> ideal_norm(const LatticeVector& x, const LatticeVector& e);

/// Point-evaluation functional phi_k(x) = x_k.
double eval_functional(std::size_t k, const LatticeVector& x);

bool is_positive(const LatticeVector& x);

}  // namespace krivine
