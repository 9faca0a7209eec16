#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "krivine/homogeneous.hpp"

namespace krivine {

/// An element of the free vector lattice L_n on the coordinate projections.
///
/// Leaves are linear forms sum_i c_i pi_i; internal nodes are finite sups,
/// infs, sums and real scalar multiples. Every term is positively
/// homogeneous by construction. Terms are immutable and share subtrees.
class LatticeTerm {
 public:
  enum class Kind { linear, sup, inf, add, scale };

  static LatticeTerm linear(std::vector<double> coeffs);
  static LatticeTerm projection(std::size_t i, std::size_t n);
  static LatticeTerm sup(std::vector<LatticeTerm> terms);
  static LatticeTerm inf(std::vector<LatticeTerm> terms);
  static LatticeTerm add(std::vector<LatticeTerm> terms);
  static LatticeTerm scale(double factor, LatticeTerm term);

  static LatticeTerm sup(LatticeTerm a, LatticeTerm b);
  static LatticeTerm inf(LatticeTerm a, LatticeTerm b);
  /// a v (-a)
  static LatticeTerm abs(LatticeTerm a);

  Kind kind() const;
  std::size_t arity() const;
  /// Leaf coefficients; empty for internal nodes.
  std::span<const double> coeffs() const;
  /// Multiplier of a scale node; 1 otherwise.
  double factor() const;
  std::span<const LatticeTerm> children() const;

  double evaluate(std::span<const double> s) const;
  HomogeneousFn to_function() const;

  std::size_t depth() const;
  std::size_t leaf_count() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit LatticeTerm(std::shared_ptr<const Node> node);
  static LatticeTerm combine(Kind kind, std::vector<LatticeTerm> terms);

  std::shared_ptr<const Node> node_;
};

}  // namespace krivine
