#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "krivine/homogeneous.hpp"
#include "krivine/lattice_term.hpp"

namespace krivine {

/// Simplex containing a sphere point together with the barycentric weights
/// of that point, in the vertex order of Triangulation::simplex(id).
struct Location {
  std::size_t simplex = 0;
  std::vector<double> weights;
};

/// Simplicial decomposition of the l-infinity unit sphere S^n_inf.
///
/// Faces are ordered positive first (x_0 = 1, ..., x_{n-1} = 1) then
/// negative. Each face [-1,1]^{n-1} is cut into k^{n-1} cubes of side
/// 2/k < delta, and each cube into (n-1)! Kuhn simplices, one per
/// permutation of the free axes. Simplex ids run face-major, then cube in
/// lexicographic order, then permutation in lexicographic order. Nodes are
/// shared across faces. Copies share the immutable mesh data.
class Triangulation {
 public:
  /// Throws std::invalid_argument unless n >= 2 and 0 < delta <= 2.
  static Triangulation build(std::size_t n, double delta);

  std::size_t arity() const;
  double delta() const;
  /// Cubes per face edge.
  std::size_t cells_per_edge() const;
  /// l-infinity diameter of every simplex, 2/k; strictly below delta.
  double diameter() const;

  std::size_t node_count() const;
  std::size_t simplex_count() const;
  std::span<const double> node(std::size_t j) const;
  std::span<const std::size_t> simplex(std::size_t id) const;
  /// 0..n-1 for the faces x_i = +1, n..2n-1 for x_i = -1.
  std::size_t face_of(std::size_t id) const;
  /// Index of the corner (1, ..., 1).
  std::size_t ones_node() const;

  /// Throws std::invalid_argument unless |s|_inf = 1 within 1e-12. Points
  /// on shared boundaries resolve to the smallest simplex id.
  Location locate(std::span<const double> s) const;

  /// Nodes sharing at least one simplex with node j.
  const std::vector<std::vector<std::size_t>>& adjacency() const;

 private:
  struct Data;
  explicit Triangulation(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// T: node values -> PL function on the sphere, extended homogeneously.
HomogeneousFn pl_extend(const Triangulation& tri, std::vector<double> a);

/// Hat function d_j = T e_j.
HomogeneousFn hat(const Triangulation& tri, std::size_t j);

/// S H = T (H(s_1), ..., H(s_m)).
HomogeneousFn interpolate(const Triangulation& tri, const HomogeneousFn& H);

std::vector<double> node_values(const Triangulation& tri, const HomogeneousFn& H);

/// Lattice polynomial equal to hat(tri, j) everywhere on R^n. On the cone
/// over each face containing node j it is the Freudenthal hat of the face
/// grid; the face pieces are joined by a sup after subtracting a multiple
/// of the distance to their cone.
LatticeTerm hat_term(const Triangulation& tri, std::size_t j);

/// Lattice polynomial equal to pl_extend(tri, a) everywhere on R^n:
/// sum_j a_j hat_term(tri, j), or a single linear leaf when `a` comes from a
/// linear form. Throws std::domain_error on a degenerate simplex.
LatticeTerm pl_to_lattice_term(const Triangulation& tri, std::span<const double> a);

/// Breadth-first hop counts from node `from` in the node adjacency graph.
std::vector<std::size_t> node_distances(const Triangulation& tri, std::size_t from);

/// CSV dump: header `kind,index,face,c0..c{n-1}`, one `node` row per node
/// (coordinates, empty face) and one `simplex` row per simplex (node ids).
void write_mesh_csv(const Triangulation& tri, std::ostream& out);

}  // namespace krivine
