#include "krivine/triangulation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace krivine {

namespace {

constexpr double kSphereTol = 1e-12;

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Rank of a permutation of 0..d-1 in lexicographic order.
std::size_t permutation_rank(std::span<const std::size_t> perm) {
  const std::size_t d = perm.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < d; ++j) smaller += perm[j] < perm[i];
    rank += smaller * factorial(d - 1 - i);
  }
  return rank;
}

}  // namespace

struct Triangulation::Data {
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t k = 0;
  std::vector<double> nodes;         // m * n
  std::vector<std::size_t> simplices;  // S * n
  std::vector<std::size_t> faces;
  std::size_t ones = 0;
  std::vector<std::vector<std::size_t>> adjacency;
};

Triangulation::Triangulation(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Triangulation Triangulation::build(std::size_t n, double delta) {
  if (n < 2) throw std::invalid_argument("triangulation needs arity n >= 2");
  if (!(delta > 0.0) || delta > 2.0) throw std::invalid_argument("delta must lie in (0, 2]");

  auto data = std::make_shared<Data>();
  data->n = n;
  data->delta = delta;
  std::size_t k = static_cast<std::size_t>(std::ceil(2.0 / delta));
  if (k == 0) k = 1;
  if (2.0 / static_cast<double>(k) >= delta) ++k;
  data->k = k;

  const std::size_t d = n - 1;
  const std::size_t cells = ipow(k, d);
  std::map<std::vector<std::size_t>, std::size_t> node_ids;
  std::vector<std::size_t> grid(n);

  auto node_id = [&](const std::vector<std::size_t>& g) {
    auto [it, inserted] = node_ids.emplace(g, node_ids.size());
    if (inserted) {
      for (std::size_t c = 0; c < n; ++c) {
        data->nodes.push_back(static_cast<double>(2 * static_cast<long>(g[c]) - static_cast<long>(k)) /
                              static_cast<double>(k));
      }
    }
    return it->second;
  };

  std::vector<std::size_t> free_axes(d), base(d), perm(d);
  for (std::size_t face = 0; face < 2 * n; ++face) {
    const std::size_t axis = face % n;
    const std::size_t fixed = face < n ? k : 0;
    for (std::size_t c = 0, f = 0; c < n; ++c) {
      if (c != axis) free_axes[f++] = c;
    }
    for (std::size_t cell = 0; cell < cells; ++cell) {
      for (std::size_t j = 0, rest = cell; j < d; ++j) {
        const std::size_t place = ipow(k, d - 1 - j);
        base[j] = rest / place;
        rest %= place;
      }
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        grid[axis] = fixed;
        for (std::size_t j = 0; j < d; ++j) grid[free_axes[j]] = base[j];
        data->simplices.push_back(node_id(grid));
        for (std::size_t step = 0; step < d; ++step) {
          ++grid[free_axes[perm[step]]];
          data->simplices.push_back(node_id(grid));
        }
        data->faces.push_back(face);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  data->ones = node_ids.at(std::vector<std::size_t>(n, k));

  data->adjacency.resize(node_ids.size());
  for (std::size_t s = 0; s < data->faces.size(); ++s) {
    const auto* v = &data->simplices[s * n];
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b) data->adjacency[v[a]].push_back(v[b]);
      }
    }
  }
  for (auto& adj : data->adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return Triangulation(std::move(data));
}

std::size_t Triangulation::arity() const { return data_->n; }
double Triangulation::delta() const { return data_->delta; }
std::size_t Triangulation::cells_per_edge() const { return data_->k; }
double Triangulation::diameter() const { return 2.0 / static_cast<double>(data_->k); }
std::size_t Triangulation::node_count() const { return data_->nodes.size() / data_->n; }
std::size_t Triangulation::simplex_count() const { return data_->faces.size(); }

std::span<const double> Triangulation::node(std::size_t j) const {
  if (j >= node_count()) throw std::out_of_range("node index out of range");
  return {data_->nodes.data() + j * data_->n, data_->n};
}

std::span<const std::size_t> Triangulation::simplex(std::size_t id) const {
  if (id >= simplex_count()) throw std::out_of_range("simplex index out of range");
  return {data_->simplices.data() + id * data_->n, data_->n};
}

std::size_t Triangulation::face_of(std::size_t id) const {
  if (id >= simplex_count()) throw std::out_of_range("simplex index out of range");
  return data_->faces[id];
}

std::size_t Triangulation::ones_node() const { return data_->ones; }

const std::vector<std::vector<std::size_t>>& Triangulation::adjacency() const {
  return data_->adjacency;
}

Location Triangulation::locate(std::span<const double> s) const {
  const std::size_t n = data_->n;
  if (s.size() != n) throw std::invalid_argument("locate: point has wrong arity");
  if (std::fabs(sup_norm_inf(s) - 1.0) > kSphereTol) {
    throw std::invalid_argument("locate: point is not on the l-infinity unit sphere");
  }
  std::size_t face = 2 * n;
  for (std::size_t a = 0; a < n && face == 2 * n; ++a) {
    if (std::fabs(s[a] - 1.0) <= kSphereTol) face = a;
  }
  for (std::size_t a = 0; a < n && face == 2 * n; ++a) {
    if (std::fabs(s[a] + 1.0) <= kSphereTol) face = n + a;
  }
  const std::size_t axis = face % n;
  const std::size_t d = n - 1;
  const std::size_t k = data_->k;
  const double kd = static_cast<double>(k);

  // Smallest containing cube per free axis: base = ceil(u) - 1, or 0 at u = 0.
  std::size_t cell = 0;
  std::vector<double> frac(d);
  for (std::size_t c = 0, j = 0; c < n; ++c) {
    if (c == axis) continue;
    const double u = std::clamp((s[c] + 1.0) * kd / 2.0, 0.0, kd);
    std::size_t b = u > 0.0 ? static_cast<std::size_t>(std::ceil(u)) - 1 : 0;
    b = std::min(b, k - 1);
    frac[j] = std::clamp(u - static_cast<double>(b), 0.0, 1.0);
    cell = cell * k + b;
    ++j;
  }

  // Kuhn simplex: free axes by decreasing fraction, ties to the lower axis.
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t x, std::size_t y) { return frac[x] > frac[y]; });

  Location loc;
  loc.simplex = (face * ipow(k, d) + cell) * factorial(d) + permutation_rank(perm);
  loc.weights.resize(n);
  if (d == 0) {
    loc.weights[0] = 1.0;
    return loc;
  }
  loc.weights[0] = 1.0 - frac[perm[0]];
  for (std::size_t i = 1; i < d; ++i) loc.weights[i] = frac[perm[i - 1]] - frac[perm[i]];
  loc.weights[d] = frac[perm[d - 1]];
  return loc;
}

HomogeneousFn pl_extend(const Triangulation& tri, std::vector<double> a) {
  if (a.size() != tri.node_count()) {
    throw std::invalid_argument("pl_extend: expected " + std::to_string(tri.node_count()) +
                                " node values, got " + std::to_string(a.size()));
  }
  const std::size_t n = tri.arity();
  return extend(
      n,
      [tri, a = std::move(a)](std::span<const double> u) {
        const Location loc = tri.locate(u);
        const auto verts = tri.simplex(loc.simplex);
        double acc = 0.0;
        for (std::size_t v = 0; v < verts.size(); ++v) acc += loc.weights[v] * a[verts[v]];
        return acc;
      });
}

HomogeneousFn hat(const Triangulation& tri, std::size_t j) {
  if (j >= tri.node_count()) throw std::out_of_range("hat: node index out of range");
  std::vector<double> e(tri.node_count(), 0.0);
  e[j] = 1.0;
  return pl_extend(tri, std::move(e));
}

std::vector<double> node_values(const Triangulation& tri, const HomogeneousFn& H) {
  if (H.arity() != tri.arity()) throw std::invalid_argument("arity mismatch between mesh and function");
  std::vector<double> a(tri.node_count());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = H(tri.node(j));
  return a;
}

HomogeneousFn interpolate(const Triangulation& tri, const HomogeneousFn& H) {
  return pl_extend(tri, node_values(tri, H));
}

namespace {

// Hat of node j restricted to the cone over face (axis, sign), written in
// the homogeneous face coordinate t = sign * s[axis]:
//   max(0, t - max(0, max_i w_i) + min(0, min_i w_i)),  w_i = (s_i - z_i t) / h.
// Equal to d_j on that cone, including the part of its boundary in the star of j.
LatticeTerm face_hat(std::size_t n, std::span<const double> z, std::size_t axis, double sign, double h) {
  const LatticeTerm zero = LatticeTerm::linear(std::vector<double>(n, 0.0));
  std::vector<LatticeTerm> w;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == axis) continue;
    std::vector<double> c(n, 0.0);
    c[i] = 1.0 / h;
    c[axis] = -z[i] * sign / h;
    w.push_back(LatticeTerm::linear(std::move(c)));
  }
  std::vector<double> t(n, 0.0);
  t[axis] = sign;
  std::vector<LatticeTerm> upper{zero}, lower{zero};
  upper.insert(upper.end(), w.begin(), w.end());
  lower.insert(lower.end(), w.begin(), w.end());
  const LatticeTerm body = LatticeTerm::add({LatticeTerm::linear(std::move(t)),
                                             LatticeTerm::scale(-1.0, LatticeTerm::sup(std::move(upper))),
                                             LatticeTerm::inf(std::move(lower))});
  return LatticeTerm::sup(zero, body);
}

// min(0, sign * s[axis] - max_{i != axis} |s_i|): zero on the cone over the
// face, minus the l_inf distance to it on the sphere.
LatticeTerm cone_gap(std::size_t n, std::size_t axis, double sign) {
  std::vector<LatticeTerm> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != axis) others.push_back(LatticeTerm::abs(LatticeTerm::projection(i, n)));
  }
  std::vector<double> t(n, 0.0);
  t[axis] = sign;
  const LatticeTerm gap = LatticeTerm::add(
      {LatticeTerm::linear(std::move(t)), LatticeTerm::scale(-1.0, LatticeTerm::sup(std::move(others)))});
  return LatticeTerm::inf(LatticeTerm::linear(std::vector<double>(n, 0.0)), gap);
}

}  // namespace

LatticeTerm hat_term(const Triangulation& tri, std::size_t j) {
  const std::size_t n = tri.arity();
  if (j >= tri.node_count()) throw std::out_of_range("hat_term: node index out of range");
  const auto z = tri.node(j);
  const double h = tri.diameter();
  // Bound on the l_inf Lipschitz constant of every face hat and of d_j,
  // doubled for the difference of two of them.
  const double penalty = 2.0 * (1.0 + 4.0 / h) + 1.0;
  std::vector<LatticeTerm> parts{LatticeTerm::linear(std::vector<double>(n, 0.0))};
  for (std::size_t axis = 0; axis < n; ++axis) {
    if (std::fabs(std::fabs(z[axis]) - 1.0) > kSphereTol) continue;
    const double sign = z[axis] > 0 ? 1.0 : -1.0;
    parts.push_back(LatticeTerm::add(
        {face_hat(n, z, axis, sign, h), LatticeTerm::scale(penalty, cone_gap(n, axis, sign))}));
  }
  return LatticeTerm::sup(std::move(parts));
}

LatticeTerm pl_to_lattice_term(const Triangulation& tri, std::span<const double> a) {
  const std::size_t n = tri.arity();
  const std::size_t S = tri.simplex_count();
  if (a.size() != tri.node_count()) throw std::invalid_argument("pl_to_lattice_term: length mismatch");

  double scale = 1.0;
  for (double v : a) scale = std::max(scale, std::fabs(v));

  Eigen::MatrixXd V(n, n);
  Eigen::VectorXd rhs(n);
  Eigen::VectorXd first;
  for (std::size_t s = 0; s < S; ++s) {
    const auto verts = tri.simplex(s);
    for (std::size_t r = 0; r < n; ++r) {
      const auto p = tri.node(verts[r]);
      for (std::size_t c = 0; c < n; ++c) V(r, c) = p[c];
      rhs(r) = a[verts[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    if (lu.rank() < static_cast<Eigen::Index>(n)) {
      throw std::domain_error("degenerate simplex " + std::to_string(s) +
                              ": vertex rays are linearly dependent");
    }
    if (s == 0) first = lu.solve(rhs);
  }

  // A globally linear a collapses to one leaf.
  bool linear = true;
  for (std::size_t j = 0; j < tri.node_count() && linear; ++j) {
    const auto p = tri.node(j);
    double v = 0.0;
    for (std::size_t c = 0; c < n; ++c) v += first(c) * p[c];
    linear = std::fabs(v - a[j]) <= 1e-12 * scale;
  }
  LatticeTerm term = LatticeTerm::linear(std::vector<double>(n, 0.0));
  if (linear) {
    term = LatticeTerm::linear({first.data(), first.data() + n});
  } else {
    std::vector<LatticeTerm> summands;
    for (std::size_t j = 0; j < tri.node_count(); ++j) {
      if (a[j] != 0.0) summands.push_back(LatticeTerm::scale(a[j], hat_term(tri, j)));
    }
    if (!summands.empty()) term = LatticeTerm::add(std::move(summands));
  }

  return term;
}

std::vector<std::size_t> node_distances(const Triangulation& tri, std::size_t from) {
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(tri.node_count(), unreached);
  if (from >= dist.size()) throw std::out_of_range("node index out of range");
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i : tri.adjacency()[j]) {
      if (dist[i] == unreached) {
        dist[i] = dist[j] + 1;
        queue.push_back(i);
      }
    }
  }
  return dist;
}

void write_mesh_csv(const Triangulation& tri, std::ostream& out) {
  const std::size_t n = tri.arity();
  out << "kind,index,face";
  for (std::size_t c = 0; c < n; ++c) out << ",c" << c;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t j = 0; j < tri.node_count(); ++j) {
    out << "node," << j << ',';
    for (double v : tri.node(j)) out << ',' << v;
    out << '\n';
  }
  for (std::size_t s = 0; s < tri.simplex_count(); ++s) {
    out << "simplex," << s << ',' << tri.face_of(s);
    for (std::size_t v : tri.simplex(s)) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace krivine
