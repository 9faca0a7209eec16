#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "krivine/triangulation.hpp"
#include "oracles.hpp"

using namespace krivine;

namespace {

double simplex_diameter(const Triangulation& tri, std::size_t id) {
  double d = 0.0;
  for (std::size_t a : tri.simplex(id)) {
    for (std::size_t b : tri.simplex(id)) {
      for (std::size_t c = 0; c < tri.arity(); ++c) {
        d = std::max(d, std::fabs(tri.node(a)[c] - tri.node(b)[c]));
      }
    }
  }
  return d;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Triangulation, CountsMatchEnumeration) {
  const auto square = Triangulation::build(2, 1.5);
  EXPECT_EQ(square.cells_per_edge(), 2u);
  EXPECT_EQ(square.node_count(), 8u);
  EXPECT_EQ(square.simplex_count(), 8u);

  const auto cube = Triangulation::build(3, 1.5);
  EXPECT_EQ(cube.simplex_count(), 48u);
  EXPECT_EQ(cube.node_count(), 26u);

  for (std::size_t n : {2, 3, 4}) {
    for (double delta : {2.0, 1.0, 0.6, 0.3}) {
      if (n == 4 && delta < 0.5) continue;
      const auto tri = Triangulation::build(n, delta);
      const std::size_t k = tri.cells_per_edge();
      EXPECT_EQ(tri.node_count(), oracle::count_surface_points(n, k)) << n << ' ' << delta;
      std::size_t cubes = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) cubes *= k;
      EXPECT_EQ(tri.simplex_count(), 2 * n * cubes * factorial(n - 1));
    }
  }
}

TEST(Triangulation, DiameterStrictlyBelowDelta) {
  for (double delta : {2.0, 1.5, 1.0, 2.0 / 3.0, 0.5, 0.3, 0.125}) {
    const auto tri = Triangulation::build(3, delta);
    EXPECT_LT(tri.diameter(), delta);
    double worst = 0.0;
    for (std::size_t id = 0; id < tri.simplex_count(); ++id) worst = std::max(worst, simplex_diameter(tri, id));
    EXPECT_DOUBLE_EQ(worst, tri.diameter());
    EXPECT_LT(worst, delta);
  }
  // 2/delta an integer: one more cube so the inequality stays strict
  EXPECT_EQ(Triangulation::build(2, 1.0).cells_per_edge(), 3u);
  EXPECT_EQ(Triangulation::build(2, 0.5).cells_per_edge(), 5u);
}

TEST(Triangulation, SimplicesLieInOneFace) {
  const auto tri = Triangulation::build(3, 0.7);
  for (std::size_t id = 0; id < tri.simplex_count(); ++id) {
    const std::size_t face = tri.face_of(id);
    const double fixed = face < 3 ? 1.0 : -1.0;
    for (std::size_t v : tri.simplex(id)) EXPECT_EQ(tri.node(v)[face % 3], fixed);
  }
}

TEST(Triangulation, NodesAreDistinctAndOnSphere) {
  const auto tri = Triangulation::build(3, 0.45);
  std::set<std::vector<double>> seen;
  for (std::size_t j = 0; j < tri.node_count(); ++j) {
    const auto p = tri.node(j);
    EXPECT_EQ(sup_norm_inf(p), 1.0);
    EXPECT_TRUE(seen.emplace(p.begin(), p.end()).second);
  }
  const auto one = tri.node(tri.ones_node());
  for (double v : one) EXPECT_EQ(v, 1.0);
}

TEST(Triangulation, RejectsBadInput) {
  EXPECT_THROW(Triangulation::build(1, 0.5), std::invalid_argument);
  EXPECT_THROW(Triangulation::build(2, 0.0), std::invalid_argument);
  EXPECT_THROW(Triangulation::build(2, -1.0), std::invalid_argument);
  EXPECT_THROW(Triangulation::build(2, 2.5), std::invalid_argument);
  const auto tri = Triangulation::build(2, 1.0);
  EXPECT_THROW(tri.locate(std::vector<double>{0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(tri.locate(std::vector<double>{1.0, 0.5, 0.0}), std::invalid_argument);
}

TEST(Triangulation, LocateNodesAndMidpoints) {
  const auto tri = Triangulation::build(2, 1.0);
  for (std::size_t j = 0; j < tri.node_count(); ++j) {
    const auto loc = tri.locate(tri.node(j));
    const auto verts = tri.simplex(loc.simplex);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      EXPECT_DOUBLE_EQ(loc.weights[v], verts[v] == j ? 1.0 : 0.0);
    }
  }
  for (std::size_t id = 0; id < tri.simplex_count(); ++id) {
    const auto verts = tri.simplex(id);
    std::vector<double> mid(2);
    for (std::size_t c = 0; c < 2; ++c) mid[c] = 0.5 * (tri.node(verts[0])[c] + tri.node(verts[1])[c]);
    const auto loc = tri.locate(mid);
    EXPECT_EQ(loc.simplex, id);
    EXPECT_DOUBLE_EQ(loc.weights[0], 0.5);
    EXPECT_DOUBLE_EQ(loc.weights[1], 0.5);
  }
}

TEST(Triangulation, LocateAgreesWithBruteForce) {
  std::mt19937_64 rng(42);
  for (std::size_t n : {2, 3, 4}) {
    const auto tri = Triangulation::build(n, n == 4 ? 0.8 : 0.45);
    for (int i = 0; i < 300; ++i) {
      const auto s = sample_sphere(n, rng);
      const auto loc = tri.locate(s);
      const auto expected = oracle::brute_force_locate(tri, s);
      ASSERT_TRUE(expected.has_value());
      EXPECT_EQ(loc.simplex, *expected);
      const auto w = oracle::barycentric(tri, loc.simplex, s);
      for (std::size_t v = 0; v < n; ++v) EXPECT_NEAR(loc.weights[v], w[v], 1e-12);
    }
    // grid points lie on many simplices at once; ties go to the smallest id
    for (std::size_t j = 0; j < tri.node_count(); ++j) {
      EXPECT_EQ(tri.locate(tri.node(j)).simplex, *oracle::brute_force_locate(tri, tri.node(j)));
    }
  }
}

TEST(Triangulation, LocateReconstructsPoint) {
  std::mt19937_64 rng(7);
  const auto tri = Triangulation::build(3, 0.3);
  for (int i = 0; i < 1000; ++i) {
    const auto s = sample_sphere(3, rng);
    const auto loc = tri.locate(s);
    const auto verts = tri.simplex(loc.simplex);
    double sum = 0.0;
    std::vector<double> back(3, 0.0);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_GE(loc.weights[v], 0.0);
      sum += loc.weights[v];
      for (std::size_t c = 0; c < 3; ++c) back[c] += loc.weights[v] * tri.node(verts[v])[c];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(back[c], s[c], 1e-12);
  }
}

TEST(Triangulation, PlExtendLinearAndConstant) {
  const auto tri = Triangulation::build(3, 0.6);
  const auto ones = pl_extend(tri, std::vector<double>(tri.node_count(), 1.0));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto s = sample_sphere(3, rng);
    EXPECT_NEAR(ones(s), 1.0, 1e-12);
    Point r = s;
    for (double& v : r) v *= 3.5;
    EXPECT_NEAR(ones(r), 3.5, 1e-12);
  }
  std::vector<double> a(tri.node_count()), b(tri.node_count());
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  std::vector<double> ab(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) ab[j] = a[j] + b[j];
  const auto Ta = pl_extend(tri, a), Tb = pl_extend(tri, b), Tab = pl_extend(tri, ab);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_sphere(3, rng);
    EXPECT_NEAR(Tab(s), Ta(s) + Tb(s), 1e-12);
  }
  EXPECT_THROW(pl_extend(tri, {1.0, 2.0}), std::invalid_argument);
}

TEST(Triangulation, HatFunctions) {
  const auto tri = Triangulation::build(2, 0.6);
  std::mt19937_64 rng(9);
  for (std::size_t j = 0; j < tri.node_count(); ++j) {
    const auto d = hat(tri, j);
    for (std::size_t i = 0; i < tri.node_count(); ++i) EXPECT_EQ(d(tri.node(i)), i == j ? 1.0 : 0.0);
    for (int t = 0; t < 50; ++t) {
      const double v = d(sample_sphere(2, rng));
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  EXPECT_THROW(hat(tri, tri.node_count()), std::out_of_range);
}

TEST(Triangulation, InterpolateReproducesLinear) {
  const auto tri = Triangulation::build(3, 0.5);
  const auto H = HomogeneousFn(3, [](std::span<const double> s) { return 2 * s[0] - s[1] + 0.5 * s[2]; });
  const auto SH = interpolate(tri, H);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const auto s = sample_sphere(3, rng);
    EXPECT_NEAR(SH(s), H(s), 1e-12);
  }
  const auto constant = extend(3, [](std::span<const double>) { return -0.75; });
  const auto Sc = interpolate(tri, constant);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_sphere(3, rng);
    EXPECT_NEAR(Sc(s), -0.75, 1e-12);
  }
}

TEST(Triangulation, InterpolationWithinCertifiedEpsilon) {
  // |s|_2 is sqrt(n)-Lipschitz for the l-infinity metric
  for (std::size_t n : {2, 3}) {
    const auto H = HomogeneousFn(n, [](std::span<const double> s) {
      double acc = 0.0;
      for (double v : s) acc += v * v;
      return std::sqrt(acc);
    });
    for (double delta : {1.0, 0.5, 0.25}) {
      const auto tri = Triangulation::build(n, delta);
      const double eps = std::sqrt(static_cast<double>(n)) * delta;
      EXPECT_LT(sup_norm(interpolate(tri, H) - H, tri, 3), eps);
      EXPECT_LE(sup_norm(interpolate(tri, H), tri, 3), sup_norm(H, tri, 3) + 1e-15);
    }
  }
}

TEST(Triangulation, PathFromOnesNodeIsShort) {
  for (std::size_t n : {2, 3}) {
    const auto tri = Triangulation::build(n, 0.4);
    const auto dist = node_distances(tri, tri.ones_node());
    for (std::size_t j = 0; j < dist.size(); ++j) {
      EXPECT_LT(dist[j], tri.node_count()) << "node " << j << " unreachable or too far";
    }
    EXPECT_EQ(dist[tri.ones_node()], 0u);
  }
}

TEST(Triangulation, MeshCsv) {
  const auto tri = Triangulation::build(2, 1.5);
  std::ostringstream out;
  write_mesh_csv(tri, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,index,face,c0,c1");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("node,0,,", 0), 0u);
  std::size_t nodes = 1, simplices = 0;
  while (std::getline(in, line)) {
    nodes += line.rfind("node,", 0) == 0;
    simplices += line.rfind("simplex,", 0) == 0;
  }
  EXPECT_EQ(nodes, 8u);
  EXPECT_EQ(simplices, 8u);
}
