#include <cmath>
#include <gtest/gtest.h>

#include "krivine/lattice.hpp"

using namespace krivine;

namespace {

LatticeVector vec(std::vector<double> c) {
  const auto space = LatticeSpace::sup(c.size());
  return {space, std::move(c)};
}

}  // namespace

TEST(Lattice, CoordinatewiseOperations) {
  EXPECT_EQ(sup(vec({1, -2}), vec({0, 3})), vec({1, 3}));
  EXPECT_EQ(inf(vec({1, -2}), vec({0, 3})), vec({0, -2}));
  EXPECT_EQ(abs(vec({-1, 2})), vec({1, 2}));
  EXPECT_EQ(add(vec({1, 2}), vec({3, 4})), vec({4, 6}));
  EXPECT_EQ(scale(-2.0, vec({1, -0.5})), vec({-2, 1}));
  const auto x = vec({0.25, -7, 3});
  EXPECT_EQ(inf(x, x), x);
}

TEST(Lattice, DimensionMismatchThrows) {
  EXPECT_THROW(sup(vec({1, 2}), vec({1, 2, 3})), std::invalid_argument);
  const LatticeVector p(LatticeSpace::p_norm(2, 2.0), {1, 2});
  EXPECT_THROW(add(vec({1, 2}), p), std::invalid_argument);
}

TEST(Lattice, RejectsBadConstruction) {
  EXPECT_THROW(LatticeSpace::sup(0), std::invalid_argument);
  EXPECT_THROW(LatticeSpace::p_norm(3, 0.5), std::invalid_argument);
  EXPECT_THROW(LatticeVector(LatticeSpace::sup(2), {1.0}), std::invalid_argument);
  EXPECT_THROW(LatticeVector(LatticeSpace::sup(1), {std::nan("")}), std::invalid_argument);
}

TEST(Lattice, Norms) {
  EXPECT_DOUBLE_EQ(norm(vec({1, -3})), 3.0);
  EXPECT_DOUBLE_EQ(norm(LatticeVector(LatticeSpace::p_norm(2, 2.0), {3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(norm(LatticeVector(LatticeSpace::p_norm(3, 1.0), {1, -2, 3})), 6.0);
  EXPECT_EQ(norm(vec({0, 0, 0})), 0.0);
  // no overflow for large entries and exponents
  const LatticeVector big(LatticeSpace::p_norm(2, 64.0), {1e300, 1e300});
  EXPECT_NEAR(norm(big) / 1e300, std::pow(2.0, 1.0 / 64.0), 1e-12);
}

TEST(Lattice, IdealNorm) {
  EXPECT_EQ(ideal_norm(vec({1, 2}), vec({1, 1})), 2.0);
  EXPECT_EQ(ideal_norm(vec({0, 0}), vec({0, 1})), 0.0);
  EXPECT_EQ(ideal_norm(vec({1, 0}), vec({0, 1})), std::nullopt);
  EXPECT_EQ(ideal_norm(vec({-3, 1}), vec({2, 4})), 1.5);
  EXPECT_THROW(ideal_norm(vec({1, 0}), vec({-1, 1})), std::invalid_argument);
}

TEST(Lattice, EvalFunctional) {
  const auto x = vec({7, 1});
  const auto y = vec({-2, 5});
  EXPECT_EQ(eval_functional(0, x), 7.0);
  EXPECT_EQ(eval_functional(1, sup(x, y)), std::max(eval_functional(1, x), eval_functional(1, y)));
  EXPECT_EQ(eval_functional(0, x + y), eval_functional(0, x) + eval_functional(0, y));
  EXPECT_THROW(eval_functional(2, x), std::out_of_range);
}

TEST(Lattice, SupAbsOfTuple) {
  const std::vector<LatticeVector> xs{vec({1, -2, 0}), vec({0, 1, 2})};
  EXPECT_EQ(sup_abs(xs), vec({1, 2, 2}));
  EXPECT_THROW(sup_abs({}), std::invalid_argument);
}
