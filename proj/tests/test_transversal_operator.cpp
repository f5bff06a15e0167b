#include "cyweyl/errors.hpp"
#include "cyweyl/invariants.hpp"
#include "cyweyl/transversal_operator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cyweyl;

namespace {

constexpr double pi = std::numbers::pi;

RestrictedRootSystem unit_system(RootType type) {
  const std::vector<int> m(static_cast<std::size_t>(root_line_count(type)), 1);
  std::vector<int> m2;
  if (type == RootType::bc2) m2 = {1, 0, 1, 0};
  return build_rank_two(type, m, m2);
}

const RootType rank_two_types[] = {RootType::a2, RootType::b2, RootType::bc2, RootType::d2, RootType::g2};

GradientFn generator_gradient(RootType type, int which) {
  return [=](const Eigen::VectorXd& z) -> Eigen::VectorXd { return grad_rho(type, which, Eigen::Vector2d(z)); };
}

Eigen::Vector2d chamber_point(std::mt19937_64& rng, RootType type) {
  std::uniform_real_distribution<double> r(0.2, 2.0), t(0.05, 0.95);
  const double radius = r(rng), theta = t(rng) * pi / root_line_count(type);
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

}  // namespace

TEST(XOverTanh, SeriesMatchesDirectAroundCrossover) {
  const WallRegularization reg;
  for (double x = reg.taylor_threshold / 2; x <= 2 * reg.taylor_threshold; x *= 1.1)
    EXPECT_NEAR(x_over_tanh_series(x), x / std::tanh(x), 1e-13);
  EXPECT_DOUBLE_EQ(x_over_tanh(0.0), 1.0);
  EXPECT_NEAR(x_over_tanh_series(reg.taylor_threshold), reg.taylor_threshold / std::tanh(reg.taylor_threshold),
              1e-14);
}

TEST(XOverTanh, RegularizationIsValidated) {
  EXPECT_THROW((WallRegularization{0.5, 8}).validate(), DomainError);
  EXPECT_THROW((WallRegularization{1e-4, 5}).validate(), DomainError);
  EXPECT_THROW(transversal_product_rank_one_rho1(3, 0, 1.0, 0.5, WallRegularization{0.0, 8}), DomainError);
}

TEST(RankOneProduct, LimitAndKnownValues) {
  for (int n : {2, 3, 8, 16}) EXPECT_NEAR(transversal_product_rank_one_rho1(n, 0, 1.0, 0.0), std::ldexp(1.0, n), 0.0);
  EXPECT_NEAR(transversal_product_rank_one_rho1(16, 7, 2.0, 0.0), std::ldexp(1.0, 16), 0.0);
  EXPECT_NEAR(transversal_product_rank_one_rho1(3, 0, 1.0, 1.0), std::pow(2.0 / std::tanh(1.0), 3), 1e-13);
  const double s = 40.0;
  EXPECT_NEAR(transversal_product_rank_one_rho1(1, 0, 1.0, s) / (2 * s), 1.0, 1e-12);
}

TEST(RankOneProduct, AgreesWithGenericProduct) {
  for (auto [n, d, c] : {std::tuple{3, 0, 1.0}, {4, 1, 1.0}, {8, 3, 4.0}, {16, 7, 1.0}}) {
    const auto rrs = build_rank_one(n, d, c);
    const GradientFn grad = [](const Eigen::VectorXd& z) -> Eigen::VectorXd { return 2.0 * z; };
    for (double s : {1e-6, 0.3, 1.0, 2.5}) {
      Eigen::VectorXd z(1);
      z << s;
      const double a = transversal_product(rrs, grad, z);
      const double b = transversal_product_rank_one_rho1(n, d, c, s);
      EXPECT_NEAR(a, b, 1e-12 * b) << n << " " << d << " " << s;
    }
  }
}

TEST(RankTwoProduct, SpecializedAndGenericPathsAgree) {
  std::mt19937_64 rng(21);
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    for (int trial = 0; trial < 500; ++trial) {
      const Eigen::Vector2d x = chamber_point(rng, type);
      const Eigen::VectorXd z = x;
      const double a1 = transversal_product(rrs, generator_gradient(type, 1), z);
      const double a2 = transversal_product(rrs, generator_gradient(type, 2), z);
      EXPECT_NEAR(transversal_product_rho1(rrs, x), a1, 1e-12 * std::abs(a1)) << to_string(type);
      EXPECT_NEAR(transversal_product_rho2(rrs, x), a2, 1e-12 * std::abs(a2)) << to_string(type);
      EXPECT_NEAR(transversal_product_generator(rrs, 2, x), a2, 1e-12 * std::abs(a2)) << to_string(type);
    }
  }
}

TEST(RankTwoProduct, ConstantPotentialGivesZero) {
  const auto rrs = unit_system(RootType::a2);
  const GradientFn zero = [](const Eigen::VectorXd&) -> Eigen::VectorXd { return Eigen::Vector2d::Zero(); };
  Eigen::VectorXd z(2);
  z << 1.0, 0.2;
  EXPECT_EQ(transversal_product(rrs, zero, z), 0.0);
}

TEST(RankTwoProduct, WeylInvarianceOfBothGenerators) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> n(0.0, 1.0);
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    const auto group = weyl_group(rrs);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Vector2d x = chamber_point(rng, type);
      const double d1 = transversal_product_rho1(rrs, x), d2 = transversal_product_rho2(rrs, x);
      for (const auto& w : group) {
        const Eigen::Vector2d y = w * x;
        EXPECT_NEAR(transversal_product_rho1(rrs, y), d1, 1e-10 * std::abs(d1));
        EXPECT_NEAR(transversal_product_rho2(rrs, y), d2, 1e-10 * std::abs(d2)) << to_string(type);
      }
    }
  }
}

TEST(RankTwoProduct, PositiveForEveryBuiltin) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.5);
  for (const auto& name : builtin_names()) {
    const auto desc = builtin_descriptor(name);
    const auto rrs = desc.root_system();
    for (int trial = 0; trial < 100; ++trial) EXPECT_GT(transversal_product_rho1(rrs, {n(rng), n(rng)}), 0.0) << name;
    EXPECT_GT(transversal_product_rho1(rrs, Eigen::Vector2d::Zero()), 0.0) << name;
  }
}

TEST(WallLimit, FullSetAtOriginIsPowerOfTwo) {
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    std::vector<int> all;
    for (int j = 0; j < rrs.line_count(); ++j) all.push_back(j);
    const double expected = std::ldexp(1.0, rrs.transversal_dimension());
    EXPECT_NEAR(transversal_product_rho1_wall_limit(rrs, all, Eigen::Vector2d::Zero()), expected, 1e-12 * expected);
    EXPECT_NEAR(transversal_product_rho1(rrs, Eigen::Vector2d::Zero()), expected, 1e-12 * expected);
  }
}

TEST(WallLimit, EmptySetIsThePlainProduct) {
  const auto rrs = unit_system(RootType::g2);
  const Eigen::Vector2d a(1.0, 0.2);
  EXPECT_NEAR(transversal_product_rho1_wall_limit(rrs, {}, a), transversal_product_rho1(rrs, a), 1e-12);
}

TEST(WallLimit, ApproachIsAtLeastFirstOrder) {
  const auto rrs = unit_system(RootType::b2);
  const Eigen::Vector2d a(1.0, 1.0);
  const int wall[] = {1};
  const double limit = transversal_product_rho1_wall_limit(rrs, wall, a);
  const Eigen::Vector2d normal = rrs.root(1).covector.normalized();
  double previous = 0.0;
  for (int j = 4; j <= 12; ++j) {
    const double eps = std::ldexp(1.0, -j);
    const double err = std::abs(transversal_product_rho1(rrs, a + eps * normal) - limit);
    if (j > 4 && err > 1e-13) EXPECT_GE(std::log2(previous / err), 0.9) << j;
    previous = err;
  }
}

TEST(WallLimit, PreconditionsAreChecked) {
  const auto rrs = unit_system(RootType::b2);
  const int wall[] = {0};
  EXPECT_THROW(transversal_product_rho1_wall_limit(rrs, wall, {1.0, 0.5}), DomainError);
  const int bad[] = {7};
  EXPECT_THROW(transversal_product_rho1_wall_limit(rrs, bad, {1.0, 0.0}), DomainError);
}

TEST(SecondGenerator, SpecializedPathRejectsWallPoints) {
  const auto rrs = unit_system(RootType::b2);
  EXPECT_THROW(transversal_product_rho2(rrs, {1.0, 1.0}), DomainError);
  // The gradient of an invariant is tangent to every wall, so the generic
  // product has a finite limit there.
  const Eigen::VectorXd z = Eigen::Vector2d(1.0, 1.0);
  const double at_wall = transversal_product(rrs, generator_gradient(RootType::b2, 2), z);
  EXPECT_TRUE(std::isfinite(at_wall));
  for (double eps : {1e-2, 1e-3}) {
    const double near = transversal_product_rho2(rrs, {1.0, 1.0 + eps});
    EXPECT_NEAR(near, at_wall, 10 * eps * std::abs(at_wall));
  }
}

TEST(SecondGenerator, NonInvariantGradientIsSingularAtWall) {
  const auto rrs = unit_system(RootType::d2);
  const GradientFn tilted = [](const Eigen::VectorXd&) -> Eigen::VectorXd { return Eigen::Vector2d(1.0, 1.0); };
  const Eigen::VectorXd z = Eigen::Vector2d(1.0, 0.0);
  EXPECT_THROW(transversal_product(rrs, tilted, z), WallSingularityError);
}

TEST(RootScales, ScalingIsReflectedInTheProduct) {
  const int m[] = {1, 1, 1};
  const double scales[] = {2.0, 2.0, 2.0};
  const auto scaled = build_rank_two(RootType::a2, m, {}, scales);
  const auto unit = unit_system(RootType::a2);
  const Eigen::Vector2d x(1.0, 0.3);
  double expected = 1.0;
  for (int j = 0; j < 3; ++j) {
    const double lam = unit.root(j).covector.dot(x);
    expected *= 4.0 * lam / std::tanh(2.0 * lam);
  }
  EXPECT_NEAR(transversal_product_rho1(scaled, x), expected, 1e-12 * expected);
}
