#include "cyweyl/errors.hpp"
#include "cyweyl/invariants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cyweyl;

namespace {

constexpr double pi = std::numbers::pi;
const RootType rank_two_types[] = {RootType::a2, RootType::b2, RootType::bc2, RootType::d2, RootType::g2};

int degree(RootType type) { return type == RootType::a2 ? 3 : type == RootType::g2 ? 6 : 4; }

double sector(RootType type, bool inversion) {
  if (type == RootType::d2) return inversion ? pi / 4 : pi / 2;
  return pi / root_line_count(type);
}

Eigen::Vector2d sector_point(std::mt19937_64& rng, double angle, double r_lo = 0.2, double r_hi = 2.0) {
  std::uniform_real_distribution<double> r(r_lo, r_hi), t(0.02, 0.98);
  const double radius = r(rng), theta = t(rng) * angle;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

}  // namespace

TEST(Generators, KnownValues) {
  EXPECT_DOUBLE_EQ(rho1({3.0, 4.0}), 25.0);
  EXPECT_DOUBLE_EQ(rho1({0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(rho2(RootType::b2, {2.0, 1.0}), 4.0);
  EXPECT_DOUBLE_EQ(rho2(RootType::g2, {1.0, 0.0}), 3.0);
  EXPECT_THROW(rho2(RootType::rank1, {1.0, 0.0}), DomainError);
}

TEST(Generators, PolarForms) {
  for (RootType type : rank_two_types)
    for (double r : {0.3, 1.0, 1.7})
      for (int i = 0; i <= 12; ++i) {
        const double t = i * pi / 6;
        const Eigen::Vector2d v(r * std::cos(t), r * std::sin(t));
        EXPECT_NEAR(rho1(v), r * r, 1e-12 * r * r);
        const double scale = std::pow(r, degree(type));
        EXPECT_NEAR(rho2(type, v), rho2_polar(type, r, t), 1e-12 * 3 * scale) << to_string(type);
      }
  EXPECT_NEAR(rho2_polar(RootType::a2, 2.0, 0.1), 8.0 * std::cos(0.3), 1e-14);
  EXPECT_NEAR(rho2_polar(RootType::g2, 1.0, 0.0), 3.0, 1e-14);
}

TEST(Generators, WeylInvariance) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (RootType type : rank_two_types) {
    const auto group = weyl_group(type);
    for (int trial = 0; trial < 500; ++trial) {
      const Eigen::Vector2d v(n(rng), n(rng));
      const double r1 = rho1(v), r2 = rho2(type, v);
      for (const auto& w : group) {
        EXPECT_NEAR(rho1(w * v), r1, 1e-10 * (1 + std::abs(r1)));
        EXPECT_NEAR(rho2(type, w * v), r2, 1e-10 * (1 + std::abs(r2))) << to_string(type);
      }
    }
  }
}

TEST(Symmetrization, MatchesClosedForms) {
  EXPECT_NEAR(symmetrize_phi(RootType::d2, {1.0, 1.0}), 4.0, 1e-13);
  EXPECT_NEAR(symmetrize_phi(RootType::b2, {1.0, 2.0}), 32.0, 1e-12);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  for (RootType type : rank_two_types)
    for (int trial = 0; trial < 500; ++trial) {
      const Eigen::Vector2d v(n(rng), n(rng));
      const double closed = symmetrized_closed_form(type, v);
      const double scale = std::max(std::abs(closed), std::pow(v.norm(), degree(type)));
      EXPECT_NEAR(symmetrize_phi(type, v), closed, 1e-10 * scale) << to_string(type);
    }
  const Eigen::Vector2d v(0.7, -0.4);
  EXPECT_NEAR(symmetrized_closed_form(RootType::a2, v), -1.5 * rho2(RootType::a2, v), 1e-14);
  EXPECT_NEAR(symmetrized_closed_form(RootType::g2, v), 0.375 * rho2(RootType::g2, v), 1e-14);
}

TEST(Derivatives, TabulatedValues) {
  const Eigen::Vector2d g = grad_rho(RootType::a2, 2, {1.0, 1.0});
  EXPECT_NEAR(g.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.y(), -6.0, 1e-15);
  for (RootType type : rank_two_types)
    EXPECT_TRUE(hess_rho(type, 1, {0.3, -1.2}).isApprox(2.0 * Eigen::Matrix2d::Identity()));
  Eigen::Matrix2d j;
  j << 4, 2, 4, 8;
  EXPECT_TRUE(jacobian_rho(RootType::b2, {2.0, 1.0}).isApprox(j));
}

TEST(Derivatives, SecondOrderFiniteDifferenceAgreement) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1.0);
  for (RootType type : rank_two_types)
    for (int which : {1, 2})
      for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector2d v(n(rng), n(rng));
        const Eigen::Vector2d grad = grad_rho(type, which, v);
        const Eigen::Matrix2d hess = hess_rho(type, which, v);
        auto errors = [&](double h) {
          double eg = 0.0, eh = 0.0;
          for (int i = 0; i < 2; ++i) {
            const Eigen::Vector2d e = h * Eigen::Vector2d::Unit(i);
            const double fd = (rho(type, which, v + e) - rho(type, which, v - e)) / (2 * h);
            eg = std::max(eg, std::abs(fd - grad(i)));
            const Eigen::Vector2d fdh = (grad_rho(type, which, v + e) - grad_rho(type, which, v - e)) / (2 * h);
            eh = std::max(eh, (fdh - hess.col(i)).cwiseAbs().maxCoeff());
          }
          return std::pair{eg, eh};
        };
        const auto [g1, h1] = errors(1e-2);
        const auto [g2, h2] = errors(5e-3);
        if (g1 > 1e-9) EXPECT_GE(std::log2(g1 / g2), 1.9) << to_string(type) << which;
        if (h1 > 1e-9) EXPECT_GE(std::log2(h1 / h2), 1.9) << to_string(type) << which;
      }
}

TEST(Jacobian, NonsingularInsideSingularOnWalls) {
  std::mt19937_64 rng(14);
  for (RootType type : rank_two_types) {
    const double angle = sector(type, false);
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::Vector2d v = sector_point(rng, angle);
      EXPECT_GT(std::abs(jacobian_rho(type, v).determinant()), 0.0);
    }
    const int k = root_line_count(type);
    for (int j = 0; j < k; ++j) {
      const double t = j * pi / k;
      const Eigen::Vector2d w(1.3 * std::cos(t), 1.3 * std::sin(t));
      const Eigen::Matrix2d jac = jacobian_rho(type, w);
      EXPECT_NEAR(jac.determinant(), 0.0, 1e-12 * jac.norm() * jac.norm()) << to_string(type) << " wall " << j;
    }
  }
}

TEST(ImageRegion, Membership) {
  EXPECT_TRUE(image_region_contains(RootType::b2, {2.0, 1.0}));
  EXPECT_FALSE(image_region_interior(RootType::b2, {2.0, 1.0}));
  EXPECT_FALSE(image_region_contains(RootType::a2, {1.0, 2.0}));
  EXPECT_TRUE(image_region_contains(RootType::g2, {1.0, 2.0}));
  EXPECT_FALSE(image_region_contains(RootType::g2, {-1.0, 0.0}));
}

TEST(Inverse, KnownPoint) {
  const Eigen::Vector2d x = rho_inverse(RootType::b2, {5.0, 4.0});
  EXPECT_NEAR(x.x(), 2.0, 1e-13);
  EXPECT_NEAR(x.y(), 1.0, 1e-13);
  EXPECT_THROW(rho_inverse(RootType::b2, {1.0, 0.5}), DomainError);
  EXPECT_THROW(rho_inverse(RootType::a2, {-1.0, 0.0}), DomainError);
}

TEST(Inverse, RoundTripsOnTheOpenChamber) {
  std::mt19937_64 rng(15);
  for (RootType type : rank_two_types) {
    const InvariantBasis basis(type);
    const double angle = sector(type, true);
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::Vector2d x = sector_point(rng, angle);
      const Eigen::Vector2d y = basis.forward(x);
      ASSERT_TRUE(basis.image_interior(y));
      const Eigen::Vector2d back = basis.inverse(y);
      EXPECT_LE((back - x).norm() / x.norm(), 1e-9) << to_string(type);
      EXPECT_LE((basis.forward(back) - y).norm() / (1 + y.norm()), 1e-9) << to_string(type);
    }
  }
}
