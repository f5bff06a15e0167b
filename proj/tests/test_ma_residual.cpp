#include "cyweyl/errors.hpp"
#include "cyweyl/ma_residual.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cyweyl;

namespace {

constexpr double pi = std::numbers::pi;

ImageFunction quadratic_image_function() {
  ImageFunction f;
  f.value = [](const Eigen::VectorXd& y) { return 0.5 * y(0) * y(0) + y(0) + 0.3 * y(1) + 0.1 * y(0) * y(1); };
  f.gradient = [](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return Eigen::Vector2d(y(0) + 1.0 + 0.1 * y(1), 0.3 + 0.1 * y(0));
  };
  f.hessian = [](const Eigen::VectorXd&) -> Eigen::MatrixXd {
    Eigen::Matrix2d h;
    h << 1.0, 0.1, 0.1, 0.0;
    return h;
  };
  return f;
}

Eigen::Vector2d chamber_point(std::mt19937_64& rng, double angle) {
  std::uniform_real_distribution<double> r(0.3, 1.5), t(0.05, 0.95);
  const double radius = r(rng), theta = t(rng) * angle;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

ImageFunction profile_as_image(const RadialProfile& profile) {
  ImageFunction f;
  f.value = [profile](const Eigen::VectorXd& y) { return profile.f_value(y(0)); };
  f.gradient = [profile](const Eigen::VectorXd& y) { return Eigen::VectorXd::Constant(1, profile.f_prime(y(0))); };
  f.hessian = [profile](const Eigen::VectorXd& y) { return Eigen::MatrixXd::Constant(1, 1, profile.f_second(y(0))); };
  return f;
}

}  // namespace

TEST(ScalarField, SynthesizedDerivativesMatchSupplied) {
  const ChamberFunction exact = generator_potential(RootType::g2, 2);
  ChamberFunction values_only;
  values_only.value = exact.value;
  ChamberFunction with_gradient = values_only;
  with_gradient.gradient = exact.gradient;
  const Eigen::VectorXd x = Eigen::Vector2d(0.7, 0.2);
  EXPECT_LT((values_only.grad(x) - exact.grad(x)).norm(), 1e-8);
  EXPECT_LT((values_only.hess(x) - exact.hess(x)).norm(), 1e-5);
  EXPECT_LT((with_gradient.hess(x) - exact.hess(x)).norm(), 1e-7);
  EXPECT_THROW(ChamberFunction{}.grad(x), DomainError);
}

TEST(InvariantResidual, RankOneRadialProfileSolvesTheCondition) {
  for (auto [n, d] : {std::pair{3, 0}, {8, 3}}) {
    ProfileParams p;
    p.n = n;
    p.d = d;
    p.C1 = 1.0;
    const RadialProfile profile(p);
    const auto rrs = build_rank_one(n, d, 1.0);
    for (double s = 0.1; s <= 10.0; s += 0.3) {
      // Twice the radial equation.
      const InvariantResidual r = invariant_residual_rank_one(profile_as_image(profile), rrs, n, s);
      EXPECT_NEAR(r.residual, 2.0 * profile.ode_residual(s), 1e-6 * std::ldexp(1.0, n)) << s;
      EXPECT_LE(std::abs(r.residual), 1e-6 * std::ldexp(1.0, n)) << s;
    }
  }
}

TEST(ChamberResidual, HalfSquaredNormOnRankOne) {
  // rho = s^2 / 2 on a rank-one system with m = 1: D = s / tanh(s), det Hess = 1.
  const auto rrs = build_rank_one(2, 0, 1.0, MultiplicityConvention::geometric);
  ChamberFunction rho;
  rho.value = [](const Eigen::VectorXd& z) { return 0.5 * z.squaredNorm(); };
  rho.gradient = [](const Eigen::VectorXd& z) -> Eigen::VectorXd { return z; };
  rho.hessian = [](const Eigen::VectorXd&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(1, 1); };
  double previous = 1e300;
  for (double s : {1.0, 0.1, 0.01, 1e-5}) {
    const ChamberResidual r = chamber_residual(rrs, 1, rho, Eigen::VectorXd::Constant(1, s));
    EXPECT_NEAR(r.transversal, s / std::tanh(s), 1e-14);
    EXPECT_NEAR(r.residual, s / std::tanh(s) - 2.0, 1e-14);
    EXPECT_LT(std::abs(r.residual + 1.0), previous);
    previous = std::abs(r.residual + 1.0);
  }
}

TEST(ChamberResidual, NonConvexPotentialIsFlagged) {
  const auto rrs = build_rank_two(RootType::d2, std::vector<int>{1, 1});
  ChamberFunction rho;
  rho.value = [](const Eigen::VectorXd& z) { return z(0) * z(0) - 0.1 * z(1) * z(1) + z(1) * z(1) * z(0) * z(0); };
  const ChamberResidual r = chamber_residual(rrs, 4, rho, Eigen::Vector2d(0.5, 0.5));
  EXPECT_TRUE(std::isfinite(r.residual));
  const ChamberResidual convex = chamber_residual(rrs, 4, generator_potential(RootType::d2, 1), Eigen::Vector2d(0.5, 0.5));
  EXPECT_FALSE(convex.non_convex);
}

TEST(ComplexHessian, DeterminantMatchesBlockProduct) {
  std::mt19937_64 rng(31);
  for (const char* name : {"SU(3)/SO(3)", "Sp(2)/U(2)", "G2/SO(4)", "SO(10)/U(5)"}) {
    const auto desc = builtin_descriptor(name);
    const auto rrs = desc.root_system();
    const ChamberFunction rho = generator_potential(desc.type, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Vector2d z = chamber_point(rng, chamber_angle(rrs));
      const ComplexHessianBlocks blocks = complex_hessian_blocks(rrs, rho, z);
      EXPECT_EQ(blocks.size(), desc.n);
      const double dense = blocks.assemble(static_cast<std::uint64_t>(trial)).determinant();
      EXPECT_NEAR(dense, blocks.determinant(), 1e-12 * std::abs(blocks.determinant())) << name;
      const ChamberResidual cr = chamber_residual(rrs, desc.n, rho, z);
      const double expected = cr.hessian_determinant * cr.transversal / std::pow(4.0, desc.n);
      EXPECT_NEAR(blocks.determinant(), expected, 1e-12 * std::abs(expected)) << name;
    }
  }
}

TEST(InvariantResidual, IndexSumsAgreeWithMatrixForm) {
  std::mt19937_64 rng(32);
  const ImageFunction f = quadratic_image_function();
  for (const char* name : {"SU(3)/SO(3)", "SO(5)/(SO(2)xSO(3))", "Sp(5)/(Sp(2)xSp(3))", "E6/F4", "G2/SO(4)"}) {
    const auto desc = builtin_descriptor(name);
    const auto rrs = desc.root_system();
    const InvariantBasis basis(desc.type);
    const double angle = chamber_angle(rrs, ChamberKind::inversion);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Vector2d x = chamber_point(rng, angle);
      const InvariantResidual a = invariant_residual(f, rrs, desc.n, basis, x);
      const InvariantResidual b = image_residual(f, rrs, desc.n, basis, basis.forward(x));
      const double scale = std::abs(a.det_factor * a.transversal_factor) + std::ldexp(1.0, desc.n);
      EXPECT_NEAR(a.residual, b.residual, 1e-10 * scale) << name;
      EXPECT_LT((b.chamber_point - x).norm(), 1e-9);
    }
  }
}

TEST(InvariantResidual, DeterminantFactorIsHessianOfComposedPotential) {
  const auto desc = builtin_descriptor("SU(3)/SO(3)");
  const auto rrs = desc.root_system();
  const InvariantBasis basis(desc.type);
  const ImageFunction f = quadratic_image_function();
  ChamberFunction composed;
  composed.value = [&](const Eigen::VectorXd& z) {
    const Eigen::Vector2d y = basis.forward(Eigen::Vector2d(z));
    return f.value(y);
  };
  composed.gradient = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    const Eigen::Vector2d x = z;
    return basis.jacobian(x).transpose() * f.grad(basis.forward(x));
  };
  const Eigen::Vector2d x(0.9, 0.25);
  const double a = invariant_residual(f, rrs, desc.n, basis, x).det_factor;
  const double b = composed.hess(Eigen::VectorXd(x)).determinant();
  EXPECT_NEAR(a, b, 1e-7 * (std::abs(a) + 1.0));
}

TEST(InvariantResidual, ImagePointOutsideRegionIsRejected) {
  const auto desc = builtin_descriptor("SU(3)/SO(3)");
  const InvariantBasis basis(desc.type);
  EXPECT_THROW(image_residual(quadratic_image_function(), desc.root_system(), desc.n, basis, {1.0, 2.0}), DomainError);
}
