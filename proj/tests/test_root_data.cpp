#include "cyweyl/descriptor_io.hpp"
#include "cyweyl/errors.hpp"
#include "cyweyl/root_data.hpp"

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

bool contains_matrix(const std::vector<Eigen::Matrix2d>& group, const Eigen::Matrix2d& m) {
  for (const auto& g : group)
    if ((g - m).cwiseAbs().maxCoeff() < 1e-12) return true;
  return false;
}

}  // namespace

TEST(RankOne, ClosedFormConventionMultiplicities) {
  const auto rrs = build_rank_one(3, 0, 1.0);
  ASSERT_EQ(rrs.line_count(), 1);
  EXPECT_EQ(rrs.root(0).multiplicity, 3);
  EXPECT_EQ(rrs.root(0).double_multiplicity, 0);
  EXPECT_EQ(rrs.weyl_order(), 2);
}

TEST(RankOne, QuaternionicCaseScalesCovectorBySqrtCurvature) {
  const auto rrs = build_rank_one(8, 3, 4.0);
  EXPECT_EQ(rrs.root(0).multiplicity, 5);
  EXPECT_EQ(rrs.root(0).double_multiplicity, 3);
  Eigen::VectorXd v(1);
  v << 1.5;
  EXPECT_DOUBLE_EQ(rrs.root(0)(v), 3.0);
}

TEST(RankOne, GeometricConventionDropsOneDimension) {
  const auto rrs = build_rank_one(8, 3, 1.0, MultiplicityConvention::geometric);
  EXPECT_EQ(rrs.root(0).multiplicity, 4);
  EXPECT_EQ(rrs.total_dimension(), 8);
}

TEST(RankOne, RejectsDegenerateAndUnsupportedInput) {
  EXPECT_THROW(build_rank_one(2, 1, 1.0, MultiplicityConvention::geometric), DomainError);
  EXPECT_THROW(build_rank_one(5, 2, 1.0), DomainError);
  EXPECT_THROW(build_rank_one(3, 3, 1.0), DomainError);
  EXPECT_THROW(build_rank_one(1, 0, 1.0), DomainError);
  EXPECT_THROW(build_rank_one(4, 0, -1.0), DomainError);
}

TEST(RankTwo, LineCounts) {
  EXPECT_EQ(root_line_count(RootType::d2), 2);
  EXPECT_EQ(root_line_count(RootType::a2), 3);
  EXPECT_EQ(root_line_count(RootType::b2), 4);
  EXPECT_EQ(root_line_count(RootType::bc2), 4);
  EXPECT_EQ(root_line_count(RootType::g2), 6);
}

TEST(RankTwo, EachCovectorVanishesOnItsLine) {
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    const int k = rrs.line_count();
    for (int j = 0; j < k; ++j) {
      const double a = j * pi / k;
      Eigen::VectorXd line(2);
      line << std::cos(a), std::sin(a);
      EXPECT_NEAR(rrs.root(j)(line), 0.0, 1e-15) << to_string(type) << " line " << j;
      EXPECT_NEAR(rrs.root(j).covector.norm(), 1.0, 1e-15);
    }
  }
}

TEST(RankTwo, A2LinesAtMultiplesOfSixtyDegrees) {
  const auto rrs = unit_system(RootType::a2);
  ASSERT_EQ(rrs.line_count(), 3);
  EXPECT_NEAR(rrs.root(1).covector(0), -std::sin(pi / 3), 1e-15);
  EXPECT_NEAR(rrs.root(2).covector(1), std::cos(2 * pi / 3), 1e-15);
}

TEST(RankTwo, RootScalesMultiplyCovectors) {
  const int m[] = {1, 1};
  const double scales[] = {2.0, 0.5};
  const auto rrs = build_rank_two(RootType::d2, m, {}, scales);
  EXPECT_NEAR(rrs.root(0).covector.norm(), 2.0, 1e-15);
  EXPECT_NEAR(rrs.root(1).covector.norm(), 0.5, 1e-15);
}

TEST(RankTwo, DoubledRootsOnlyForBC2) {
  const int m[] = {1, 1, 1, 1};
  const int m2[] = {1, 0, 1, 0};
  EXPECT_NO_THROW(build_rank_two(RootType::bc2, m, m2));
  EXPECT_THROW(build_rank_two(RootType::b2, m, m2), DomainError);
  const int zero[] = {0, 1, 1, 1};
  EXPECT_THROW(build_rank_two(RootType::b2, zero), DomainError);
  const int short_list[] = {1, 1};
  EXPECT_THROW(build_rank_two(RootType::a2, short_list), DomainError);
}

TEST(WeylReflection, KnownMatrices) {
  const auto d2 = unit_system(RootType::d2);
  Eigen::Matrix2d flip;
  flip << 1, 0, 0, -1;
  EXPECT_TRUE(weyl_reflection(d2, 0).isApprox(flip, 1e-15));

  const auto b2 = unit_system(RootType::b2);
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_LT((weyl_reflection(b2, 1) - swap).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(weyl_reflection(b2, 4), DomainError);
  EXPECT_THROW(weyl_reflection(b2, -1), DomainError);
}

TEST(WeylReflection, InvolutionWithDeterminantMinusOne) {
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    for (int j = 0; j < rrs.line_count(); ++j) {
      const Eigen::Matrix2d b = weyl_reflection(rrs, j);
      EXPECT_LT((b * b - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_NEAR(b.determinant(), -1.0, 1e-14);
    }
  }
}

TEST(WeylGroup, OrderIsTwiceTheLineCount) {
  for (RootType type : rank_two_types) {
    const auto group = weyl_group(unit_system(type));
    EXPECT_EQ(static_cast<int>(group.size()), 2 * root_line_count(type)) << to_string(type);
  }
  EXPECT_EQ(weyl_group(RootType::g2).size(), 12u);
}

TEST(WeylGroup, ClosedUnderCompositionAndOrthogonal) {
  for (RootType type : rank_two_types) {
    const auto group = weyl_group(type);
    for (const auto& a : group) {
      EXPECT_LT((a.transpose() * a - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
      for (const auto& b : group) EXPECT_TRUE(contains_matrix(group, a * b)) << to_string(type);
    }
  }
}

TEST(WeylGroup, D2ContainsMinusIdentity) {
  EXPECT_TRUE(contains_matrix(weyl_group(RootType::d2), -Eigen::Matrix2d::Identity()));
}

TEST(Chamber, OpenSectorMembership) {
  const auto a2 = unit_system(RootType::a2);
  EXPECT_TRUE(chamber_contains(a2, {std::cos(pi / 6), std::sin(pi / 6)}));
  const auto g2 = unit_system(RootType::g2);
  EXPECT_FALSE(chamber_contains(g2, {1.0, 0.0}));
  const auto d2 = unit_system(RootType::d2);
  const Eigen::Vector2d steep(std::cos(1.2), std::sin(1.2));
  EXPECT_TRUE(chamber_contains(d2, steep));
  EXPECT_FALSE(chamber_contains(d2, steep, ChamberKind::inversion));
}

TEST(Chamber, RepresentativeOfB2Point) {
  const auto b2 = unit_system(RootType::b2);
  const Eigen::Vector2d rep = chamber_representative(b2, {-1.0, 1.0});
  EXPECT_NEAR(rep.x(), 1.0, 1e-14);
  EXPECT_NEAR(rep.y(), 1.0, 1e-14);
}

TEST(Chamber, RepresentativeIsFixedAndInOrbit) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (RootType type : rank_two_types) {
    const auto rrs = unit_system(type);
    const auto group = weyl_group(rrs);
    const double angle = chamber_angle(rrs);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::Vector2d v(n(rng), n(rng));
      const Eigen::Vector2d rep = chamber_representative(rrs, v);
      EXPECT_LT((chamber_representative(rrs, rep) - rep).norm(), 1e-12);
      const double theta = std::atan2(rep.y(), rep.x());
      EXPECT_GE(theta, -1e-12);
      EXPECT_LE(theta, angle + 1e-12);
      bool in_orbit = false;
      for (const auto& w : group) in_orbit = in_orbit || (w * v - rep).norm() < 1e-12;
      EXPECT_TRUE(in_orbit);
    }
  }
}

TEST(Builtins, DimensionIdentityHoldsForEveryRankTwoSpace) {
  for (const auto& name : builtin_names()) {
    const auto desc = builtin_descriptor(name);
    if (desc.type == RootType::rank1) continue;
    EXPECT_TRUE(desc.dimension_identity_holds()) << name;
    EXPECT_EQ(desc.root_system().total_dimension(), desc.n) << name;
  }
}

TEST(Builtins, RankOneGeometricDimensionIdentity) {
  for (const char* name : {"S^5", "CP^3", "HP^2", "OP^2"}) {
    auto desc = builtin_descriptor(name);
    EXPECT_FALSE(desc.dimension_identity_holds()) << name;
    desc.convention = MultiplicityConvention::geometric;
    EXPECT_TRUE(desc.dimension_identity_holds()) << name;
  }
  EXPECT_EQ(builtin_descriptor("OP^2").d, 7);
  EXPECT_EQ(builtin_descriptor("OP^2").n, 16);
}

TEST(Builtins, TypeTagsOfKnownSpaces) {
  EXPECT_EQ(builtin_descriptor("SU(3)/SO(3)").type, RootType::a2);
  EXPECT_EQ(builtin_descriptor("G2/SO(4)").type, RootType::g2);
  EXPECT_THROW(builtin_descriptor("Nowhere"), DomainError);
}

TEST(DescriptorJson, RoundTrip) {
  for (const auto& name : builtin_names()) {
    const auto desc = builtin_descriptor(name);
    const auto back = descriptor_from_json(descriptor_to_json(desc));
    EXPECT_EQ(back.name, desc.name);
    EXPECT_EQ(back.type, desc.type);
    EXPECT_EQ(back.n, desc.n);
    EXPECT_EQ(back.multiplicities, desc.multiplicities);
    EXPECT_EQ(back.double_multiplicities, desc.double_multiplicities);
  }
}

TEST(DescriptorJson, MalformedInputIsAParseError) {
  EXPECT_THROW(descriptor_from_json("{not json"), ParseError);
  EXPECT_THROW(descriptor_from_json(R"({"name":"x","type":"h3","n":3,"r":2})"), Error);
}
