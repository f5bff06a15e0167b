#pragma once

#include "cyweyl/root_data.hpp"
#include "cyweyl/root_finding.hpp"

#include <Eigen/Dense>

namespace cyweyl {

/// rho1(v) = |v|^2.
double rho1(const Eigen::Vector2d& v);

/// Second generator: x1(x1^2 - 3 x2^2) for a2, x1^2 x2^2 for b2/bc2/d2,
/// 3x1^6 - 9x1^4x2^2 + 21x1^2x2^4 + x2^6 for g2.
double rho2(RootType type, const Eigen::Vector2d& v);

/// Generator `which` (1 or 2).
double rho(RootType type, int which, const Eigen::Vector2d& v);
Eigen::Vector2d grad_rho(RootType type, int which, const Eigen::Vector2d& v);
Eigen::Matrix2d hess_rho(RootType type, int which, const Eigen::Vector2d& v);

/// (rho1, rho2).
Eigen::Vector2d rho_vec(RootType type, const Eigen::Vector2d& v);

/// Rows are grad rho1 and grad rho2.
Eigen::Matrix2d jacobian_rho(RootType type, const Eigen::Vector2d& v);

/// Seed monomial averaged over W: v1 v2^2 (a2), v1^2 v2^2 (b2/bc2/d2), v1^2 v2^4 (g2).
double phi_seed(RootType type, const Eigen::Vector2d& v);

/// sum over the Weyl group of phi_seed(B v), by brute force.
double symmetrize_phi(RootType type, const Eigen::Vector2d& v);

/// Closed form of the symmetrized seed: -(3/2) rho2 (a2), 4 rho2 (d2),
/// 8 rho2 (b2/bc2), (3/8) rho2 (g2).
double symmetrized_closed_form(RootType type, const Eigen::Vector2d& v);

/// rho2 in polar coordinates: r^3 cos 3t (a2), r^4 sin^2(2t)/4 (b2 family),
/// r^6 (cos 6t + 2) (g2).
double rho2_polar(RootType type, double r, double theta);

/// Closed image region of the chamber under (rho1, rho2).
bool image_region_contains(RootType type, const Eigen::Vector2d& y);
/// Open image region (strict inequalities).
bool image_region_interior(RootType type, const Eigen::Vector2d& y);

/// Inverse of (rho1, rho2) onto the chamber (0 < t < pi/4 for d2).  Throws
/// DomainError outside the open image region.
Eigen::Vector2d rho_inverse(RootType type, const Eigen::Vector2d& y, const RootFindingSettings& settings = {});

/// Generator pair of one rank-two type, bundled with the inversion settings.
class InvariantBasis {
 public:
  explicit InvariantBasis(RootType type, RootFindingSettings settings = {});

  RootType type() const { return type_; }
  const RootFindingSettings& settings() const { return settings_; }

  double value(int which, const Eigen::Vector2d& x) const { return rho(type_, which, x); }
  Eigen::Vector2d gradient(int which, const Eigen::Vector2d& x) const { return grad_rho(type_, which, x); }
  Eigen::Matrix2d hessian(int which, const Eigen::Vector2d& x) const { return hess_rho(type_, which, x); }
  Eigen::Vector2d forward(const Eigen::Vector2d& x) const { return rho_vec(type_, x); }
  Eigen::Matrix2d jacobian(const Eigen::Vector2d& x) const { return jacobian_rho(type_, x); }
  Eigen::Vector2d inverse(const Eigen::Vector2d& y) const { return rho_inverse(type_, y, settings_); }
  bool image_contains(const Eigen::Vector2d& y) const { return image_region_contains(type_, y); }
  bool image_interior(const Eigen::Vector2d& y) const { return image_region_interior(type_, y); }

 private:
  RootType type_;
  RootFindingSettings settings_;
};

}  // namespace cyweyl
