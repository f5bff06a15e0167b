#pragma once

#include "cyweyl/invariants.hpp"
#include "cyweyl/radial_profile.hpp"
#include "cyweyl/root_data.hpp"
#include "cyweyl/transversal_operator.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace cyweyl {

using ValueFn = std::function<double(const Eigen::VectorXd&)>;

/// Scalar function with optional derivatives.  Missing derivatives are
/// synthesized by central differences (step eps^(1/3) (1 + |x|) for gradients
/// from values, eps^(1/4) (1 + |x|) for Hessians from values).
struct ScalarField {
  ValueFn value;
  GradientFn gradient;
  HessianFn hessian;
  /// Optional domain predicate; empty means everywhere.
  std::function<bool(const Eigen::VectorXd&)> domain;

  Eigen::VectorXd grad(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hess(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x) const { return !domain || domain(x); }
};

/// Potential on the chamber.
using ChamberFunction = ScalarField;
/// Function of the invariant coordinates y.
using ImageFunction = ScalarField;

/// rho(s) = f(s^2) for a rank-one profile, with exact derivatives.
ChamberFunction radial_potential(const RadialProfile& profile);
/// Generator `which` of a rank-two type as a chamber function.
ChamberFunction generator_potential(RootType type, int which);

struct ChamberResidual {
  double residual = 0.0;
  double hessian_determinant = 0.0;
  double transversal = 0.0;
  /// The Hessian is not positive definite.
  bool non_convex = false;
};

/// D(rho)(z) det Hess rho(z) - 2^n, with D the full transversal product.
ChamberResidual chamber_residual(const RestrictedRootSystem& rrs, int n, const ChamberFunction& rho,
                                 const Eigen::VectorXd& z, const WallRegularization& reg = {});

/// Block-diagonal description of the complex Hessian at z:
/// (1/4) (Hess rho  (+)  sum over roots of factor * identity(multiplicity)).
struct ComplexHessianBlocks {
  Eigen::MatrixXd radial;
  std::vector<std::pair<double, int>> transversal;

  int size() const;
  double determinant() const;
  /// Dense matrix whose transversal part is written in a random orthonormal
  /// basis (so the determinant has to be computed, not read off).
  Eigen::MatrixXd assemble(std::uint64_t rotation_seed) const;
};

ComplexHessianBlocks complex_hessian_blocks(const RestrictedRootSystem& rrs, const ChamberFunction& rho,
                                            const Eigen::VectorXd& z, const WallRegularization& reg = {});

struct InvariantResidual {
  double residual = 0.0;
  /// det of the pulled-back Hessian.
  double det_factor = 0.0;
  /// sum_k (df/dy_k) D(rho_k).
  double transversal_factor = 0.0;
  Eigen::Vector2d chamber_point = Eigen::Vector2d::Zero();
};

/// Invariant-coordinate condition at a chamber point x, assembled from explicit
/// index sums:  det(sum_k [sum_k' f_k'k drho_k'/dx_i drho_k/dx_j + f_k d2rho_k/dx_i dx_j])
///              * sum_k f_k D(rho_k) - 2^n.
InvariantResidual invariant_residual(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                     const InvariantBasis& basis, const Eigen::Vector2d& x,
                                     const WallRegularization& reg = {});

/// The same condition at an image point y, assembled with matrix products
/// (J^T Hf J + sum_i f_i Hess rho_i, J the Jacobian with rows grad rho_i) at
/// the chamber point rho_inverse(y).
InvariantResidual image_residual(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                 const InvariantBasis& basis, const Eigen::Vector2d& y,
                                 const WallRegularization& reg = {});

/// Rank-one analogue with the single generator rho1(s) = s^2:
/// (4 s^2 f'' + 2 f') f' D(rho1)(s) - 2^n, derivatives of f taken at s^2.
InvariantResidual invariant_residual_rank_one(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                              double s, const WallRegularization& reg = {});

}  // namespace cyweyl
