#pragma once

#include "cyweyl/root_data.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace cyweyl {

/// Below `taylor_threshold`, x / tanh(x) is evaluated by its even Taylor series
/// truncated at degree `series_order` (2, 4, 6 or 8).
struct WallRegularization {
  double taylor_threshold = 1e-4;
  int series_order = 8;

  void validate() const;
};

/// x / tanh(x), equal to 1 at x = 0.
double x_over_tanh(double x, const WallRegularization& reg = {});
/// The truncated series alone (for crossover checks).
double x_over_tanh_series(double x, int series_order = 8);

using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using HessianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// One scalar factor X(rho)/tanh(lambda(z)) together with the number of
/// transversal directions it acts on.
struct TransversalFactor {
  int root = 0;
  bool doubled = false;
  double value = 0.0;
  int multiplicity = 0;
  bool on_wall = false;
};

/// Per-root factors (doubled roots listed separately).  At a wall the factor is
/// replaced by its limit; the limit needs the normal second derivative of rho,
/// taken from `hessian` when given and from differences of `gradient` otherwise.
/// Throws WallSingularityError when the numerator does not vanish on the wall.
std::vector<TransversalFactor> transversal_factors(const RestrictedRootSystem& rrs, const GradientFn& gradient,
                                                   const Eigen::VectorXd& z, const WallRegularization& reg = {},
                                                   const HessianFn& hessian = {});

/// prod over positive roots of (X_lambda(rho) / tanh lambda(z))^m_lambda, doubled
/// roots contributing (2 X_lambda(rho) / tanh 2 lambda(z))^m_2lambda.
double transversal_product(const RestrictedRootSystem& rrs, const GradientFn& gradient, const Eigen::VectorXd& z,
                           const WallRegularization& reg = {}, const HessianFn& hessian = {});

/// Rank one, rho = |v|^2:
/// (2 sqrt(c) s / tanh(sqrt(c) s))^(n-d) (4 sqrt(c) s / tanh(2 sqrt(c) s))^d, equal to 2^n at s = 0.
double transversal_product_rank_one_rho1(int n, int d, double curvature, double s, const WallRegularization& reg = {});

/// Rank two, rho = rho1; finite everywhere.
double transversal_product_rho1(const RestrictedRootSystem& rrs, const Eigen::Vector2d& x,
                                const WallRegularization& reg = {});

/// Rank two, rho = rho2 from the tabulated numerators.  x must be off every
/// wall (DomainError otherwise); use transversal_product for wall limits.
double transversal_product_rho2(const RestrictedRootSystem& rrs, const Eigen::Vector2d& x,
                                const WallRegularization& reg = {});

/// Value of the rho1 product on the intersection of the walls of the root lines
/// in `wall_roots`: those factors become 2 each, the others are evaluated at a.
double transversal_product_rho1_wall_limit(const RestrictedRootSystem& rrs, std::span<const int> wall_roots,
                                           const Eigen::Vector2d& a, const WallRegularization& reg = {});

/// Generic product for generator `which` of a rank-two system, via its gradient
/// and Hessian.
double transversal_product_generator(const RestrictedRootSystem& rrs, int which, const Eigen::Vector2d& x,
                                     const WallRegularization& reg = {});

/// |lambda(z)| < tau (1 + |z|).
bool on_wall(const RootDatum& root, const Eigen::VectorXd& z, const WallRegularization& reg = {});

}  // namespace cyweyl
