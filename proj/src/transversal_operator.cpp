#include "cyweyl/transversal_operator.hpp"

#include "cyweyl/errors.hpp"
#include "cyweyl/invariants.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cyweyl {

void WallRegularization::validate() const {
  if (!(taylor_threshold > 0.0 && taylor_threshold <= 0.1))
    throw DomainError("taylor_threshold must lie in (0, 0.1]");
  if (series_order != 2 && series_order != 4 && series_order != 6 && series_order != 8)
    throw DomainError("series_order must be 2, 4, 6 or 8");
}

double x_over_tanh_series(double x, int series_order) {
  // 1 + x^2/3 - x^4/45 + 2x^6/945 - x^8/4725
  static constexpr double coeff[] = {1.0, 1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0};
  const double x2 = x * x;
  const int terms = series_order / 2;
  double sum = coeff[terms];
  for (int i = terms - 1; i >= 0; --i) sum = sum * x2 + coeff[i];
  return sum;
}

double x_over_tanh(double x, const WallRegularization& reg) {
  if (std::abs(x) < reg.taylor_threshold) return x_over_tanh_series(x, reg.series_order);
  return x / std::tanh(x);
}

bool on_wall(const RootDatum& root, const Eigen::VectorXd& z, const WallRegularization& reg) {
  return std::abs(root(z)) < reg.taylor_threshold * (1.0 + z.norm());
}

namespace {

// lim X(rho)/lambda(z) at a wall point, c^T Hess(rho) c / |c|^2.
double normal_ratio(const RootDatum& root, const GradientFn& gradient, const HessianFn& hessian,
                    const Eigen::VectorXd& z) {
  const Eigen::VectorXd& c = root.covector;
  const double c2 = c.squaredNorm();
  if (hessian) return c.dot(hessian(z) * c) / c2;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + z.norm());
  const Eigen::VectorXd u = c / std::sqrt(c2);
  const Eigen::VectorXd diff = gradient(z + h * u) - gradient(z - h * u);
  return c.dot(diff) / (2.0 * h) / std::sqrt(c2);
}

double int_power(double base, int exponent) { return exponent == 0 ? 1.0 : std::pow(base, exponent); }

}  // namespace

std::vector<TransversalFactor> transversal_factors(const RestrictedRootSystem& rrs, const GradientFn& gradient,
                                                   const Eigen::VectorXd& z, const WallRegularization& reg,
                                                   const HessianFn& hessian) {
  reg.validate();
  if (z.size() != rrs.rank()) throw DomainError("transversal_factors: point dimension differs from rank");
  const Eigen::VectorXd grad = gradient(z);
  if (grad.size() != rrs.rank()) throw DomainError("transversal_factors: gradient dimension differs from rank");

  std::vector<TransversalFactor> out;
  for (int j = 0; j < rrs.line_count(); ++j) {
    const RootDatum& root = rrs.root(j);
    const double t = root(z);
    const double x = root.covector.dot(grad);
    const bool wall = on_wall(root, z, reg);

    double ratio = 0.0;  // X / lambda, used at walls
    if (wall) {
      const double scale = 1.0 + root.covector.norm() * grad.norm();
      if (std::abs(x) > std::sqrt(reg.taylor_threshold) * scale)
        throw WallSingularityError("transversal product: root " + std::to_string(j) +
                                   " has a non-removable wall singularity at this point");
      const double tiny = 1e-8 * (1.0 + z.norm()) * root.covector.norm();
      ratio = std::abs(t) > tiny ? x / t : normal_ratio(root, gradient, hessian, z);
    }

    TransversalFactor f;
    f.root = j;
    f.multiplicity = root.multiplicity;
    f.on_wall = wall;
    f.value = wall ? ratio * x_over_tanh(t, reg) : x / std::tanh(t);
    out.push_back(f);

    if (root.double_multiplicity > 0) {
      TransversalFactor d;
      d.root = j;
      d.doubled = true;
      d.multiplicity = root.double_multiplicity;
      d.on_wall = wall;
      d.value = wall ? ratio * x_over_tanh(2.0 * t, reg) : 2.0 * x / std::tanh(2.0 * t);
      out.push_back(d);
    }
  }
  return out;
}

double transversal_product(const RestrictedRootSystem& rrs, const GradientFn& gradient, const Eigen::VectorXd& z,
                           const WallRegularization& reg, const HessianFn& hessian) {
  double product = 1.0;
  for (const auto& f : transversal_factors(rrs, gradient, z, reg, hessian)) product *= int_power(f.value, f.multiplicity);
  return product;
}

double transversal_product_rank_one_rho1(int n, int d, double curvature, double s, const WallRegularization& reg) {
  reg.validate();
  if (n < 1 || d < 0 || d > n) throw DomainError("transversal_product_rank_one_rho1: need 0 <= d <= n, n >= 1");
  if (!(curvature > 0.0)) throw DomainError("transversal_product_rank_one_rho1: curvature must be positive");
  const double x = std::sqrt(curvature) * s;
  return std::ldexp(int_power(x_over_tanh(x, reg), n - d) * int_power(x_over_tanh(2.0 * x, reg), d), n);
}

double transversal_product_rho1(const RestrictedRootSystem& rrs, const Eigen::Vector2d& x,
                                const WallRegularization& reg) {
  reg.validate();
  if (rrs.rank() != 2) throw DomainError("transversal_product_rho1: rank-two system required");
  double product = 1.0;
  for (const auto& root : rrs.roots()) {
    const double t = root(x);
    product *= int_power(2.0 * x_over_tanh(t, reg), root.multiplicity);
    product *= int_power(2.0 * x_over_tanh(2.0 * t, reg), root.double_multiplicity);
  }
  return product;
}

namespace {

double rho2_numerator(RootType type, const Eigen::Vector2d& c, const Eigen::Vector2d& v) {
  const double x1 = v.x(), x2 = v.y();
  switch (type) {
    case RootType::a2: return 3.0 * c.x() * (x1 * x1 - x2 * x2) - 6.0 * c.y() * x1 * x2;
    case RootType::b2:
    case RootType::bc2:
    case RootType::d2: return 2.0 * x1 * x2 * (c.x() * x2 + c.y() * x1);
    case RootType::g2: {
      const double a = x1 * x1, b = x2 * x2;
      return 6.0 * c.x() * x1 * (3.0 * a * a - 6.0 * a * b + 7.0 * b * b) -
             6.0 * c.y() * x2 * (3.0 * a * a - 14.0 * a * b - b * b);
    }
    case RootType::rank1: break;
  }
  throw DomainError("transversal_product_rho2: rank-two system required");
}

}  // namespace

double transversal_product_rho2(const RestrictedRootSystem& rrs, const Eigen::Vector2d& x,
                                const WallRegularization& reg) {
  reg.validate();
  if (rrs.rank() != 2) throw DomainError("transversal_product_rho2: rank-two system required");
  const Eigen::VectorXd z = x;
  double product = 1.0;
  for (int j = 0; j < rrs.line_count(); ++j) {
    const RootDatum& root = rrs.root(j);
    if (on_wall(root, z, reg))
      throw DomainError("transversal_product_rho2: point lies on the wall of root line " + std::to_string(j));
    const Eigen::Vector2d c = root.covector;
    const double t = root(z);
    const double num = rho2_numerator(rrs.type(), c, x);
    product *= int_power(num / std::tanh(t), root.multiplicity);
    product *= int_power(2.0 * num / std::tanh(2.0 * t), root.double_multiplicity);
  }
  return product;
}

double transversal_product_rho1_wall_limit(const RestrictedRootSystem& rrs, std::span<const int> wall_roots,
                                           const Eigen::Vector2d& a, const WallRegularization& reg) {
  reg.validate();
  if (rrs.rank() != 2) throw DomainError("wall limit: rank-two system required");
  const Eigen::VectorXd z = a;
  std::vector<bool> in_set(static_cast<std::size_t>(rrs.line_count()), false);
  for (int j : wall_roots) {
    if (j < 0 || j >= rrs.line_count()) throw DomainError("wall limit: root index out of range");
    in_set[static_cast<std::size_t>(j)] = true;
  }
  const double tol = 1e-12 * (1.0 + a.norm());
  double product = 1.0;
  for (int j = 0; j < rrs.line_count(); ++j) {
    const RootDatum& root = rrs.root(j);
    const double t = root(z);
    if (in_set[static_cast<std::size_t>(j)]) {
      if (std::abs(t) > tol * root.covector.norm())
        throw DomainError("wall limit: point is not on the wall of root line " + std::to_string(j));
      product *= std::ldexp(1.0, root.multiplicity + root.double_multiplicity);
    } else {
      if (std::abs(t) <= tol * root.covector.norm())
        throw DomainError("wall limit: point lies on the wall of root line " + std::to_string(j) +
                          ", which is not in the set");
      product *= int_power(2.0 * t / std::tanh(t), root.multiplicity);
      product *= int_power(4.0 * t / std::tanh(2.0 * t), root.double_multiplicity);
    }
  }
  return product;
}

double transversal_product_generator(const RestrictedRootSystem& rrs, int which, const Eigen::Vector2d& x,
                                     const WallRegularization& reg) {
  if (rrs.rank() != 2) throw DomainError("transversal_product_generator: rank-two system required");
  const RootType type = rrs.type();
  GradientFn grad = [type, which](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return grad_rho(type, which, Eigen::Vector2d(v));
  };
  HessianFn hess = [type, which](const Eigen::VectorXd& v) -> Eigen::MatrixXd {
    return hess_rho(type, which, Eigen::Vector2d(v));
  };
  return transversal_product(rrs, grad, Eigen::VectorXd(x), reg, hess);
}

}  // namespace cyweyl
