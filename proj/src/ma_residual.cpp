#include "cyweyl/ma_residual.hpp"

#include "cyweyl/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace cyweyl {

Eigen::VectorXd ScalarField::grad(const Eigen::VectorXd& x) const {
  if (gradient) return gradient(x);
  if (!value) throw DomainError("ScalarField: no value function");
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd p = x, m = x;
    p(i) += h;
    m(i) -= h;
    g(i) = (value(p) - value(m)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd ScalarField::hess(const Eigen::VectorXd& x) const {
  if (hessian) return hessian(x);
  const Eigen::Index dim = x.size();
  Eigen::MatrixXd H(dim, dim);
  if (gradient) {
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
    for (Eigen::Index j = 0; j < dim; ++j) {
      Eigen::VectorXd p = x, m = x;
      p(j) += h;
      m(j) -= h;
      H.col(j) = (gradient(p) - gradient(m)) / (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
  }
  if (!value) throw DomainError("ScalarField: no value function");
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1.0 + x.norm());
  const double f0 = value(x);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::VectorXd p = x, m = x;
    p(i) += h;
    m(i) -= h;
    H(i, i) = (value(p) - 2.0 * f0 + value(m)) / (h * h);
    for (Eigen::Index j = 0; j < i; ++j) {
      Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      H(i, j) = H(j, i) = (value(pp) - value(pm) - value(mp) + value(mm)) / (4.0 * h * h);
    }
  }
  return H;
}

ChamberFunction radial_potential(const RadialProfile& profile) {
  ChamberFunction rho;
  rho.value = [profile](const Eigen::VectorXd& z) { return profile.f_value(z(0) * z(0)); };
  rho.gradient = [profile](const Eigen::VectorXd& z) {
    return Eigen::VectorXd::Constant(1, 2.0 * z(0) * profile.f_prime(z(0) * z(0)));
  };
  rho.hessian = [profile](const Eigen::VectorXd& z) {
    return Eigen::MatrixXd::Constant(1, 1, profile.radial_second_derivative(z(0)));
  };
  return rho;
}

ChamberFunction generator_potential(RootType type, int which) {
  ChamberFunction rho;
  rho.value = [type, which](const Eigen::VectorXd& z) { return cyweyl::rho(type, which, Eigen::Vector2d(z)); };
  rho.gradient = [type, which](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    return grad_rho(type, which, Eigen::Vector2d(z));
  };
  rho.hessian = [type, which](const Eigen::VectorXd& z) -> Eigen::MatrixXd {
    return hess_rho(type, which, Eigen::Vector2d(z));
  };
  return rho;
}

ChamberResidual chamber_residual(const RestrictedRootSystem& rrs, int n, const ChamberFunction& rho,
                                 const Eigen::VectorXd& z, const WallRegularization& reg) {
  if (z.size() != rrs.rank()) throw DomainError("chamber_residual: point dimension differs from rank");
  GradientFn grad = [&rho](const Eigen::VectorXd& v) { return rho.grad(v); };
  HessianFn hess = [&rho](const Eigen::VectorXd& v) { return rho.hess(v); };
  const Eigen::MatrixXd H = rho.hess(z);
  ChamberResidual out;
  out.transversal = transversal_product(rrs, grad, z, reg, hess);
  out.hessian_determinant = H.determinant();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H, Eigen::EigenvaluesOnly);
  out.non_convex = eig.eigenvalues().minCoeff() <= 0.0;
  out.residual = out.transversal * out.hessian_determinant - std::ldexp(1.0, n);
  return out;
}

int ComplexHessianBlocks::size() const {
  int total = static_cast<int>(radial.rows());
  for (const auto& block : transversal) total += block.second;
  return total;
}

double ComplexHessianBlocks::determinant() const {
  double det = radial.determinant();
  for (const auto& [value, mult] : transversal) det *= std::pow(value, mult);
  return det;
}

Eigen::MatrixXd ComplexHessianBlocks::assemble(std::uint64_t rotation_seed) const {
  const int r = static_cast<int>(radial.rows());
  const int total = size();
  const int m = total - r;
  Eigen::VectorXd diag(m);
  int k = 0;
  for (const auto& [value, mult] : transversal)
    for (int i = 0; i < mult; ++i) diag(k++) = value;

  std::mt19937_64 rng(rotation_seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd gauss(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gauss(i, j) = normal(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(total, total);
  out.topLeftCorner(r, r) = radial;
  if (m > 0) out.bottomRightCorner(m, m) = q * diag.asDiagonal() * q.transpose();
  return out;
}

ComplexHessianBlocks complex_hessian_blocks(const RestrictedRootSystem& rrs, const ChamberFunction& rho,
                                            const Eigen::VectorXd& z, const WallRegularization& reg) {
  GradientFn grad = [&rho](const Eigen::VectorXd& v) { return rho.grad(v); };
  HessianFn hess = [&rho](const Eigen::VectorXd& v) { return rho.hess(v); };
  ComplexHessianBlocks blocks;
  blocks.radial = 0.25 * rho.hess(z);
  for (const auto& f : transversal_factors(rrs, grad, z, reg, hess))
    blocks.transversal.emplace_back(0.25 * f.value, f.multiplicity);
  return blocks;
}

namespace {

struct ImageDerivatives {
  Eigen::Vector2d gradient;
  Eigen::Matrix2d hessian;
};

ImageDerivatives image_derivatives(const ImageFunction& f, const Eigen::Vector2d& y) {
  const Eigen::VectorXd yy = y;
  if (!f.contains(yy)) throw DomainError("invariant residual: rho(x) lies outside the domain of f");
  const Eigen::VectorXd g = f.grad(yy);
  const Eigen::MatrixXd h = f.hess(yy);
  if (g.size() != 2 || h.rows() != 2 || h.cols() != 2)
    throw DomainError("invariant residual: f must be a function of two variables");
  return {g, h};
}

double transversal_sum(const RestrictedRootSystem& rrs, const Eigen::Vector2d& fy, const Eigen::Vector2d& x,
                       const WallRegularization& reg) {
  return fy(0) * transversal_product_generator(rrs, 1, x, reg) +
         fy(1) * transversal_product_generator(rrs, 2, x, reg);
}

void check_pair(const RestrictedRootSystem& rrs, const InvariantBasis& basis) {
  if (rrs.rank() != 2) throw DomainError("invariant residual: rank-two system required");
  if (rrs.type() != basis.type()) throw DomainError("invariant residual: basis type differs from root system");
}

}  // namespace

InvariantResidual invariant_residual(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                     const InvariantBasis& basis, const Eigen::Vector2d& x,
                                     const WallRegularization& reg) {
  check_pair(rrs, basis);
  const Eigen::Vector2d y = basis.forward(x);
  const auto [fy, fyy] = image_derivatives(f, y);
  const Eigen::Vector2d grads[2] = {basis.gradient(1, x), basis.gradient(2, x)};
  const Eigen::Matrix2d hessians[2] = {basis.hessian(1, x), basis.hessian(2, x)};

  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        for (int kh = 0; kh < 2; ++kh) m(i, j) += fyy(kh, k) * grads[kh](i) * grads[k](j);
        m(i, j) += fy(k) * hessians[k](i, j);
      }

  InvariantResidual out;
  out.chamber_point = x;
  out.det_factor = m.determinant();
  out.transversal_factor = transversal_sum(rrs, fy, x, reg);
  out.residual = out.det_factor * out.transversal_factor - std::ldexp(1.0, n);
  return out;
}

InvariantResidual image_residual(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                 const InvariantBasis& basis, const Eigen::Vector2d& y,
                                 const WallRegularization& reg) {
  check_pair(rrs, basis);
  if (!basis.image_interior(y)) throw DomainError("image_residual: y is not inside the open image region");
  const Eigen::Vector2d x = basis.inverse(y);
  const auto [fy, fyy] = image_derivatives(f, y);
  const Eigen::Matrix2d J = basis.jacobian(x);
  const Eigen::Matrix2d m = J.transpose() * fyy * J + fy(0) * basis.hessian(1, x) + fy(1) * basis.hessian(2, x);

  InvariantResidual out;
  out.chamber_point = x;
  out.det_factor = m.determinant();
  out.transversal_factor = transversal_sum(rrs, fy, x, reg);
  out.residual = out.det_factor * out.transversal_factor - std::ldexp(1.0, n);
  return out;
}

InvariantResidual invariant_residual_rank_one(const ImageFunction& f, const RestrictedRootSystem& rrs, int n,
                                              double s, const WallRegularization& reg) {
  if (rrs.rank() != 1) throw DomainError("invariant_residual_rank_one: rank-one system required");
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, s * s);
  if (!f.contains(y)) throw DomainError("invariant residual: s^2 lies outside the domain of f");
  const double fp = f.grad(y)(0);
  const double fpp = f.hess(y)(0, 0);
  GradientFn grad_rho1 = [](const Eigen::VectorXd& z) -> Eigen::VectorXd { return 2.0 * z; };
  HessianFn hess_rho1 = [](const Eigen::VectorXd&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Constant(1, 1, 2.0); };
  const double D = transversal_product(rrs, grad_rho1, Eigen::VectorXd::Constant(1, s), reg, hess_rho1);

  InvariantResidual out;
  out.chamber_point = Eigen::Vector2d(s, 0.0);
  out.det_factor = 4.0 * s * s * fpp + 2.0 * fp;
  out.transversal_factor = fp * D;
  out.residual = out.det_factor * out.transversal_factor - std::ldexp(1.0, n);
  return out;
}

}  // namespace cyweyl
