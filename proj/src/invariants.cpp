#include "cyweyl/invariants.hpp"

#include "cyweyl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace cyweyl {

namespace {

enum class Family { a2, b2, g2 };

Family family(RootType type) {
  switch (type) {
    case RootType::a2: return Family::a2;
    case RootType::b2:
    case RootType::bc2:
    case RootType::d2: return Family::b2;
    case RootType::g2: return Family::g2;
    case RootType::rank1: break;
  }
  throw DomainError("invariants are defined for rank-two types only");
}

void check_which(int which) {
  if (which != 1 && which != 2) throw DomainError("generator index must be 1 or 2");
}

// The lower bracket end is a critical point of the polynomial; near the wall the
// root merges into it and rounding may put p(lo) on the wrong side.
template <class Eval>
double bracketed_root(Eval&& eval, double lo, double hi, double seed, const RootFindingSettings& settings) {
  if (eval(lo).first >= 0.0) return lo;
  return safeguarded_newton(eval, lo, hi, seed, settings);
}

}  // namespace

double rho1(const Eigen::Vector2d& v) { return v.squaredNorm(); }

double rho2(RootType type, const Eigen::Vector2d& v) {
  const double x = v.x(), y = v.y();
  switch (family(type)) {
    case Family::a2: return x * (x * x - 3.0 * y * y);
    case Family::b2: return x * x * y * y;
    case Family::g2: {
      const double x2 = x * x, y2 = y * y;
      return 3.0 * x2 * x2 * x2 - 9.0 * x2 * x2 * y2 + 21.0 * x2 * y2 * y2 + y2 * y2 * y2;
    }
  }
  return 0.0;
}

double rho(RootType type, int which, const Eigen::Vector2d& v) {
  check_which(which);
  family(type);
  return which == 1 ? rho1(v) : rho2(type, v);
}

Eigen::Vector2d grad_rho(RootType type, int which, const Eigen::Vector2d& v) {
  check_which(which);
  const Family fam = family(type);
  const double x = v.x(), y = v.y();
  if (which == 1) return 2.0 * v;
  switch (fam) {
    case Family::a2: return {3.0 * (x * x - y * y), -6.0 * x * y};
    case Family::b2: return {2.0 * x * y * y, 2.0 * x * x * y};
    case Family::g2: {
      const double x2 = x * x, y2 = y * y;
      return {6.0 * x * (3.0 * x2 * x2 - 6.0 * x2 * y2 + 7.0 * y2 * y2),
              -6.0 * y * (3.0 * x2 * x2 - 14.0 * x2 * y2 - y2 * y2)};
    }
  }
  return Eigen::Vector2d::Zero();
}

Eigen::Matrix2d hess_rho(RootType type, int which, const Eigen::Vector2d& v) {
  check_which(which);
  const Family fam = family(type);
  const double x = v.x(), y = v.y();
  Eigen::Matrix2d h;
  if (which == 1) return 2.0 * Eigen::Matrix2d::Identity();
  switch (fam) {
    case Family::a2:
      h << 6.0 * x, -6.0 * y, -6.0 * y, -6.0 * x;
      break;
    case Family::b2:
      h << 2.0 * y * y, 4.0 * x * y, 4.0 * x * y, 2.0 * x * x;
      break;
    case Family::g2: {
      const double x2 = x * x, y2 = y * y;
      const double hxx = 6.0 * (15.0 * x2 * x2 - 18.0 * x2 * y2 + 7.0 * y2 * y2);
      const double hyy = -6.0 * (3.0 * x2 * x2 - 42.0 * x2 * y2 - 5.0 * y2 * y2);
      const double hxy = -24.0 * x * y * (3.0 * x2 - 7.0 * y2);
      h << hxx, hxy, hxy, hyy;
      break;
    }
  }
  return h;
}

Eigen::Vector2d rho_vec(RootType type, const Eigen::Vector2d& v) { return {rho1(v), rho2(type, v)}; }

Eigen::Matrix2d jacobian_rho(RootType type, const Eigen::Vector2d& v) {
  Eigen::Matrix2d j;
  j.row(0) = grad_rho(type, 1, v).transpose();
  j.row(1) = grad_rho(type, 2, v).transpose();
  return j;
}

double phi_seed(RootType type, const Eigen::Vector2d& v) {
  const double x = v.x(), y = v.y();
  switch (family(type)) {
    case Family::a2: return x * y * y;
    case Family::b2: return x * x * y * y;
    case Family::g2: return x * x * y * y * y * y;
  }
  return 0.0;
}

double symmetrize_phi(RootType type, const Eigen::Vector2d& v) {
  double sum = 0.0;
  for (const auto& m : weyl_group(type)) sum += phi_seed(type, m * v);
  return sum;
}

double symmetrized_closed_form(RootType type, const Eigen::Vector2d& v) {
  const double r2 = rho2(type, v);
  switch (type) {
    case RootType::a2: return -1.5 * r2;
    case RootType::d2: return 4.0 * r2;
    case RootType::b2:
    case RootType::bc2: return 8.0 * r2;
    case RootType::g2: return 0.375 * r2;
    case RootType::rank1: break;
  }
  throw DomainError("invariants are defined for rank-two types only");
}

double rho2_polar(RootType type, double r, double theta) {
  switch (family(type)) {
    case Family::a2: return r * r * r * std::cos(3.0 * theta);
    case Family::b2: {
      const double s = std::sin(2.0 * theta);
      return r * r * r * r * s * s / 4.0;
    }
    case Family::g2: return std::pow(r, 6) * (std::cos(6.0 * theta) + 2.0);
  }
  return 0.0;
}

bool image_region_contains(RootType type, const Eigen::Vector2d& y) {
  const double y1 = y.x(), y2 = y.y();
  if (!(y1 >= 0.0)) return false;
  switch (family(type)) {
    case Family::a2: {
      const double bound = y1 * std::sqrt(y1);
      return -bound <= y2 && y2 <= bound;
    }
    case Family::b2: return 0.0 <= y2 && y2 <= y1 * y1 / 4.0;
    case Family::g2: {
      const double c = y1 * y1 * y1;
      return c <= y2 && y2 <= 3.0 * c;
    }
  }
  return false;
}

bool image_region_interior(RootType type, const Eigen::Vector2d& y) {
  const double y1 = y.x(), y2 = y.y();
  if (!(y1 > 0.0)) return false;
  switch (family(type)) {
    case Family::a2: {
      const double bound = y1 * std::sqrt(y1);
      return -bound < y2 && y2 < bound;
    }
    case Family::b2: return 0.0 < y2 && y2 < y1 * y1 / 4.0;
    case Family::g2: {
      const double c = y1 * y1 * y1;
      return c < y2 && y2 < 3.0 * c;
    }
  }
  return false;
}

Eigen::Vector2d rho_inverse(RootType type, const Eigen::Vector2d& y, const RootFindingSettings& settings) {
  const Family fam = family(type);
  const double y1 = y.x(), y2 = y.y();

  if (fam == Family::b2) {
    const double disc = y1 * y1 - 4.0 * y2;
    if (disc < 0.0) throw DomainError("rho_inverse: negative discriminant y1^2 - 4 y2");
    if (!image_region_interior(type, y)) throw DomainError("rho_inverse: point outside the open image region");
    const double x1 = std::sqrt(0.5 * (y1 + std::sqrt(disc)));
    // Equal to sqrt((y1 - sqrt(disc))/2) but free of cancellation.
    const double x2 = std::sqrt(y2) / x1;
    return {x1, x2};
  }

  if (!image_region_interior(type, y)) throw DomainError("rho_inverse: point outside the open image region");
  const double r = std::sqrt(y1);
  double root = 0.0;
  if (fam == Family::a2) {
    // 4x^3 - 3 y1 x - y2 = r^3 cos(3t') at x = r cos t'; the largest root has t' in (0, pi/3).
    const double c = std::clamp(y2 / (y1 * r), -1.0, 1.0);
    const double seed = r * std::cos(std::acos(c) / 3.0);
    auto eval = [&](double x) {
      return std::pair{4.0 * x * x * x - 3.0 * y1 * x - y2, 12.0 * x * x - 3.0 * y1};
    };
    root = bracketed_root(eval, 0.5 * r, r, seed, settings);
  } else {
    // 32x^6 - 48 y1 x^4 + 18 y1^2 x^2 + y1^3 - y2 = r^6 (cos 6t' + 2) - y2 at x = r cos t'.
    const double c = std::clamp(y2 / (y1 * y1 * y1) - 2.0, -1.0, 1.0);
    const double seed = r * std::cos(std::acos(c) / 6.0);
    auto eval = [&](double x) {
      const double x2 = x * x;
      const double p = ((32.0 * x2 - 48.0 * y1) * x2 + 18.0 * y1 * y1) * x2 + y1 * y1 * y1 - y2;
      const double dp = ((192.0 * x2 - 192.0 * y1) * x2 + 36.0 * y1 * y1) * x;
      return std::pair{p, dp};
    };
    root = bracketed_root(eval, 0.5 * std::sqrt(3.0) * r, r, seed, settings);
  }
  return {root, std::sqrt(std::max(0.0, y1 - root * root))};
}

InvariantBasis::InvariantBasis(RootType type, RootFindingSettings settings) : type_(type), settings_(settings) {
  family(type);
  if (!(settings_.rel_tol > 0.0) || settings_.max_iterations <= 0)
    throw DomainError("InvariantBasis: invalid root-finding settings");
}

}  // namespace cyweyl
