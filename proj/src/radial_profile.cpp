#include "cyweyl/radial_profile.hpp"

#include "cyweyl/errors.hpp"
#include "cyweyl/transversal_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <mutex>

namespace cyweyl {

std::string to_string(Reading reading) { return reading == Reading::inner ? "inner" : "outer"; }

Reading parse_reading(std::string_view text) {
  if (text == "inner") return Reading::inner;
  if (text == "outer") return Reading::outer;
  throw DomainError("unknown reading '" + std::string(text) + "' (expected inner or outer)");
}

void ProfileParams::validate() const {
  if (n < 1) throw DomainError("profile: n must be positive");
  if (d != 0 && d != 1 && d != 3 && d != 7) throw DomainError("profile: d must be one of 0, 1, 3, 7");
  if (d >= n) throw DomainError("profile: d must be smaller than n");
  if (!(curvature > 0.0)) throw DomainError("profile: curvature must be positive");
  if (!(C1 >= 0.0)) throw DomainError("profile: C1 must be nonnegative");
  quadrature.validate();
}

namespace {

// Knots u_k = 2^k, k >= kFirstKnot; below the first knot G is integrated directly.
constexpr int kFirstKnot = -40;

}  // namespace

struct RadialProfile::Cache {
  std::mutex mutex;
  std::vector<double> knot_values;  // G(2^(kFirstKnot + i))
};

RadialProfile::RadialProfile(ProfileParams params) : params_(params), cache_(std::make_shared<Cache>()) {
  params_.validate();
}

double RadialProfile::integrand_g(double u) const {
  if (u < 0.0) throw DomainError("integrand_g: u must be nonnegative");
  // g = (1/2) / (q(x)^(n-d) q(2x)^d) with q(x) = x / tanh(x), x = sqrt(c u).
  const double x = std::sqrt(params_.curvature * u);
  const double q1 = x_over_tanh(x), q2 = x_over_tanh(2.0 * x);
  return 0.5 / (std::pow(q1, params_.n - params_.d) * std::pow(q2, params_.d));
}

double RadialProfile::G(double u) const {
  if (u < 0.0) throw DomainError("G: u must be nonnegative");
  if (u == 0.0) return 0.0;
  auto g = [this](double v) { return integrand_g(v); };
  auto piece = [&](double a, double b) {
    QuadratureSettings q = params_.quadrature;
    q.abs_tol *= std::min(1.0, b - a);
    return adaptive_simpson(g, a, b, q);
  };

  const double first = std::ldexp(1.0, kFirstKnot);
  if (u < first) return piece(0.0, u);

  int exponent = 0;
  std::frexp(u, &exponent);
  const int k = exponent - 1;  // 2^k <= u < 2^(k+1)
  const std::size_t index = static_cast<std::size_t>(k - kFirstKnot);

  double base = 0.0;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& values = cache_->knot_values;
    if (values.empty()) values.push_back(piece(0.0, first));
    while (values.size() <= index) {
      const int j = kFirstKnot + static_cast<int>(values.size());
      const double a = std::ldexp(1.0, j - 1), b = std::ldexp(1.0, j);
      values.push_back(values.back() + piece(a, b));
    }
    base = values[index];
  }
  const double knot = std::ldexp(1.0, k);
  return knot == u ? base : base + piece(knot, u);
}

double RadialProfile::F(double u) const {
  if (u < 0.0) throw DomainError("F: u must be nonnegative");
  if (u == 0.0) return 0.5;
  return G(u) / u;
}

namespace {

// F'(u) = (g(u) - F(u)) / u, written as -(1/u^2) int_0^u (g(v) - g(u)) dv to avoid
// cancellation for small u.
double F_derivative(const RadialProfile& p, double u) {
  const ProfileParams& params = p.params();
  if (u == 0.0) return -params.curvature * (params.n + 3.0 * params.d) / 12.0;
  if (u > 1.0) return (p.integrand_g(u) - p.F(u)) / u;
  const double gu = p.integrand_g(u);
  QuadratureSettings q = params.quadrature;
  q.abs_tol *= u * u;
  const double integral = adaptive_simpson([&](double v) { return p.integrand_g(v) - gu; }, 0.0, u, q);
  return -integral / (u * u);
}

}  // namespace

double RadialProfile::f_prime(double u) const {
  if (u < 0.0) throw DomainError("f_prime: u must be nonnegative");
  if (params_.reading == Reading::outer) return std::sqrt(F(u) + params_.C1);
  if (u == 0.0) throw DomainError("f_prime: the inner reading is singular at u = 0");
  return std::sqrt((G(u) + params_.C1) / u);
}

double RadialProfile::f_second(double u) const {
  if (u < 0.0) throw DomainError("f_second: u must be nonnegative");
  if (params_.reading == Reading::outer) return F_derivative(*this, u) / (2.0 * std::sqrt(F(u) + params_.C1));
  if (u == 0.0) throw DomainError("f_second: the inner reading is singular at u = 0");
  const double h = G(u) + params_.C1;
  const double fp = std::sqrt(h / u);
  return (integrand_g(u) * u - h) / (2.0 * u * u * fp);
}

double RadialProfile::f_value(double u) const {
  if (u < 0.0) throw DomainError("f_value: u must be nonnegative");
  if (u == 0.0) return params_.C2;
  // Substituting v = w^2 removes the u^(-1/2) singularity of the inner reading.
  std::function<double(double)> integrand;
  if (params_.reading == Reading::outer)
    integrand = [this](double w) { return 2.0 * w * std::sqrt(F(w * w) + params_.C1); };
  else
    integrand = [this](double w) { return 2.0 * std::sqrt(G(w * w) + params_.C1); };
  return params_.C2 + adaptive_simpson(integrand, 0.0, std::sqrt(u), params_.quadrature);
}

namespace {

#ifdef __SIZEOF_FLOAT128__
using wide = __float128;
#else
using wide = long double;
#endif

wide wide_sqrt(wide a) {
  wide y = std::sqrt(static_cast<double>(a));
  for (int i = 0; i < 3; ++i) y = 0.5 * (y + a / y);
  return y;
}

}  // namespace

double RadialProfile::ode_residual(double s) const {
  // Both terms of 2u f'' + f' grow like (G + C1) / sqrt(u) while their sum is
  // tiny for large s, so f' and f'' are formed from the same double inputs
  // and combined in wider arithmetic.
  const double u = s * s;
  if (u == 0.0 && params_.reading == Reading::inner) throw DomainError("ode_residual: the inner reading is singular at s = 0");
  const wide D = transversal_product_rank_one_rho1(params_.n, params_.d, params_.curvature, s);
  const wide wu = u;
  wide fp, lhs;
  if (params_.reading == Reading::inner) {
    const wide h = static_cast<wide>(G(u)) + params_.C1;
    const wide g = integrand_g(u);
    fp = wide_sqrt(h / wu);
    const wide fpp = (g * wu - h) / (2 * wu * wu * fp);
    lhs = (2 * wu * fpp + fp) * fp * D;
  } else {
    fp = wide_sqrt(static_cast<wide>(F(u)) + params_.C1);
    const wide fpp = static_cast<wide>(F_derivative(*this, u)) / (2 * fp);
    lhs = (2 * wu * fpp + fp) * fp * D;
  }
  return static_cast<double>(lhs - static_cast<wide>(std::ldexp(1.0, params_.n - 1)));
}

double RadialProfile::radial_second_derivative(double s) const {
  const double u = s * s;
  if (params_.reading == Reading::inner) {
    // 4u f'' + 2f' simplifies to 2g/f' for this reading.
    if (u == 0.0) return 0.0;
    return 2.0 * integrand_g(u) / f_prime(u);
  }
  return 4.0 * u * f_second(u) + 2.0 * f_prime(u);
}

CompletenessReport RadialProfile::completeness(double T_max, int count) const {
  if (!(T_max > 0.0)) throw DomainError("completeness: T_max must be positive");
  if (count < 2) throw DomainError("completeness: need at least two samples");
  // L(T) = int_0^sqrt(T) 2w k(w^2) dw with k(s) = (1/2) sqrt((f o rho1)''(s)).
  auto integrand = [this](double w) {
    return 2.0 * w * 0.5 * std::sqrt(std::max(0.0, radial_second_derivative(w * w)));
  };
  CompletenessReport report;
  double previous_w = 0.0, length = 0.0;
  for (int j = 0; j < count; ++j) {
    const double T = T_max * std::pow(10.0, -2.0 + 2.0 * j / (count - 1));
    const double w = std::sqrt(T);
    length += adaptive_simpson(integrand, previous_w, w, params_.quadrature);
    previous_w = w;
    report.samples.push_back({T, length});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& smp : report.samples) {
    if (smp.T < T_max / 10.0 * (1.0 - 1e-12) || smp.length <= 0.0) continue;
    const double x = std::log(smp.T), y = std::log(smp.length);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return report;
}

EvennessReport RadialProfile::evenness(double delta, int nodes) const {
  if (!(delta > 0.0)) throw DomainError("evenness: delta must be positive");
  // A degree-4 fit would alias the s^6 term into c_3 at O(delta^3); fitting
  // through degree 8 and reporting the low coefficients keeps that below 1e-7.
  constexpr int degree = 8, reported = 4;
  if (nodes < 2 * degree) throw DomainError("evenness: need at least 16 nodes");
  Eigen::MatrixXd V(nodes, degree + 1);
  Eigen::VectorXd rhs(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = static_cast<double>(i) / (nodes - 1);
    const double s = delta * t;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= t) V(i, k) = p;
    rhs(i) = f_value(s * s);
  }
  const Eigen::VectorXd scaled = V.colPivHouseholderQr().solve(rhs);
  EvennessReport report;
  report.delta = delta;
  for (int k = 0; k <= reported; ++k) report.coefficients.push_back(scaled(k) / std::pow(delta, k));
  report.odd_magnitude = std::max(std::abs(report.coefficients[1]), std::abs(report.coefficients[3]));
  return report;
}

ProfileParams profile_params_for(const SymmetricSpaceDescriptor& desc, double C1, double C2, Reading reading) {
  if (desc.type != RootType::rank1) throw DomainError("radial profile: rank-one descriptor required");
  ProfileParams p;
  p.n = desc.n;
  p.d = desc.d;
  p.curvature = desc.curvature;
  p.C1 = C1;
  p.C2 = C2;
  p.reading = reading;
  return p;
}

}  // namespace cyweyl
