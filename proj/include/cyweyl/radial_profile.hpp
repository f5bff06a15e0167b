#pragma once

#include "cyweyl/quadrature.hpp"
#include "cyweyl/root_data.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cyweyl {

/// Where the constant C1 enters the closed-form derivative:
///   outer:  f'(u) = sqrt(F(u) + C1)
///   inner:  f'(u) = sqrt((G(u) + C1) / u)
/// with G(u) = int_0^u g and F(u) = G(u) / u.
enum class Reading { inner, outer };

std::string to_string(Reading reading);
Reading parse_reading(std::string_view text);

struct ProfileParams {
  int n = 3;
  int d = 0;
  double curvature = 1.0;
  double C1 = 1.0;
  double C2 = 1.0;
  Reading reading = Reading::inner;
  QuadratureSettings quadrature{};

  void validate() const;
};

struct CompletenessSample {
  double T = 0.0;
  double length = 0.0;
};

struct CompletenessReport {
  std::vector<CompletenessSample> samples;
  /// Least-squares slope of log L against log T over [T_max / 10, T_max].
  double slope = 0.0;
};

struct EvennessReport {
  /// Coefficients c_0..c_4 of the least-squares fit of f(s^2) by sum_{k<=8} c_k s^k on [0, delta].
  std::vector<double> coefficients;
  /// max(|c_1|, |c_3|).
  double odd_magnitude = 0.0;
  double delta = 0.0;
};

/// Closed-form rank-one potential profile f, with f(s^2) the radial potential.
/// Copies share the prefix-integral cache; all methods are safe to call concurrently.
class RadialProfile {
 public:
  explicit RadialProfile(ProfileParams params);

  const ProfileParams& params() const { return params_; }

  /// g(u) = tanh^(n-d)(sqrt(cu)) tanh^d(2 sqrt(cu)) / (2^(d+1) c^(n/2) u^(n/2)); g(0) = 1/2.
  double integrand_g(double u) const;
  /// int_0^u g, from cached knots plus one adaptive piece.
  double G(double u) const;
  /// (1/u) int_0^u g; F(0) = 1/2.
  double F(double u) const;

  /// f and its derivatives as functions of u = s^2.
  double f_value(double u) const;
  double f_prime(double u) const;
  double f_second(double u) const;

  /// (2 s^2 f''(s^2) + f'(s^2)) f'(s^2) D(s) - 2^(n-1), D the rank-one rho1 product.
  double ode_residual(double s) const;

  /// (f o rho1)''(s) = 4 s^2 f''(s^2) + 2 f'(s^2).
  double radial_second_derivative(double s) const;

  /// Partial lengths L(T) = int_0^T (1/2) sqrt((f o rho1)''(s)) ds at `count`
  /// log-spaced T in [T_max / 100, T_max].
  CompletenessReport completeness(double T_max, int count = 41) const;

  EvennessReport evenness(double delta = 0.1, int nodes = 41) const;

 private:
  struct Cache;
  ProfileParams params_;
  std::shared_ptr<Cache> cache_;
};

/// Parameters for a rank-one descriptor (uses its n, d and curvature).
ProfileParams profile_params_for(const SymmetricSpaceDescriptor& desc, double C1, double C2, Reading reading);

}  // namespace cyweyl
