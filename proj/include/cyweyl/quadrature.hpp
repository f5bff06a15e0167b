#pragma once

#include <functional>

namespace cyweyl {

struct QuadratureSettings {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Maximum bisection depth of any subinterval.
  int max_depth = 50;

  void validate() const;
};

/// Adaptive Simpson with Richardson extrapolation on [a, b].  The interval is
/// accepted once the two-level difference is below 15 * max(abs_tol, rel_tol * |I|).
/// Throws QuadratureError when some subinterval needs more than max_depth levels.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSettings& settings = {});

}  // namespace cyweyl
