#include "cyweyl/quadrature.hpp"

#include "cyweyl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cyweyl {

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_depth < 4 || max_depth > 200) throw DomainError("quadrature max_depth must lie in [4, 200]");
}

namespace {

constexpr int kMinDepth = 3;

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;

  double refine(double a, double fa, double m, double fm, double b, double fb, double whole, double tol,
                int depth) const {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
      throw QuadratureError("adaptive_simpson: tolerance not reached on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    return refine(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           refine(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSettings& settings) {
  settings.validate();
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(whole));
  const Simpson s{f, settings.max_depth};
  return s.refine(a, fa, m, fm, b, fb, whole, tol, 0);
}

}  // namespace cyweyl
