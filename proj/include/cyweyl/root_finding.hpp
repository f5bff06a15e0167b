#pragma once

#include "cyweyl/errors.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

namespace cyweyl {

struct RootFindingSettings {
  double rel_tol = 1e-13;
  int max_iterations = 100;
};

/// Safeguarded Newton on a bracket [lo, hi] with p(lo) and p(hi) of opposite
/// sign (or zero).  `eval(x)` returns the pair (p(x), p'(x)).  Newton steps
/// that leave the bracket or fail to halve it fast enough fall back to bisection.
template <class Eval>
double safeguarded_newton(Eval&& eval, double lo, double hi, double seed,
                          const RootFindingSettings& settings = {}) {
  auto [plo, dlo] = eval(lo);
  auto [phi, dhi] = eval(hi);
  (void)dlo;
  (void)dhi;
  if (plo == 0.0) return lo;
  if (phi == 0.0) return hi;
  if ((plo > 0.0) == (phi > 0.0)) throw DomainError("safeguarded_newton: root not bracketed");
  // Orient so that p(xl) < 0 < p(xh).
  double xl = lo, xh = hi;
  if (plo > 0.0) std::swap(xl, xh);

  double x = (seed > std::min(lo, hi) && seed < std::max(lo, hi)) ? seed : 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  auto [p, dp] = eval(x);
  for (int it = 0; it < settings.max_iterations; ++it) {
    const bool newton_leaves = ((x - xh) * dp - p) * ((x - xl) * dp - p) > 0.0;
    const bool too_slow = std::abs(2.0 * p) > std::abs(dx_old * dp);
    if (newton_leaves || too_slow) {
      dx_old = dx;
      dx = 0.5 * (xh - xl);
      x = xl + dx;
      if (xl == x) return x;
    } else {
      dx_old = dx;
      dx = p / dp;
      const double prev = x;
      x -= dx;
      if (prev == x) return x;
    }
    if (std::abs(dx) <= settings.rel_tol * std::abs(x)) {
      // One more Newton step costs nothing and squares the error.
      auto [pf, dpf] = eval(x);
      if (dpf != 0.0) {
        const double polished = x - pf / dpf;
        if (polished >= std::min(xl, xh) && polished <= std::max(xl, xh)) return polished;
      }
      return x;
    }
    std::tie(p, dp) = eval(x);
    if (p < 0.0) xl = x; else xh = x;
    if (p == 0.0) return x;
  }
  throw DomainError("safeguarded_newton: no convergence after " + std::to_string(settings.max_iterations) +
                    " iterations");
}

}  // namespace cyweyl
