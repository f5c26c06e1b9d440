#pragma once

#include <cmath>
#include <cstddef>

#include "boxlike/error.hpp"

namespace boxlike::detail {

struct RootBracket {
  double value = 0.0;
  double f_value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t iterations = 0;
};

/// Root of a continuous decreasing f inside [lo, hi] with f(lo) >= 0 >= f(hi).
/// Bisection down to `width`, then up to `polish_steps` secant steps that
/// stay inside the bracket. The returned bracket keeps f(lo) > 0 > f(hi)
/// unless an exact zero was hit, in which case lo == hi == value.
template <class F>
RootBracket solve_decreasing(F&& f, double lo, double f_lo, double hi, double f_hi,
                             double width = 1e-13, int polish_steps = 5) {
  if (!(f_lo >= 0.0 && f_hi <= 0.0)) throw Error(Errc::no_root_in_range, "endpoints do not bracket a root");
  RootBracket r;
  if (f_lo == 0.0) return {lo, 0.0, lo, lo, 0};
  if (f_hi == 0.0) return {hi, 0.0, hi, hi, 0};

  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    ++r.iterations;
    if (!std::isfinite(fm)) throw Error(Errc::numeric_failure, "non-finite function value during bisection");
    if (fm == 0.0) return {mid, 0.0, mid, mid, r.iterations};
    if (fm > 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }

  for (int step = 0; step < polish_steps; ++step) {
    if (f_lo == f_hi) break;
    const double x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) break;
    const double fx = f(x);
    ++r.iterations;
    if (fx == 0.0) return {x, 0.0, x, x, r.iterations};
    if (fx > 0.0) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
  }

  r.lo = lo;
  r.hi = hi;
  if (std::abs(f_lo) <= std::abs(f_hi)) {
    r.value = lo;
    r.f_value = f_lo;
  } else {
    r.value = hi;
    r.f_value = f_hi;
  }
  return r;
}

}  // namespace boxlike::detail
