#pragma once

// Bracketed scalar root finding shared by the curve and constant solvers.

#include <utility>

#include "binzeros/bigfloat.hpp"

namespace binzeros::detail {

/// Root of a monotone f on (lo, hi) where f(lo) and f(hi) have opposite signs.
/// `eval` returns {f(x), f'(x)}. Newton steps are taken while they stay inside
/// the bracket, bisection otherwise. Endpoints are never evaluated.
template <typename Eval>
BigFloat solve_bracketed(Eval eval, BigFloat lo, BigFloat hi, bool increasing, Precision prec) {
  const BigFloat tol = pow2(-static_cast<long>(prec) - 4, prec);
  BigFloat x = ldexp(lo + hi, -1);
  const int max_iter = static_cast<int>(prec) + 64;
  for (int it = 0; it < max_iter; ++it) {
    auto [f, df] = eval(x);
    if (f.is_zero()) return x;
    const bool below = increasing ? f.sign() < 0 : f.sign() > 0;
    if (below) {
      lo = x;
    } else {
      hi = x;
    }
    BigFloat next = x;
    bool newton_ok = false;
    if (!df.is_zero() && df.is_finite() && f.is_finite()) {
      next = x - f / df;
      newton_ok = next > lo && next < hi;
    }
    if (!newton_ok) next = ldexp(lo + hi, -1);
    const BigFloat step = abs(next - x);
    x = std::move(next);
    if (step <= tol * abs(x) || hi - lo <= tol * abs(x)) break;
  }
  return x;
}

/// Pure bisection for a monotone f without a usable derivative.
template <typename Eval>
BigFloat bisect(Eval eval, BigFloat lo, BigFloat hi, bool increasing, int steps) {
  for (int i = 0; i < steps; ++i) {
    BigFloat mid = ldexp(lo + hi, -1);
    const BigFloat f = eval(mid);
    if (f.is_zero()) return mid;
    if ((f.sign() < 0) == increasing) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return ldexp(lo + hi, -1);
}

}  // namespace binzeros::detail
