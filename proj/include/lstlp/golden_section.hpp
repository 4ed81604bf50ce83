#pragma once

#include <cmath>
#include <utility>

namespace lstlp {

struct ScalarMaximum {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than tol.
template <class F>
ScalarMaximum golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (lo > hi) std::swap(lo, hi);
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  int it = 0;
  for (; it < max_iter && hi - lo > tol; ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x), it};
}

}  // namespace lstlp
