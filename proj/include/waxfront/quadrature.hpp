#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace waxfront::quad {

namespace detail {

template <class Fn>
double simpson_step(Fn& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class Fn>
double adaptive_simpson(Fn&& f, double a, double b, double tol = 1e-12,
                        int max_depth = 40) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

/// Composite Simpson rule over equally spaced samples; needs an odd count.
inline double simpson_uniform(std::span<const double> y, double spacing) {
  const std::size_t n = y.size();
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("simpson_uniform needs an odd number (>= 3) of samples");
  }
  double acc = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * y[i];
  return acc * spacing / 3.0;
}

}  // namespace waxfront::quad
