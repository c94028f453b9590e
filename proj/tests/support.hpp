#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "sfista/sfista.hpp"

namespace testing_support {

using sfista::Vector;

// f(x) = (q/2)|x|^2 - <c, x> in dimension n, h = 0.
inline sfista::CompositeProblem quadratic(Eigen::Index n, double q, Vector c, double L_f_bar,
                                          double mu_f_bar = 0.0) {
  sfista::CompositeProblem p;
  p.dimension = n;
  p.f = sfista::make_smooth_oracle(
      [q, c](const Vector& x) { return 0.5 * q * x.squaredNorm() - c.dot(x); },
      [q, c](const Vector& x) -> Vector { return q * x - c; }, mu_f_bar, L_f_bar);
  p.h = sfista::prox::zero();
  return p;
}

// 1-D f = x^2/2, h = 0, L_f_bar = 1.
inline sfista::CompositeProblem half_square_1d() {
  return quadratic(1, 1.0, Vector::Zero(1), 1.0);
}

// argmin over a uniform grid on [lo, hi] of a 1-D objective.
inline double grid_argmin(const std::function<double(double)>& g, double lo, double hi,
                          double step) {
  double best = lo;
  double best_val = std::numeric_limits<double>::infinity();
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long i = 0; i <= count; ++i) {
    const double u = lo + static_cast<double>(i) * step;
    const double v = g(u);
    if (v < best_val) {
      best_val = v;
      best = u;
    }
  }
  return best;
}

}  // namespace testing_support
