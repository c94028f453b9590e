#pragma once

#include <cmath>

#include "sfista/problem.hpp"

namespace sfista::prox {

// prox of weight*|.|_1 with step t: componentwise soft threshold at weight*t.
inline Vector soft_threshold(const Vector& x, double weight, double step) {
  if (weight < 0.0) raise(ErrorKind::invalid_argument, "soft_threshold: weight must be >= 0");
  if (!(step > 0.0)) raise(ErrorKind::invalid_argument, "soft_threshold: step must be > 0");
  const double kappa = weight * step;
  return x.unaryExpr([kappa](double xi) {
    const double shrunk = std::abs(xi) - kappa;
    return shrunk > 0.0 ? std::copysign(shrunk, xi) : 0.0;
  });
}

// Euclidean projection onto the box [lo, hi]. The step is irrelevant for an
// indicator and therefore not taken.
inline Vector box(const Vector& x, const Vector& lo, const Vector& hi) {
  if (lo.size() != x.size() || hi.size() != x.size())
    raise(ErrorKind::invalid_argument, "box: bound dimensions differ from the point");
  if ((lo.array() > hi.array()).any())
    raise(ErrorKind::invalid_argument, "box: lo > hi in some component");
  return x.cwiseMax(lo).cwiseMin(hi);
}

// prox of (alpha/2)|.|^2 with step t.
inline Vector scaled_quadratic(const Vector& x, double alpha, double step) {
  if (alpha < 0.0) raise(ErrorKind::invalid_argument, "scaled_quadratic: alpha must be >= 0");
  if (!(step > 0.0)) raise(ErrorKind::invalid_argument, "scaled_quadratic: step must be > 0");
  return x / (1.0 + alpha * step);
}

// Ready-made h oracles built on the maps above.

inline ProxOracle l1_norm(double weight) {
  return make_prox_oracle(
      [weight](const Vector& x) { return ExtendedReal(weight * x.lpNorm<1>()); },
      [weight](const Vector& x, double t) { return soft_threshold(x, weight, t); }, 0.0);
}

inline ProxOracle box_indicator(Vector lo, Vector hi) {
  if (lo.size() != hi.size() || (lo.array() > hi.array()).any())
    raise(ErrorKind::invalid_argument, "box_indicator: invalid bounds");
  return make_prox_oracle(
      [lo, hi](const Vector& x) {
        const bool inside = (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
        return inside ? ExtendedReal(0.0) : ExtendedReal::plus_infinity();
      },
      [lo, hi](const Vector& x, double) { return box(x, lo, hi); }, 0.0, true);
}

inline ProxOracle half_squared_norm(double alpha) {
  return make_prox_oracle(
      [alpha](const Vector& x) { return ExtendedReal(0.5 * alpha * x.squaredNorm()); },
      [alpha](const Vector& x, double t) { return scaled_quadratic(x, alpha, t); }, alpha);
}

inline ProxOracle zero() {
  return make_prox_oracle([](const Vector&) { return ExtendedReal(0.0); },
                          [](const Vector& x, double) { return Vector(x); }, 0.0);
}

}  // namespace sfista::prox
