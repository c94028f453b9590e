#pragma once

#include <Eigen/Dense>

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "sfista/errors.hpp"
#include "sfista/extended_real.hpp"

namespace sfista {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <class F>
concept ScalarField = std::invocable<const F&, const Vector&> &&
    std::convertible_to<std::invoke_result_t<const F&, const Vector&>, double>;

template <class F>
concept ExtendedScalarField = std::invocable<const F&, const Vector&> &&
    std::convertible_to<std::invoke_result_t<const F&, const Vector&>, ExtendedReal>;

template <class F>
concept VectorField = std::invocable<const F&, const Vector&> &&
    std::convertible_to<std::invoke_result_t<const F&, const Vector&>, Vector>;

template <class F>
concept ProxMap = std::invocable<const F&, const Vector&, double> &&
    std::convertible_to<std::invoke_result_t<const F&, const Vector&, double>, Vector>;

// Smooth part f with curvature constants:
//   l_f(x,z) + mu_f_bar/2 |x-z|^2 <= f(x) <= l_f(x,z) + L_f_bar/2 |x-z|^2.
// Callbacks must be pure; one oracle may be shared across threads.
struct SmoothOracle {
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> grad;
  double mu_f_bar = 0.0;
  double L_f_bar = 0.0;
};

// Proximable part h. prox(x, t) = argmin_u { h(u) + |u - x|^2 / (2t) }.
struct ProxOracle {
  std::function<ExtendedReal(const Vector&)> eval;
  std::function<Vector(const Vector&, double)> prox;
  double mu_h_bar = 0.0;
  // True when h is the indicator of a closed convex set; prox is then the
  // projection for every step.
  bool is_indicator = false;
};

template <ScalarField Value, VectorField Grad>
SmoothOracle make_smooth_oracle(Value value, Grad grad, double mu_f_bar, double L_f_bar) {
  return SmoothOracle{std::move(value), std::move(grad), mu_f_bar, L_f_bar};
}

template <ExtendedScalarField Value, ProxMap Prox>
ProxOracle make_prox_oracle(Value value, Prox prox, double mu_h_bar, bool is_indicator = false) {
  return ProxOracle{std::move(value), std::move(prox), mu_h_bar, is_indicator};
}

struct ReferenceOptimum {
  double phi_star = 0.0;
  Vector x_star;
};

struct CompositeProblem {
  SmoothOracle f;
  ProxOracle h;
  Eigen::Index dimension = 0;
  std::optional<ReferenceOptimum> reference_optimum;
};

struct LinearizationRequest {
  Vector base;   // z
  Vector query;  // x
};

inline void require_dimension(const CompositeProblem& problem, const Vector& x,
                              const char* what) {
  if (x.size() != problem.dimension) {
    raise(ErrorKind::invalid_argument,
          std::string(what) + " has dimension " + std::to_string(x.size()) + ", expected " +
              std::to_string(problem.dimension));
  }
}

// phi(x) = f(x) + h(x); +inf exactly when h(x) = +inf.
inline ExtendedReal eval_phi(const CompositeProblem& problem, const Vector& x) {
  require_dimension(problem, x, "point");
  const ExtendedReal hx = problem.h.eval(x);
  if (!hx.is_finite()) return ExtendedReal::plus_infinity();
  return ExtendedReal(problem.f.eval(x)) + hx;
}

// l_f(x, z) = f(z) + <grad f(z), x - z>.
inline double linearize_f(const CompositeProblem& problem, const LinearizationRequest& req) {
  require_dimension(problem, req.base, "linearization base");
  require_dimension(problem, req.query, "linearization query");
  return problem.f.eval(req.base) + problem.f.grad(req.base).dot(req.query - req.base);
}

// Same as linearize_f when f(z) and grad f(z) are already at hand.
inline double linearize_f(double f_base, const Vector& grad_base, const Vector& base,
                          const Vector& query) {
  return f_base + grad_base.dot(query - base);
}

}  // namespace sfista
