#pragma once

#include "sfista/problem.hpp"

namespace sfista {

// Quadratic c + <l, x> + (mu/2)|x|^2 with Hessian exactly mu*I.
struct QuadraticMinorant {
  double constant = 0.0;
  Vector linear;
  double curvature = 0.0;

  double operator()(const Vector& x) const {
    return constant + linear.dot(x) + 0.5 * curvature * x.squaredNorm();
  }
};

// Aggregated lower model Gamma_k = (1/A_k) sum_{i<k} a_i gamma_i. `weight`
// holds A_k; an empty model (weight 0) is only meaningful after one update.
struct LowerModel : QuadraticMinorant {
  double weight = 0.0;
};

// Everything the engine knows after computing y_{k+1}.
struct ModelStepData {
  double a = 0.0;                   // a_k
  const Vector* x_tilde = nullptr;  // x~_k
  const Vector* y_next = nullptr;   // y_{k+1}
  const Vector* grad_tilde = nullptr;
  double f_tilde = 0.0;             // f(x~_k)
  double h_y_next = 0.0;            // h(y_{k+1}), finite
  double lambda = 0.0;
  double mu = 0.0;
  double mu_f = 0.0;
};

// gamma~_k(y_{k+1}) = l_f(y_{k+1}; x~_k) + h(y_{k+1}) + (mu_f/2)|y_{k+1} - x~_k|^2.
inline double gamma_tilde_at_next(const ModelStepData& d) {
  const Vector diff = *d.y_next - *d.x_tilde;
  return d.f_tilde + d.grad_tilde->dot(diff) + d.h_y_next + 0.5 * d.mu_f * diff.squaredNorm();
}

// gamma_k(x) = gamma~_k(y+) + (1/lambda)<x~ - y+, x - y+> + (mu/2)|x - y+|^2,
// expanded into coefficients.
inline QuadraticMinorant gamma_piece(const ModelStepData& d) {
  const Vector& y = *d.y_next;
  const Vector slope = (*d.x_tilde - y) / d.lambda;
  QuadraticMinorant g;
  g.curvature = d.mu;
  g.linear = slope - d.mu * y;
  g.constant = gamma_tilde_at_next(d) - slope.dot(y) + 0.5 * d.mu * y.squaredNorm();
  return g;
}

// Gamma_{k+1} = (A_k Gamma_k + a_k gamma_k) / A_{k+1}.
inline LowerModel lower_model_update(const LowerModel& model, const ModelStepData& d) {
  const QuadraticMinorant g = gamma_piece(d);
  const double A_next = model.weight + d.a;
  const double w_old = model.weight / A_next;
  const double w_new = d.a / A_next;

  LowerModel out;
  out.weight = A_next;
  out.curvature = d.mu;
  if (model.weight == 0.0) {
    out.constant = g.constant;
    out.linear = g.linear;
  } else {
    out.constant = w_old * model.constant + w_new * g.constant;
    out.linear = w_old * model.linear + w_new * g.linear;
  }
  return out;
}

}  // namespace sfista
