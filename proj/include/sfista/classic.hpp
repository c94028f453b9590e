#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sfista/engine.hpp"

namespace sfista::classic {

// The mu = 0 specialisation of S-FISTA written in the usual momentum forms:
// the t_k recursion of FISTA and the alpha_k recursion of Nesterov's FGM.
// With t_k = A_{k+1}/a_k = a_k/lambda and alpha_k = 1/t_k both reproduce the
// S-FISTA iterates exactly (in exact arithmetic).

// Positive root of t'^2 - t' - t^2 = 0.
inline double t_next(double t) {
  if (!(t >= 1.0)) raise(ErrorKind::invalid_argument, "t_next needs t >= 1");
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
}

// Root in (0, 1) of alpha'^2 = (1 - alpha') alpha^2, in the cancellation-free form.
inline double alpha_next(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    raise(ErrorKind::invalid_argument, "alpha_next needs alpha in (0, 1]");
  const double a2 = alpha * alpha;
  return 2.0 * a2 / (a2 + std::sqrt(a2 * a2 + 4.0 * a2));
}

// |t'^2 - t' - t^2| normalised by max(1, t'^2).
inline double t_relation_residual(double t, double t_new) {
  return std::abs(t_new * t_new - t_new - t * t) / std::max(1.0, t_new * t_new);
}

enum class MomentumForm { t_form, alpha_form };

struct MomentumSchedule {
  MomentumForm form = MomentumForm::t_form;
  double value = 1.0;  // t_k (>= 1) or alpha_k (in (0, 1])

  double next_value() const {
    return form == MomentumForm::t_form ? t_next(value) : alpha_next(value);
  }

  // Coefficient of (y_{k+1} - y_k) in x~_{k+1}, given the advanced value.
  double extrapolation(double advanced) const {
    if (form == MomentumForm::t_form) return (value - 1.0) / advanced;
    return value * (1.0 - value) / (value * value + advanced);
  }
};

struct ClassicState {
  std::uint64_t k = 0;
  Vector y;
  Vector y_prev;
  Vector x_tilde;
  MomentumSchedule schedule;
};

// t_0 = 1 and alpha_0 = 1; x~_0 = y_0 = x_0.
inline ClassicState classic_init(const Vector& x0, MomentumForm form) {
  ClassicState s;
  s.y = x0;
  s.y_prev = x0;
  s.x_tilde = x0;
  s.schedule = MomentumSchedule{form, 1.0};
  return s;
}

inline void require_convex_only(const SolverConfig& config) {
  if (config.mu_f + config.mu_h != 0.0)
    raise(ErrorKind::unsupported, "the t/alpha momentum forms are only valid for mu = 0");
}

// y_{k+1} = prox(x~_k - grad f(x~_k)/L_f, 1/L_f), then extrapolate.
inline void classic_step(ClassicState& s, const CompositeProblem& problem,
                         const SolverConfig& config) {
  require_convex_only(config);
  const double t = 1.0 / config.L_f;
  Vector y_new = problem.h.prox(s.x_tilde - t * problem.f.grad(s.x_tilde), t);
  const double advanced = s.schedule.next_value();
  const double beta = s.schedule.extrapolation(advanced);
  s.x_tilde = y_new + beta * (y_new - s.y);
  s.y_prev = std::move(s.y);
  s.y = std::move(y_new);
  s.schedule.value = advanced;
  s.k += 1;
}

struct EquivalenceReport {
  std::uint64_t iterations = 0;
  double max_deviation = 0.0;        // S-FISTA y vs both classic forms
  double max_deviation_t = 0.0;
  double max_deviation_alpha = 0.0;
  double max_x_tilde_deviation = 0.0;
  double max_t_recovery_error = 0.0;  // |A_{k+1}/a_k - t_k| and |a_k/lambda - t_k|, relative
  double max_t_residual = 0.0;
  double max_alpha_t_error = 0.0;     // |alpha_k t_k - 1|
  double max_y_alternate_error = 0.0; // y_{k+1} vs (A_k y_k + a_k x_{k+1})/A_{k+1}

  bool passed(double tol) const {
    return max_deviation <= tol && max_t_recovery_error <= 1e-10 && max_t_residual <= 1e-12 &&
           max_alpha_t_error <= 1e-12;
  }
};

// Runs S-FISTA (mu_f = mu_h = 0) and both classic forms side by side.
inline EquivalenceReport equivalence_check(const CompositeProblem& problem, const Vector& x0,
                                           double L_f, std::uint64_t k_max) {
  SolverConfig config;
  config.L_f = L_f;
  config.mu_f = 0.0;
  config.mu_h = 0.0;
  IterateState s = init(problem, config, x0);
  ClassicState ct = classic_init(x0, MomentumForm::t_form);
  ClassicState ca = classic_init(x0, MomentumForm::alpha_form);

  auto rel = [](const Vector& ref, const Vector& other) {
    return (ref - other).norm() / std::max(1.0, ref.norm());
  };

  EquivalenceReport rep;
  for (std::uint64_t k = 0; k < k_max; ++k) {
    const double t_k = ct.schedule.value;
    const double alpha_k = ca.schedule.value;
    const Vector y_k = s.y;
    const double A_k = s.A;

    const StepOutcome out = step(s, problem);
    rep.max_x_tilde_deviation = std::max(
        {rep.max_x_tilde_deviation, rel(out.x_tilde, ct.x_tilde), rel(out.x_tilde, ca.x_tilde)});
    classic_step(ct, problem, config);
    classic_step(ca, problem, config);

    const double t_from_A = out.A_next / out.a;
    const double t_from_a = out.a / s.lambda;
    rep.max_t_recovery_error =
        std::max({rep.max_t_recovery_error, std::abs(t_from_A - t_k) / t_k,
                  std::abs(t_from_a - t_k) / t_k});
    rep.max_t_residual =
        std::max(rep.max_t_residual, t_relation_residual(t_k, ct.schedule.value));
    rep.max_alpha_t_error = std::max(rep.max_alpha_t_error, std::abs(alpha_k * t_k - 1.0));

    const double dt = rel(s.y, ct.y);
    const double da = rel(s.y, ca.y);
    rep.max_deviation_t = std::max(rep.max_deviation_t, dt);
    rep.max_deviation_alpha = std::max(rep.max_deviation_alpha, da);

    const Vector y_alt = (A_k / out.A_next) * y_k + (out.a / out.A_next) * out.x_next;
    rep.max_y_alternate_error = std::max(rep.max_y_alternate_error, rel(out.y_next, y_alt));
    rep.iterations = k + 1;
  }
  rep.max_alpha_t_error = std::max(
      rep.max_alpha_t_error, std::abs(ca.schedule.value * ct.schedule.value - 1.0));
  rep.max_deviation = std::max(rep.max_deviation_t, rep.max_deviation_alpha);
  return rep;
}

}  // namespace sfista::classic
