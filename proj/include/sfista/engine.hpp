#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sfista/state.hpp"
#include "sfista/stopping.hpp"
#include "sfista/trace.hpp"

namespace sfista {

// A_k above this halts the run; only reachable through geometric growth (mu > 0).
inline constexpr double kGrowthLimit = 1e300;

struct StepCoefficients {
  double a = 0.0;
  double A_next = 0.0;
  double tau_next = 0.0;
};

struct StepOutcome {
  Vector y_next;
  Vector x_next;
  Vector x_tilde;
  double a = 0.0;
  double A_next = 0.0;
  double tau_next = 0.0;
  double tau = 0.0;  // tau_k, the value used by this step
};

enum class StopReason { converged, max_iter, growth_overflow };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::max_iter: return "max_iter";
    case StopReason::growth_overflow: return "growth_overflow";
  }
  return "unknown";
}

struct RunResult {
  IterateState state;
  StopReason reason = StopReason::max_iter;
  std::vector<TraceRecord> trace;
};

inline IterateState init(const CompositeProblem& problem, const SolverConfig& config,
                         const Vector& x0) {
  require_dimension(problem, x0, "x0");
  validate_config(config, problem);
  if (!problem.h.eval(x0).is_finite())
    raise(ErrorKind::invalid_start, "x0 is outside dom h");

  IterateState s;
  s.k = 0;
  s.L_f = config.L_f;
  s.mu_f = config.mu_f;
  s.lambda = 1.0 / (config.L_f - config.mu_f);
  s.mu = config.mu_f + config.mu_h;
  s.A = 0.0;
  s.tau = 1.0;
  s.x = x0;
  s.y = x0;
  s.x0 = x0;
  s.gamma_model.linear = Vector::Zero(x0.size());
  s.gamma_model.curvature = s.mu;
  return s;
}

// a_k is the positive root of a^2/(lambda tau_k) - a - A_k = 0.
inline StepCoefficients step_coefficients(const IterateState& s) {
  const double lt = s.lambda * s.tau;
  StepCoefficients c;
  c.a = 0.5 * (lt + std::sqrt(lt * lt + 4.0 * lt * s.A));
  c.A_next = s.A + c.a;
  c.tau_next = s.tau + s.mu * c.a;
  return c;
}

// One S-FISTA iteration; advances `s` from k to k+1.
inline StepOutcome step(IterateState& s, const CompositeProblem& problem) {
  const StepCoefficients c = step_coefficients(s);
  if (!(c.A_next <= kGrowthLimit))
    raise(ErrorKind::growth_overflow, "A_k exceeded the growth limit");

  StepOutcome out;
  out.a = c.a;
  out.A_next = c.A_next;
  out.tau_next = c.tau_next;
  out.tau = s.tau;

  // At k = 0, A_0 = 0 so x~_0 = x_0 whatever y_0 is.
  out.x_tilde = (s.A / c.A_next) * s.y + (c.a / c.A_next) * s.x;
  const double f_tilde = problem.f.eval(out.x_tilde);
  Vector grad = problem.f.grad(out.x_tilde);
  const double step_size = 1.0 / s.L_f;
  out.y_next = problem.h.prox(out.x_tilde - step_size * grad, step_size);

  const ExtendedReal h_next = problem.h.eval(out.y_next);
  if (!h_next.is_finite())
    raise(ErrorKind::numeric_failure, "prox returned a point outside dom h");

  out.x_next = ((c.a / s.lambda) * (out.y_next - out.x_tilde) + (s.mu * c.a) * out.y_next +
                s.tau * s.x) /
               c.tau_next;

  ModelStepData data;
  data.a = c.a;
  data.x_tilde = &out.x_tilde;
  data.y_next = &out.y_next;
  data.grad_tilde = &grad;
  data.f_tilde = f_tilde;
  data.h_y_next = h_next.value;
  data.lambda = s.lambda;
  data.mu = s.mu;
  data.mu_f = s.mu_f;
  s.gamma_model = lower_model_update(s.gamma_model, data);

  s.k += 1;
  s.a_prev = c.a;
  s.A = c.A_next;
  s.tau = c.tau_next;
  s.x = out.x_next;
  s.y = out.y_next;
  s.x_tilde_prev = out.x_tilde;
  s.grad_tilde_prev = std::move(grad);
  return out;
}

inline TraceRecord make_trace_record(const IterateState& s, const CompositeProblem& problem,
                                     std::int64_t elapsed_ns) {
  TraceRecord r;
  r.k = s.k;
  r.a = s.a_prev;
  r.A = s.A;
  r.tau = s.tau;
  r.phi_y = eval_phi(problem, s.y).to_double();
  if (problem.reference_optimum) r.gap = r.phi_y - problem.reference_optimum->phi_star;
  if (s.k >= 1) {
    const CertificateBundle b = compute_certificates(s, problem);
    r.norm_u = b.stationarity->norm_u;
    r.norm_v = b.norm_v;
    r.eta_residual = b.pair.eta;
  }
  r.elapsed_ns = elapsed_ns;
  return r;
}

// Runs S-FISTA until the configured criterion holds, max_iter iterations have
// been taken, or A_k would exceed kGrowthLimit.
inline RunResult run(const CompositeProblem& problem, const SolverConfig& config,
                     const Vector& x0) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RunResult result;
  result.state = init(problem, config, x0);
  IterateState& s = result.state;

  while (true) {
    if (s.k >= 1 && check(config.criterion, s, problem)) {
      result.reason = StopReason::converged;
      break;
    }
    if (s.k >= config.max_iter) {
      result.reason = StopReason::max_iter;
      break;
    }
    if (!(step_coefficients(s).A_next <= kGrowthLimit)) {
      result.reason = StopReason::growth_overflow;
      break;
    }
    step(s, problem);
    if (s.k % config.trace_every == 0) {
      const auto ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count();
      result.trace.push_back(make_trace_record(s, problem, ns));
    }
  }
  return result;
}

}  // namespace sfista
