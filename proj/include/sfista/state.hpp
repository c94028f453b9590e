#pragma once

#include <cstdint>

#include "sfista/criteria.hpp"
#include "sfista/lower_model.hpp"
#include "sfista/problem.hpp"

namespace sfista {

struct SolverConfig {
  double L_f = 0.0;   // must exceed L_f_bar strictly
  double mu_f = 0.0;  // in [0, mu_f_bar]
  double mu_h = 0.0;  // in [0, mu_h_bar]
  std::uint64_t max_iter = 100'000;
  Criterion criterion = Stationarity{1e-6};
  std::uint64_t trace_every = 1;
};

inline constexpr double kDefaultLipschitzFactor = 1.25;

// Uses all available strong convexity and L_f = 1.25 L_f_bar.
inline SolverConfig default_config(const CompositeProblem& problem) {
  SolverConfig c;
  c.L_f = kDefaultLipschitzFactor * problem.f.L_f_bar;
  c.mu_f = problem.f.mu_f_bar;
  c.mu_h = problem.h.mu_h_bar;
  return c;
}

inline void validate_config(const SolverConfig& c, const CompositeProblem& problem) {
  if (!(c.L_f > problem.f.L_f_bar) || !std::isfinite(c.L_f))
    raise(ErrorKind::invalid_config, "L_f = " + std::to_string(c.L_f) +
                                         " must exceed L_f_bar = " +
                                         std::to_string(problem.f.L_f_bar));
  if (!(c.mu_f >= 0.0) || c.mu_f > problem.f.mu_f_bar)
    raise(ErrorKind::invalid_config, "mu_f must lie in [0, mu_f_bar]");
  if (!(c.mu_h >= 0.0) || c.mu_h > problem.h.mu_h_bar)
    raise(ErrorKind::invalid_config, "mu_h must lie in [0, mu_h_bar]");
  if (c.trace_every == 0) raise(ErrorKind::invalid_config, "trace_every must be positive");
  validate_criterion(c.criterion);
}

// Live S-FISTA tuple. Fields suffixed _prev refer to step k-1 and are only
// meaningful for k >= 1.
struct IterateState {
  std::uint64_t k = 0;
  double lambda = 0.0;  // 1 / (L_f - mu_f)
  double mu = 0.0;      // mu_f + mu_h
  double L_f = 0.0;
  double mu_f = 0.0;
  double a_prev = 0.0;  // a_{k-1}
  double A = 0.0;       // A_k
  double tau = 1.0;     // tau_k
  Vector x;
  Vector y;
  Vector x_tilde_prev;     // x~_{k-1}
  Vector grad_tilde_prev;  // grad f(x~_{k-1})
  Vector x0;
  LowerModel gamma_model;
};

}  // namespace sfista
