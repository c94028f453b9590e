#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sfista/rng.hpp"
#include "sfista/state.hpp"

namespace sfista {

struct StationarityResidual {
  Vector u;
  double norm_u = 0.0;
};

struct ResidualPair {
  Vector v;
  double eta = 0.0;  // eta_residual
};

inline void require_certificate(const IterateState& s) {
  if (s.k == 0 || !(s.A > 0.0))
    raise(ErrorKind::undefined_certificate, "certificates need at least one iteration");
}

// u_k = grad f(y_k) - grad f(x~_{k-1}) + L_f (x~_{k-1} - y_k), an element of
// grad f(y_k) + dh(y_k).
inline StationarityResidual stationarity_residual(const IterateState& s,
                                                  const CompositeProblem& problem) {
  require_certificate(s);
  StationarityResidual r;
  r.u = problem.f.grad(s.y) - s.grad_tilde_prev + s.L_f * (s.x_tilde_prev - s.y);
  r.norm_u = r.u.norm();
  return r;
}

// v_k = mu (y_k - x_k) + (x_0 - x_k)/A_k,
// eta_k = (|x_0 - y_k|^2 - tau_k |x_k - y_k|^2) / (2 A_k).
inline ResidualPair residual_pair(const IterateState& s) {
  require_certificate(s);
  ResidualPair p;
  p.v = s.mu * (s.y - s.x) + (s.x0 - s.x) / s.A;
  p.eta = ((s.x0 - s.y).squaredNorm() - s.tau * (s.x - s.y).squaredNorm()) / (2.0 * s.A);
  return p;
}

// Lower model Gamma_k evaluated at x.
inline double lower_model_value(const IterateState& s, const Vector& x) {
  require_certificate(s);
  return s.gamma_model(x);
}

struct SampleCheck {
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // samples outside dom h
};

// max over samples of [phi(y) + <v, x - y> - eta] - [phi(x) - (mu/2)|x - y|^2].
// Nonpositive iff v is an eta-subgradient of phi - (mu/2)|. - y|^2 at y on the samples.
inline SampleCheck check_eps_subgradient(const ResidualPair& pair, const IterateState& s,
                                         const CompositeProblem& problem,
                                         std::span<const Vector> samples) {
  require_certificate(s);
  const double phi_y = eval_phi(problem, s.y).to_double();
  SampleCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& x = samples[i];
    const ExtendedReal phi_x = eval_phi(problem, x);
    if (!phi_x.is_finite()) {
      ++out.skipped;
      continue;
    }
    const double lhs = phi_y + pair.v.dot(x - s.y) - pair.eta;
    const double rhs = phi_x.value - 0.5 * s.mu * (x - s.y).squaredNorm();
    const double violation = lhs - rhs;
    ++out.evaluated;
    if (violation > out.worst) {
      out.worst = violation;
      out.worst_index = i;
    }
  }
  return out;
}

// max over samples of Gamma_k(x) - phi(x); nonpositive when Gamma_k <= phi.
inline SampleCheck check_model_below_phi(const IterateState& s, const CompositeProblem& problem,
                                         std::span<const Vector> samples) {
  require_certificate(s);
  SampleCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ExtendedReal phi_x = eval_phi(problem, samples[i]);
    if (!phi_x.is_finite()) {
      ++out.skipped;
      continue;
    }
    const double violation = s.gamma_model(samples[i]) - phi_x.value;
    ++out.evaluated;
    if (violation > out.worst) {
      out.worst = violation;
      out.worst_index = i;
    }
  }
  return out;
}

// max over samples of [phi(y_k) + (tau_k |x_k - x|^2 - |x_0 - x|^2)/(2A_k)] - Gamma_k(x).
inline SampleCheck check_model_recursion(const IterateState& s, const CompositeProblem& problem,
                                         std::span<const Vector> samples) {
  require_certificate(s);
  const double phi_y = eval_phi(problem, s.y).to_double();
  SampleCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& x = samples[i];
    const double bound =
        phi_y + (s.tau * (s.x - x).squaredNorm() - (s.x0 - x).squaredNorm()) / (2.0 * s.A);
    const double violation = bound - s.gamma_model(x);
    ++out.evaluated;
    if (violation > out.worst) {
      out.worst = violation;
      out.worst_index = i;
    }
  }
  return out;
}

// max over samples of [phi(y) + <v, x - y> - eta] - [Gamma_k(x) - (mu/2)|x - y|^2].
inline SampleCheck check_model_subgradient(const ResidualPair& pair, const IterateState& s,
                                           const CompositeProblem& problem,
                                           std::span<const Vector> samples) {
  require_certificate(s);
  const double phi_y = eval_phi(problem, s.y).to_double();
  SampleCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& x = samples[i];
    const double lhs = phi_y + pair.v.dot(x - s.y) - pair.eta;
    const double rhs = s.gamma_model(x) - 0.5 * s.mu * (x - s.y).squaredNorm();
    const double violation = lhs - rhs;
    ++out.evaluated;
    if (violation > out.worst) {
      out.worst = violation;
      out.worst_index = i;
    }
  }
  return out;
}

// Gaussian samples around `center` with scale (1 + |center|), projected into
// dom h when h is an indicator.
inline std::vector<Vector> certificate_samples(const CompositeProblem& problem,
                                               const Vector& center, std::size_t count,
                                               std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const double scale = 1.0 + center.norm();
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector x(center.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = center[j] + scale * rng.normal();
    if (problem.h.is_indicator) x = problem.h.prox(x, 1.0);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace sfista
