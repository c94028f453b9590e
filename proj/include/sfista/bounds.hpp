#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "sfista/errors.hpp"

namespace sfista::bounds {

// Closed-form iteration-count predictors. Every predictor is an upper bound on
// the first iteration at which the matching stopping criterion must hold; none
// is claimed tight. Formulas are evaluated in long double and use the natural
// logarithm.

using real = long double;

enum class Branch { polynomial, logarithmic };

inline const char* to_string(Branch b) {
  return b == Branch::polynomial ? "polynomial" : "logarithmic";
}

struct BoundReport {
  std::string criterion;
  std::uint64_t predicted_k = 1;
  Branch branch = Branch::polynomial;
  bool log_branch_disabled = false;  // mu = 0
  double polynomial_value = 0.0;
  double logarithmic_value = std::numeric_limits<double>::quiet_NaN();
  const char* log_base = "e";
  std::optional<double> A_bar;
  std::optional<double> zeta;
  std::optional<double> c;
  std::optional<double> calA;
  std::optional<double> M;
  std::optional<double> sigma_tilde;
};

// log+_1(x) = max(log x, 1).
inline real log_plus_one(real x) {
  if (!(x > 0)) return 1;
  return std::max(std::log(x), real(1));
}

// Ceiling clamped to [1, 2^63]. Values within 1e-12 relative of an integer
// are taken as that integer (4.0000000000000004 counts as 4).
inline std::uint64_t ceil_count(real x) {
  if (std::isnan(static_cast<double>(x))) return std::numeric_limits<std::uint64_t>::max();
  if (x <= 1) return 1;
  constexpr real kCap = 9.2e18L;
  if (x >= kCap) return static_cast<std::uint64_t>(kCap);
  const real nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-12L * x) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

inline void require_positive(real v, const char* name) {
  if (!(v > 0) || !std::isfinite(static_cast<double>(v)))
    raise(ErrorKind::invalid_argument, std::string(name) + " must be finite and > 0");
}

inline void require_nonnegative(real v, const char* name) {
  if (!(v >= 0) || !std::isfinite(static_cast<double>(v)))
    raise(ErrorKind::invalid_argument, std::string(name) + " must be finite and >= 0");
}

inline void validate_curvature(real L_f, real mu_f, real mu) {
  require_nonnegative(mu_f, "mu_f");
  require_nonnegative(mu, "mu");
  if (!(L_f > mu_f)) raise(ErrorKind::invalid_config, "L_f must exceed mu_f");
}

// Picks the smaller of the two branch values and rounds up.
inline void finish(BoundReport& r, real poly, std::optional<real> log_branch) {
  r.polynomial_value = static_cast<double>(poly);
  r.log_branch_disabled = !log_branch.has_value();
  r.branch = Branch::polynomial;
  real best = poly;
  if (log_branch) {
    r.logarithmic_value = static_cast<double>(*log_branch);
    if (*log_branch < poly) {
      best = *log_branch;
      r.branch = Branch::logarithmic;
    }
  }
  r.predicted_k = ceil_count(best);
}

// Iterations after which A_k >= A_target is guaranteed:
//   min{ 2 sqrt((L_f-mu_f) A), [1/2 + sqrt((L_f-mu_f)/mu)] log+_1((L_f-mu_f) A) + 1 },
// the second branch only when mu > 0.
inline BoundReport iters_for_A_report(real A_target, real L_f, real mu_f, real mu) {
  validate_curvature(L_f, mu_f, mu);
  require_nonnegative(A_target, "A_target");
  BoundReport r;
  r.criterion = "A_k";
  r.A_bar = static_cast<double>(A_target);
  const real scaled = (L_f - mu_f) * A_target;
  const real poly = 2 * std::sqrt(scaled);
  std::optional<real> log_branch;
  if (mu > 0) log_branch = (0.5L + std::sqrt((L_f - mu_f) / mu)) * log_plus_one(scaled) + 1;
  finish(r, poly, log_branch);
  if (A_target == 0) r.predicted_k = 1;
  return r;
}

inline std::uint64_t iters_for_A(real A_target, real L_f, real mu_f, real mu) {
  return iters_for_A_report(A_target, L_f, mu_f, mu).predicted_k;
}

// phi(y_k) - phi* <= eps_bar, through A_bar = d0^2 / (2 eps_bar).
inline BoundReport bound_function_gap(real d0, real eps_bar, real L_f, real mu_f, real mu) {
  require_nonnegative(d0, "d0");
  require_positive(eps_bar, "eps_bar");
  BoundReport r = iters_for_A_report(d0 * d0 / (2 * eps_bar), L_f, mu_f, mu);
  r.criterion = "function_gap";
  return r;
}

// zeta = 8 L_f^2 (L_f - mu_f) / (L_f - L_f_bar).
inline real zeta_constant(real L_f, real L_f_bar, real mu_f) {
  if (!(L_f > L_f_bar)) raise(ErrorKind::invalid_config, "L_f must exceed L_f_bar");
  return 8 * L_f * L_f * (L_f - mu_f) / (L_f - L_f_bar);
}

// c = 1 + (1/2) sqrt(mu / (L_f - mu_f)).
inline real rate_constant(real L_f, real mu_f, real mu) {
  return 1 + 0.5L * std::sqrt(mu / (L_f - mu_f));
}

// |u_k| <= rho:
//   ceil(min{ (12 zeta d0^2/rho^2)^(1/3),
//             (1 + 2 sqrt(L_f-mu_f)/sqrt(mu)) log(1 + zeta (c^2-1) d0^2/rho^2) }).
inline BoundReport bound_stationarity(real d0, real rho, real L_f, real L_f_bar, real mu_f,
                                      real mu) {
  require_nonnegative(d0, "d0");
  require_positive(rho, "rho");
  validate_curvature(L_f, mu_f, mu);
  const real zeta = zeta_constant(L_f, L_f_bar, mu_f);
  const real c = rate_constant(L_f, mu_f, mu);
  BoundReport r;
  r.criterion = "stationarity";
  r.zeta = static_cast<double>(zeta);
  r.c = static_cast<double>(c);
  const real ratio = d0 * d0 / (rho * rho);
  const real poly = std::cbrt(12 * zeta * ratio);
  std::optional<real> log_branch;
  if (mu > 0) {
    log_branch = (1 + 2 * std::sqrt(L_f - mu_f) / std::sqrt(mu)) *
                 std::log1p(zeta * (c * c - 1) * ratio);
  }
  finish(r, poly, log_branch);
  return r;
}

// Largest root of sigma~ A^2 - (2 mu + 1) A - 4 = 0.
inline real abar_relative(real mu, real sigma_tilde) {
  require_nonnegative(mu, "mu");
  require_positive(sigma_tilde, "sigma_tilde");
  const real b = 2 * mu + 1;
  return (b + std::sqrt(b * b + 16 * sigma_tilde)) / (2 * sigma_tilde);
}

// |v|^2 + 2 eta <= sigma~ |y - x0|^2 once A_k >= A_bar(mu, sigma~).
inline BoundReport bound_relative(real mu, real sigma_tilde, real L_f, real mu_f) {
  const real A_bar = abar_relative(mu, sigma_tilde);
  BoundReport r = iters_for_A_report(A_bar, L_f, mu_f, mu);
  r.criterion = "relative";
  r.sigma_tilde = static_cast<double>(sigma_tilde);
  return r;
}

// calA_{mu,sigma} = (2 mu + 3)(1 + sqrt(sigma))^2 / sigma.
inline real cal_A(real mu, real sigma) {
  require_nonnegative(mu, "mu");
  require_positive(sigma, "sigma");
  const real root = 1 + std::sqrt(sigma);
  return (2 * mu + 3) * root * root / sigma;
}

// sigma~ = sigma / (1 + sqrt(sigma))^2.
inline real sigma_tilde_from_sigma(real sigma) {
  const real root = 1 + std::sqrt(sigma);
  return sigma / (root * root);
}

// |v|^2 + 2 eta <= sigma |v + y - y0|^2: iters_for_A(calA_{mu,sigma}).
inline BoundReport bound_alternate_relative(real mu, real sigma, real L_f, real mu_f) {
  const real big_a = cal_A(mu, sigma);
  const real st = sigma_tilde_from_sigma(sigma);
  const real exact = abar_relative(mu, st);
  // A_bar(mu, sigma~) <= calA holds for every mu >= 0, sigma > 0.
  if (exact > big_a * (1 + 1e-15L))
    raise(ErrorKind::numeric_failure, "A_bar(mu, sigma~) exceeds calA");
  BoundReport r = iters_for_A_report(big_a, L_f, mu_f, mu);
  r.criterion = "alternate_relative";
  r.calA = static_cast<double>(big_a);
  r.sigma_tilde = static_cast<double>(st);
  r.A_bar = static_cast<double>(exact);
  return r;
}

// M = (1 + 8 (L_f - mu_f)/mu)^2 (L_f - mu_f).
inline real cal_M(real L_f, real mu_f, real mu) {
  const real base = 1 + 8 * (L_f - mu_f) / mu;
  return base * base * (L_f - mu_f);
}

// A_k at or above this value forces |v_k| <= eps and eta_k <= eta_tol.
inline real absolute_sufficient_A(real d0, real eps, real eta_tol, real L_f, real mu_f,
                                  real mu) {
  const real base = 1 + 8 * (L_f - mu_f) / mu;
  return 8 / eps * base * d0 + (16 * mu / (eps * eps) + 2 / eta_tol) * base * base * d0 * d0;
}

// |v_k| <= eps and eta_k <= eta_tol. Requires mu > 0.
inline BoundReport bound_absolute(real d0, real eps, real eta_tol, real L_f, real mu_f,
                                  real mu) {
  require_nonnegative(d0, "d0");
  require_positive(eps, "eps");
  require_positive(eta_tol, "eta_tol");
  validate_curvature(L_f, mu_f, mu);
  if (!(mu > 0))
    raise(ErrorKind::unsupported, "absolute criterion bound is undefined for mu = 0");
  const real M = cal_M(L_f, mu_f, mu);
  BoundReport r;
  r.criterion = "absolute";
  r.M = static_cast<double>(M);
  r.A_bar = static_cast<double>(absolute_sufficient_A(d0, eps, eta_tol, L_f, mu_f, mu));
  const real poly =
      8 * (1 / std::sqrt(eps) + std::sqrt(mu * d0) / eps + std::sqrt(d0) / std::sqrt(eta_tol)) *
      std::sqrt(M * d0);
  const real log_branch =
      (0.5L + std::sqrt((L_f - mu_f) / mu)) *
          log_plus_one(16 * (1 / eps + mu * d0 / (eps * eps) + d0 / eta_tol) * M * d0) +
      1;
  finish(r, poly, log_branch);
  return r;
}

}  // namespace sfista::bounds
