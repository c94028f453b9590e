#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "sfista/bounds.hpp"
#include "sfista/classic.hpp"
#include "sfista/engine.hpp"
#include "sfista/instances.hpp"

namespace sfista::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  // Largest (lhs - rhs - slack) seen; positive means the check failed there.
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t location = 0;  // iteration index of the worst case
  std::uint64_t evaluations = 0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  CheckResult& add(std::string name) {
    checks.push_back(CheckResult{std::move(name)});
    return checks.back();
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  void merge(const VerificationReport& other, const std::string& prefix) {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }
};

// Records lhs <= rhs + slack.
inline void record(CheckResult& c, double lhs, double rhs, double slack, std::uint64_t k) {
  const double excess = lhs - rhs - slack;
  ++c.evaluations;
  if (std::isnan(excess) || excess > c.worst_violation) {
    c.worst_violation = std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess;
    c.location = k;
  }
  if (!(excess <= 0.0)) c.passed = false;
}

inline void write_report(std::ostream& os, const VerificationReport& r) {
  for (const auto& c : r.checks) {
    os << "check = " << c.name << " | passed = " << (c.passed ? "true" : "false")
       << " | worst_violation = " << format_real(c.worst_violation)
       << " | location = " << c.location << " | evaluations = " << c.evaluations << "\n";
  }
  os << "overall = " << (r.overall() ? "pass" : "fail") << "\n";
}

struct InvariantOptions {
  std::uint64_t iterations = 2000;
  std::vector<std::uint64_t> sample_checkpoints{1, 10, 100, 1000};
  std::size_t samples = 1000;
  std::uint64_t sample_seed = 2024;
  double identity_tol = 1e-10;
  double certificate_tol = 1e-8;
};

// Runs S-FISTA on `problem` and checks every per-iteration identity and
// inequality the method guarantees. Requires a reference optimum for the
// d0-based checks; they are skipped otherwise.
inline VerificationReport check_invariants(const CompositeProblem& problem,
                                           const SolverConfig& config, const Vector& x0,
                                           const InvariantOptions& opt = {}) {
  VerificationReport rep;
  rep.checks.reserve(32);  // keeps the references below valid
  auto& aalam = rep.add("tau_A_over_a2_identity");
  auto& tau_id = rep.add("tau_equals_1_plus_mu_A");
  auto& a_lower = rep.add("A_k_lower_bound");
  auto& cert_id = rep.add("certificate_identity");
  auto& eta_nonneg = rep.add("eta_nonnegative");
  auto& v_bound = rep.add("v_eta_norm_bounds");
  auto& u_step = rep.add("u_le_2Lf_step");
  auto& subgrad = rep.add("eps_subgradient_samples");
  auto& model_below = rep.add("lower_model_below_phi");
  auto& model_rec = rep.add("lower_model_recursion");
  auto& model_sub = rep.add("lower_model_subgradient");
  auto& y_alt = rep.add("y_alternate_expression");

  const bool has_ref = problem.reference_optimum.has_value();
  CheckResult* gap_rate = has_ref ? &rep.add("function_gap_rate") : nullptr;
  CheckResult* dist = has_ref ? &rep.add("distance_bounds") : nullptr;
  CheckResult* movement = has_ref ? &rep.add("summed_movement_bound") : nullptr;
  CheckResult* min_norm = has_ref ? &rep.add("stationarity_min_norm_bound") : nullptr;
  CheckResult* abs_est = (has_ref && config.mu_f + config.mu_h > 0.0)
                             ? &rep.add("absolute_certificate_estimates")
                             : nullptr;

  IterateState s = init(problem, config, x0);
  const double Lmu = config.L_f - config.mu_f;
  const double mu = s.mu;
  const double c_rate = static_cast<double>(bounds::rate_constant(config.L_f, config.mu_f, mu));
  const double phi_star = has_ref ? problem.reference_optimum->phi_star : 0.0;
  const double d0 = has_ref ? (x0 - problem.reference_optimum->x_star).norm() : 0.0;
  const double gap_slack = 1e-9 * (1.0 + std::abs(phi_star));

  double movement_sum = 0.0;
  double sum_A = 0.0;
  double min_u = std::numeric_limits<double>::infinity();
  std::size_t checkpoint_seed = 0;

  for (std::uint64_t k = 0; k < opt.iterations; ++k) {
    if (!(step_coefficients(s).A_next <= kGrowthLimit)) break;
    const Vector y_k = s.y;
    const double A_k = s.A;
    const StepOutcome out = step(s, problem);
    const std::uint64_t kk = s.k;

    // tau_k A_{k+1} / a_k^2 = L_f - mu_f
    const double ratio = (out.tau / out.a) * (out.A_next / out.a);
    record(aalam, std::abs(ratio - Lmu) / Lmu, 0.0, opt.identity_tol, kk);
    record(tau_id, std::abs(s.tau - (1.0 + mu * s.A)) / (1.0 + mu * s.A), 0.0, opt.identity_tol,
           kk);

    // A_k >= max{k^2/4, c^{2(k-1)}} / (L_f - mu_f)
    const double kd = static_cast<double>(kk);
    const double geometric = std::exp(2.0 * (kd - 1.0) * std::log(c_rate));
    const double A_floor = std::max(kd * kd / 4.0, geometric) / Lmu;
    record(a_lower, A_floor * (1.0 - 1e-10), s.A, 0.0, kk);

    if (mu == 0.0) {
      const Vector alt = (A_k / out.A_next) * y_k + (out.a / out.A_next) * out.x_next;
      record(y_alt, (out.y_next - alt).norm() / std::max(1.0, out.y_next.norm()), 0.0, 1e-10, kk);
    }

    const ResidualPair pair = residual_pair(s);
    const double dy0 = (s.y - s.x0).squaredNorm();
    const double tau_xy = s.tau * (s.x - s.y).squaredNorm();
    {
      const double lhs = (s.A * pair.v + s.y - s.x0).squaredNorm() / s.tau + 2.0 * s.A * pair.eta;
      // relative to the larger of |y - x0|^2 and tau |x - y|^2
      record(cert_id, std::abs(lhs - dy0), 0.0,
             opt.certificate_tol * std::max({dy0, tau_xy, 1e-300}), kk);
    }
    record(eta_nonneg, -pair.eta, 0.0, 1e-12, kk);
    {
      const double dyn = std::sqrt(dy0);
      const double floor_v = 1e-13 * (1.0 + mu) * (1.0 + s.y.norm() + s.x0.norm());
      record(v_bound, pair.v.norm(), (1.0 + std::sqrt(s.tau)) * dyn / s.A,
             1e-9 * (1.0 + std::sqrt(s.tau)) * dyn / s.A + floor_v, kk);
      record(v_bound, pair.eta, dy0 / (2.0 * s.A), 1e-9 * dy0 / (2.0 * s.A) + 1e-12, kk);
    }

    const StationarityResidual u = stationarity_residual(s, problem);
    const double u_floor = 1e-12 * s.L_f * (1.0 + s.y.norm());
    record(u_step, u.norm_u, 2.0 * s.L_f * (s.y - s.x_tilde_prev).norm(), u_floor, kk);
    min_u = std::min(min_u, u.norm_u);
    sum_A += s.A;
    movement_sum += out.A_next * (out.y_next - out.x_tilde).squaredNorm();

    if (has_ref) {
      const double phi_y = eval_phi(problem, s.y).to_double();
      const double gap = phi_y - phi_star;
      const double rate = std::min(4.0 / (kd * kd), 1.0 / geometric);
      record(*gap_rate, gap, 0.5 * Lmu * d0 * d0 * rate, gap_slack, kk);

      const double dist_slack = 1e-9 * (1.0 + d0);
      record(*dist, (s.x - s.x0).norm(), (1.0 / std::sqrt(s.tau) + 1.0) * d0, dist_slack, kk);
      if (mu > 0.0)
        record(*dist, (s.y - s.x0).norm(), 2.0 * (1.0 + 2.0 / (s.A * mu)) * d0, dist_slack, kk);

      const double Lbar = problem.f.L_f_bar;
      const double moved = 0.5 * (config.L_f - Lbar) * movement_sum;
      const double mv_slack = 1e-9 * d0 * d0 + s.A * 1e-13 * (1.0 + std::abs(phi_star));
      record(*movement, moved, d0 * d0 - s.A * gap, mv_slack, kk);
      record(*movement, d0 * d0 - s.A * gap, d0 * d0, mv_slack, kk);

      const double bound = 8.0 * s.L_f * s.L_f * d0 * d0 / ((s.L_f - Lbar) * sum_A);
      record(*min_norm, min_u, std::sqrt(bound), 1e-9 * std::sqrt(bound) + u_floor, kk);

      if (abs_est) {
        const double g = 1.0 + 2.0 / (s.A * mu);
        const double floor_v = 1e-13 * (1.0 + mu) * (1.0 + s.y.norm() + s.x0.norm());
        const double vb = 2.0 / s.A * (2.0 + std::sqrt(mu * s.A)) * g * d0;
        const double eb = 2.0 / s.A * g * g * d0 * d0;
        record(*abs_est, pair.v.norm(), vb, 1e-9 * vb + floor_v, kk);
        record(*abs_est, pair.eta, eb, 1e-9 * eb + 1e-12, kk);
      }
    }

    if (std::find(opt.sample_checkpoints.begin(), opt.sample_checkpoints.end(), kk) !=
        opt.sample_checkpoints.end()) {
      const auto samples =
          certificate_samples(problem, s.y, opt.samples, opt.sample_seed + checkpoint_seed++);
      const double phi_y = eval_phi(problem, s.y).to_double();
      const double tol = 1e-8 * (1.0 + std::abs(phi_y));
      const SampleCheck a = check_eps_subgradient(pair, s, problem, samples);
      const SampleCheck b = check_model_below_phi(s, problem, samples);
      const SampleCheck c = check_model_recursion(s, problem, samples);
      const SampleCheck d = check_model_subgradient(pair, s, problem, samples);
      // x = y_k itself: violation reduces to -eta_k.
      const SampleCheck at_y = check_eps_subgradient(pair, s, problem, std::vector<Vector>{s.y});
      record(subgrad, std::max(a.worst, at_y.worst), 0.0, tol, kk);
      record(model_below, b.worst, 0.0, tol, kk);
      record(model_rec, c.worst, 0.0, tol, kk);
      record(model_sub, d.worst, 0.0, tol, kk);
    }
  }
  return rep;
}

// Seeded suite used by the bound and invariant checks: 5 instances with
// mu = 0 and 5 with mu > 0.
inline std::vector<InstanceSpec> standard_suite() {
  auto spec = [](InstanceKind kind, std::uint64_t seed, Eigen::Index m, Eigen::Index n,
                 double reg, double ridge) {
    InstanceSpec s;
    s.kind = kind;
    s.seed = seed;
    s.m = m;
    s.n = n;
    s.params = InstanceParams{reg, ridge};
    return s;
  };
  return {
      spec(InstanceKind::lasso, 1, 60, 120, 0.1, 0.0),
      spec(InstanceKind::lasso, 2, 60, 120, 0.05, 0.0),
      spec(InstanceKind::lasso, 3, 80, 60, 0.1, 0.0),
      spec(InstanceKind::lasso, 4, 40, 100, 0.2, 0.0),
      spec(InstanceKind::box_qp, 5, 30, 50, 0.0, 0.0),
      spec(InstanceKind::elastic_net, 6, 60, 120, 0.1, 0.5),
      spec(InstanceKind::elastic_net, 7, 60, 120, 0.1, 1.0),
      spec(InstanceKind::elastic_net, 8, 50, 80, 0.05, 2.0),
      spec(InstanceKind::box_qp, 9, 40, 60, 0.0, 0.5),
      spec(InstanceKind::logistic_l2, 10, 60, 40, 0.5, 0.0),
  };
}

struct BoundTolerances {
  double eps_bar = 1e-6;
  double rho = 1e-5;
  double sigma_tilde = 0.1;
  double sigma = 0.1;
  double eps = 1e-4;
  double eta_tol = 1e-6;
};

inline std::vector<Criterion> criteria_for(const BoundTolerances& t) {
  return {FunctionGap{t.eps_bar}, Stationarity{t.rho}, Relative{t.sigma_tilde},
          AlternateRelative{t.sigma}, Absolute{t.eps, t.eta_tol}};
}

// Predicted iteration count for a criterion on a problem with known optimum.
inline bounds::BoundReport predict(const Criterion& criterion, const CompositeProblem& problem,
                                   const SolverConfig& config, double d0) {
  const double mu = config.mu_f + config.mu_h;
  struct Visitor {
    double d0, L_f, L_f_bar, mu_f, mu;
    bounds::BoundReport operator()(const FunctionGap& c) const {
      return bounds::bound_function_gap(d0, c.eps_bar, L_f, mu_f, mu);
    }
    bounds::BoundReport operator()(const Stationarity& c) const {
      return bounds::bound_stationarity(d0, c.rho, L_f, L_f_bar, mu_f, mu);
    }
    bounds::BoundReport operator()(const Relative& c) const {
      return bounds::bound_relative(mu, c.sigma_tilde, L_f, mu_f);
    }
    bounds::BoundReport operator()(const AlternateRelative& c) const {
      return bounds::bound_alternate_relative(mu, c.sigma, L_f, mu_f);
    }
    bounds::BoundReport operator()(const Absolute& c) const {
      return bounds::bound_absolute(d0, c.eps, c.eta_tol, L_f, mu_f, mu);
    }
  };
  return std::visit(Visitor{d0, config.L_f, problem.f.L_f_bar, config.mu_f, mu}, criterion);
}

struct BoundObservation {
  std::string instance;
  std::string criterion;
  std::uint64_t predicted_k = 0;
  std::uint64_t observed_k = 0;
  bool converged = false;
  bool applicable = true;  // false: bound undefined (absolute with mu = 0)
};

inline constexpr std::uint64_t kBoundRunCap = 5'000'000;

// For each suite instance and criterion: the first iteration k* at which the
// criterion holds, against the predicted count.
inline std::vector<BoundObservation> observe_bounds(const std::vector<Instance>& suite,
                                                    const BoundTolerances& tol = {}) {
  std::vector<BoundObservation> out;
  for (const auto& inst : suite) {
    const auto& problem = inst.problem;
    const Vector x0 = Vector::Zero(problem.dimension);
    const double d0 = (x0 - problem.reference_optimum->x_star).norm();
    for (const auto& criterion : criteria_for(tol)) {
      BoundObservation ob;
      ob.instance = std::string(to_string(inst.spec.kind)) + "#" + std::to_string(inst.spec.seed);
      ob.criterion = criterion_name(criterion);
      SolverConfig config = default_config(problem);
      config.criterion = criterion;
      bounds::BoundReport report;
      try {
        report = predict(criterion, problem, config, d0);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::unsupported) throw;
        ob.applicable = false;
        out.push_back(ob);
        continue;
      }
      ob.predicted_k = report.predicted_k;
      config.max_iter = std::min(report.predicted_k, kBoundRunCap);
      config.trace_every = std::numeric_limits<std::uint64_t>::max();
      const RunResult r = run(problem, config, x0);
      ob.converged = r.reason == StopReason::converged;
      ob.observed_k = r.state.k;
      out.push_back(ob);
    }
  }
  return out;
}

inline VerificationReport check_bounds(const std::vector<Instance>& suite,
                                       const BoundTolerances& tol = {}) {
  VerificationReport rep;
  for (const auto& ob : observe_bounds(suite, tol)) {
    if (!ob.applicable) continue;
    auto& c = rep.add("predictor_" + ob.criterion + "@" + ob.instance);
    const double observed = ob.converged ? static_cast<double>(ob.observed_k)
                                         : std::numeric_limits<double>::infinity();
    record(c, observed, static_cast<double>(ob.predicted_k), 0.0, ob.observed_k);
  }
  return rep;
}

inline VerificationReport check_equivalence(const CompositeProblem& problem, const Vector& x0,
                                            double L_f, std::uint64_t iterations, double tol) {
  const classic::EquivalenceReport eq = classic::equivalence_check(problem, x0, L_f, iterations);
  VerificationReport rep;
  record(rep.add("sfista_vs_t_form"), eq.max_deviation_t, 0.0, tol, iterations);
  record(rep.add("sfista_vs_alpha_form"), eq.max_deviation_alpha, 0.0, tol, iterations);
  record(rep.add("t_recovered_from_A_and_a"), eq.max_t_recovery_error, 0.0, 1e-10, iterations);
  record(rep.add("t_relation_residual"), eq.max_t_residual, 0.0, 1e-12, iterations);
  record(rep.add("alpha_times_t"), eq.max_alpha_t_error, 0.0, 1e-12, iterations);
  record(rep.add("y_alternate_expression"), eq.max_y_alternate_error, 0.0, 1e-10, iterations);
  return rep;
}

}  // namespace sfista::verify
