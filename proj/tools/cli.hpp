#pragma once

// Command-line front end. Kept in a header so the tests can drive it in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sfista/sfista.hpp"

namespace sfista::cli {

enum ExitCode : int { kOk = 0, kMaxIter = 1, kInvalid = 2, kVerifyFailed = 3 };

struct InstanceFlags {
  std::string problem = "lasso";
  std::uint64_t seed = 42;
  long m = 100;
  long n = 200;
  double reg = 0.1;
  double ridge = 0.0;
  std::string instance_file;

  void attach(CLI::App* app) {
    app->add_option("--problem", problem, "lasso | elastic_net | box_qp | logistic_l2");
    app->add_option("--seed", seed, "instance seed");
    app->add_option("--m", m, "rows / samples");
    app->add_option("--n", n, "dimension");
    app->add_option("--reg", reg, "weight of h (l1 weight, or l2 weight for logistic_l2)");
    app->add_option("--ridge", ridge, "(ridge/2)|x|^2 added to f");
    app->add_option("--instance", instance_file, "read kind/seed/shape/params from a spec file");
  }

  InstanceSpec spec() const {
    if (!instance_file.empty()) {
      std::ifstream is(instance_file);
      if (!is) raise(ErrorKind::invalid_argument, "cannot open " + instance_file);
      return read_instance_spec(is);
    }
    InstanceSpec s;
    s.kind = parse_instance_kind(problem);
    s.seed = seed;
    s.m = m;
    s.n = n;
    s.params = InstanceParams{reg, ridge};
    return s;
  }
};

struct SolverFlags {
  std::string lf = "auto";
  std::string mu_f = "auto";
  std::string mu_h = "auto";
  std::uint64_t max_iter = 100'000;
  std::uint64_t trace_every = 1;

  void attach(CLI::App* app) {
    app->add_option("--lf", lf, "L_f > L_f_bar, or 'auto' for 1.25 L_f_bar");
    app->add_option("--mu-f", mu_f, "mu_f in [0, mu_f_bar], or 'auto'");
    app->add_option("--mu-h", mu_h, "mu_h in [0, mu_h_bar], or 'auto'");
    app->add_option("--max-iter", max_iter, "iteration cap");
    app->add_option("--trace-every", trace_every, "trace every k-th iteration");
  }

  SolverConfig config(const CompositeProblem& problem) const {
    SolverConfig c = default_config(problem);
    if (lf != "auto") c.L_f = parse_real(lf);
    if (mu_f != "auto") c.mu_f = parse_real(mu_f);
    if (mu_h != "auto") c.mu_h = parse_real(mu_h);
    c.max_iter = max_iter;
    c.trace_every = trace_every;
    return c;
  }
};

struct CriterionFlags {
  std::string name = "stationarity";
  double rho = 1e-6;
  double sigma = 0.1;
  double sigma_tilde = 0.1;
  double eps = 1e-6;
  double eta_tol = 1e-6;
  double eps_bar = 1e-6;

  void attach(CLI::App* app) {
    app->add_option("--criterion", name,
                    "stationarity | relative | alternate_relative | absolute | function_gap");
    app->add_option("--rho", rho, "stationarity tolerance");
    app->add_option("--sigma", sigma, "alternate relative tolerance");
    app->add_option("--sigma-tilde", sigma_tilde, "relative tolerance");
    app->add_option("--eps", eps, "absolute tolerance on |v|");
    app->add_option("--eta-tol", eta_tol, "absolute tolerance on eta");
    app->add_option("--eps-bar", eps_bar, "function gap tolerance");
  }

  Criterion criterion() const {
    if (name == "stationarity") return Stationarity{rho};
    if (name == "relative") return Relative{sigma_tilde};
    if (name == "alternate_relative" || name == "alternate-relative") return AlternateRelative{sigma};
    if (name == "absolute") return Absolute{eps, eta_tol};
    if (name == "function_gap" || name == "function-gap") return FunctionGap{eps_bar};
    raise(ErrorKind::invalid_config, "unknown criterion '" + name + "'");
  }
};

inline void kv(std::ostream& os, const char* key, double value) {
  os << key << " = " << format_real(value) << "\n";
}

inline void write_bound_report(std::ostream& os, const bounds::BoundReport& r) {
  os << "criterion = " << r.criterion << "\n";
  os << "predicted_k = " << r.predicted_k << "\n";
  os << "branch = " << bounds::to_string(r.branch) << "\n";
  os << "log_branch = " << (r.log_branch_disabled ? "disabled" : "enabled") << "\n";
  os << "log_base = " << r.log_base << "\n";
  kv(os, "polynomial_value", r.polynomial_value);
  if (!r.log_branch_disabled) kv(os, "logarithmic_value", r.logarithmic_value);
  if (r.A_bar) kv(os, "A_bar", *r.A_bar);
  if (r.zeta) kv(os, "zeta", *r.zeta);
  if (r.c) kv(os, "c", *r.c);
  if (r.calA) kv(os, "calA", *r.calA);
  if (r.sigma_tilde) kv(os, "sigma_tilde", *r.sigma_tilde);
  if (r.M) kv(os, "M", *r.M);
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_make_instance(const InstanceFlags& inst, const std::string& out_file, Streams io) {
  const Instance instance = make_instance(inst.spec(), false);
  if (out_file.empty()) {
    write_instance_spec(io.out, instance.spec);
  } else {
    std::ofstream os(out_file);
    if (!os) raise(ErrorKind::invalid_argument, "cannot write " + out_file);
    write_instance_spec(os, instance.spec);
    io.out << "wrote = " << out_file << "\n";
  }
  return kOk;
}

inline int cmd_solve(const InstanceFlags& inst, const SolverFlags& solver,
                     const CriterionFlags& crit, const std::string& trace_file, Streams io) {
  const Instance instance = make_instance(inst.spec(), true);
  const auto& problem = instance.problem;
  SolverConfig config = solver.config(problem);
  config.criterion = crit.criterion();
  const RunResult r = run(problem, config, Vector::Zero(problem.dimension));

  if (!trace_file.empty()) {
    std::ofstream os(trace_file);
    if (!os) raise(ErrorKind::invalid_argument, "cannot write " + trace_file);
    write_trace_csv(os, r.trace);
  }

  io.out << "stop_reason = " << to_string(r.reason) << "\n";
  io.out << "k = " << r.state.k << "\n";
  kv(io.out, "L_f", config.L_f);
  kv(io.out, "mu_f", config.mu_f);
  kv(io.out, "mu_h", config.mu_h);
  kv(io.out, "A", r.state.A);
  kv(io.out, "phi_y", eval_phi(problem, r.state.y).to_double());
  if (problem.reference_optimum)
    kv(io.out, "gap", eval_phi(problem, r.state.y).to_double() - problem.reference_optimum->phi_star);
  if (r.state.k >= 1) {
    const CertificateBundle b = compute_certificates(r.state, problem);
    kv(io.out, "norm_u", b.stationarity->norm_u);
    kv(io.out, "norm_v", b.norm_v);
    kv(io.out, "eta_residual", b.pair.eta);
  }
  if (!trace_file.empty()) io.out << "trace = " << trace_file << "\n";
  return r.reason == StopReason::converged ? kOk : kMaxIter;
}

struct PredictFlags {
  std::optional<double> d0;
  std::optional<double> lf_bar;
  std::optional<double> mu;
  bool from_problem = false;
};

inline int cmd_predict(const InstanceFlags& inst, const SolverFlags& solver,
                       const CriterionFlags& crit, const PredictFlags& pf, Streams io) {
  const Criterion criterion = crit.criterion();
  double L_f = 0.0, L_f_bar = 0.0, mu_f = 0.0, mu_h = 0.0, d0 = 0.0;

  if (pf.from_problem) {
    const Instance instance = make_instance(inst.spec(), true);
    const auto& problem = instance.problem;
    const SolverConfig config = solver.config(problem);
    validate_config(config, problem);
    L_f = config.L_f;
    L_f_bar = problem.f.L_f_bar;
    mu_f = config.mu_f;
    mu_h = config.mu_h;
    d0 = problem.reference_optimum->x_star.norm();  // x0 = 0
  } else {
    if (solver.lf == "auto")
      raise(ErrorKind::invalid_config, "--lf is required unless --problem is given");
    L_f = parse_real(solver.lf);
    L_f_bar = pf.lf_bar.value_or(0.0);
    mu_f = solver.mu_f == "auto" ? 0.0 : parse_real(solver.mu_f);
    mu_h = solver.mu_h == "auto" ? 0.0 : parse_real(solver.mu_h);
    if (pf.mu) mu_h = *pf.mu - mu_f;
    d0 = pf.d0.value_or(0.0);
    if (std::holds_alternative<Stationarity>(criterion) && !pf.lf_bar)
      raise(ErrorKind::invalid_config, "stationarity bound needs --lf-bar");
  }
  if (pf.d0) d0 = *pf.d0;
  const double mu = mu_f + mu_h;

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
  const bounds::BoundReport report = std::visit(Visitor{d0, L_f, L_f_bar, mu_f, mu}, criterion);
  kv(io.out, "d0", d0);
  kv(io.out, "L_f", L_f);
  kv(io.out, "mu", mu);
  write_bound_report(io.out, report);
  return kOk;
}

struct VerifyFlags {
  std::uint64_t iters = 2000;
  double tol = 1e-9;
  std::size_t samples = 1000;
};

inline int cmd_verify(const std::string& which, const InstanceFlags& inst,
                      const SolverFlags& solver, const VerifyFlags& vf, Streams io) {
  verify::VerificationReport report;
  if (which == "invariants") {
    const Instance instance = make_instance(inst.spec(), true);
    SolverConfig config = solver.config(instance.problem);
    verify::InvariantOptions opt;
    opt.iterations = vf.iters;
    opt.samples = vf.samples;
    report = verify::check_invariants(instance.problem, config,
                                      Vector::Zero(instance.problem.dimension), opt);
  } else if (which == "equivalence") {
    const Instance instance = make_instance(inst.spec(), false);
    SolverConfig config = solver.config(instance.problem);
    report = verify::check_equivalence(instance.problem, Vector::Zero(instance.problem.dimension),
                                       config.L_f, vf.iters, vf.tol);
  } else if (which == "bounds") {
    std::vector<Instance> suite;
    for (const auto& spec : verify::standard_suite()) suite.push_back(make_instance(spec, true));
    for (const auto& ob : verify::observe_bounds(suite)) {
      if (!ob.applicable) {
        io.out << "skip = " << ob.criterion << "@" << ob.instance << " (bound undefined for mu = 0)\n";
        continue;
      }
      io.out << "observation = " << ob.criterion << "@" << ob.instance
             << " | observed_k = " << ob.observed_k << " | predicted_k = " << ob.predicted_k
             << "\n";
    }
    report = verify::check_bounds(suite);
  } else {
    raise(ErrorKind::invalid_argument, "verify: unknown suite '" + which + "'");
  }
  verify::write_report(io.out, report);
  return report.overall() ? kOk : kVerifyFailed;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"S-FISTA solver, complexity predictor and invariant verifier"};
  app.require_subcommand(1);

  InstanceFlags inst;
  SolverFlags solver;
  CriterionFlags crit;

  auto* make = app.add_subcommand("make-instance", "generate a seeded instance spec file");
  inst.attach(make);
  std::string out_file;
  make->add_option("--out", out_file, "output file (default: standard output)");

  auto* solve = app.add_subcommand("solve", "run S-FISTA on a generated instance");
  inst.attach(solve);
  solver.attach(solve);
  crit.attach(solve);
  std::string trace_file;
  solve->add_option("--trace", trace_file, "write the CSV trace here");

  auto* predict = app.add_subcommand("predict", "evaluate an iteration-complexity bound");
  inst.attach(predict);
  solver.attach(predict);
  crit.attach(predict);
  PredictFlags pf;
  predict->add_option("--d0", pf.d0, "distance from x0 to the solution set");
  predict->add_option("--lf-bar", pf.lf_bar, "upper curvature constant L_f_bar");
  predict->add_option("--mu", pf.mu, "total strong convexity mu = mu_f + mu_h");

  auto* verify_cmd = app.add_subcommand("verify", "check the method's guarantees numerically");
  std::string which;
  verify_cmd->add_option("suite", which, "invariants | equivalence | bounds")->required();
  inst.attach(verify_cmd);
  solver.attach(verify_cmd);
  VerifyFlags vf;
  verify_cmd->add_option("--iters", vf.iters, "iterations");
  verify_cmd->add_option("--tol", vf.tol, "equivalence tolerance");
  verify_cmd->add_option("--samples", vf.samples, "samples per checkpoint");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*make) return cmd_make_instance(inst, out_file, io);
    if (*solve) return cmd_solve(inst, solver, crit, trace_file, io);
    if (*predict) {
      pf.from_problem = predict->count("--problem") > 0 || predict->count("--instance") > 0;
      return cmd_predict(inst, solver, crit, pf, io);
    }
    if (*verify_cmd) return cmd_verify(which, inst, solver, vf, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace sfista::cli
