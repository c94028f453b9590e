// Solve a small seeded LASSO problem and print the certificates at the end.

#include <iomanip>
#include <iostream>

#include "sfista/sfista.hpp"

int main() {
  using namespace sfista;

  const Instance inst = make_instance(InstanceKind::lasso, 42, 100, 200, InstanceParams{0.1, 0.0});
  const CompositeProblem& problem = inst.problem;

  SolverConfig config = default_config(problem);
  config.criterion = Stationarity{1e-6};
  config.trace_every = 100;

  const RunResult r = run(problem, config, Vector::Zero(problem.dimension));
  const CertificateBundle cert = compute_certificates(r.state, problem);

  std::cout << std::setprecision(6);
  std::cout << "stop: " << to_string(r.reason) << " after " << r.state.k << " iterations\n";
  std::cout << "phi(y) - phi* = "
            << eval_phi(problem, r.state.y).to_double() - problem.reference_optimum->phi_star
            << "\n";
  std::cout << "|u| = " << cert.stationarity->norm_u << ", |v| = " << cert.norm_v
            << ", eta = " << cert.pair.eta << "\n";

  std::cout << "\n   k            A      phi(y)\n";
  for (const auto& t : r.trace)
    std::cout << std::setw(4) << t.k << std::setw(13) << t.A << std::setw(12) << t.phi_y << "\n";
}
