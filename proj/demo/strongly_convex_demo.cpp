// Elastic net with mu = 1: compare the observed iteration count with the predicted bound
// for each stopping criterion.

#include <iostream>

#include "sfista/sfista.hpp"

int main() {
  using namespace sfista;

  const Instance inst =
      make_instance(InstanceKind::elastic_net, 7, 60, 120, InstanceParams{0.1, 1.0});
  const CompositeProblem& problem = inst.problem;
  const Vector x0 = Vector::Zero(problem.dimension);
  const double d0 = (x0 - problem.reference_optimum->x_star).norm();

  for (const Criterion& c : verify::criteria_for({})) {
    SolverConfig config = default_config(problem);
    config.criterion = c;
    config.trace_every = 1'000'000;
    const auto bound = verify::predict(c, problem, config, d0);
    const RunResult r = run(problem, config, x0);
    std::cout << criterion_name(c) << ": stopped at k = " << r.state.k
              << ", predicted k <= " << bound.predicted_k << " (" << bounds::to_string(bound.branch)
              << " branch)\n";
  }
}
