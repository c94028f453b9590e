#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "sfista/problem.hpp"

namespace sfista {

struct ReferenceOptions {
  double tolerance = 1e-14;           // fixed-point residual, relative to max(1, |x|)
  std::uint64_t max_iterations = 1'000'000;
};

struct ReferenceSolution {
  double phi_star = 0.0;
  Vector x_star;
  std::uint64_t iterations = 0;
  double residual = 0.0;

  // d0 = |x0 - x*|.
  double d0_from(const Vector& x0) const { return (x0 - x_star).norm(); }
};

// Plain proximal gradient with step 1/L_f_bar, run to a fixed point.
inline ReferenceSolution reference_solve(const CompositeProblem& problem, const Vector& start,
                                         const ReferenceOptions& options = {}) {
  require_dimension(problem, start, "reference start");
  if (!(problem.f.L_f_bar > 0.0))
    raise(ErrorKind::invalid_argument, "reference_solve needs L_f_bar > 0");
  const double step = 1.0 / problem.f.L_f_bar;

  ReferenceSolution out;
  Vector x = problem.h.prox(start, step);
  for (std::uint64_t it = 0; it < options.max_iterations; ++it) {
    Vector next = problem.h.prox(x - step * problem.f.grad(x), step);
    const double residual = (next - x).norm();
    x.swap(next);
    out.iterations = it + 1;
    out.residual = residual;
    if (residual <= options.tolerance * std::max(1.0, x.norm())) {
      out.x_star = x;
      out.phi_star = eval_phi(problem, x).to_double();
      return out;
    }
  }
  raise(ErrorKind::numeric_failure,
        "reference_solve: fixed-point residual " + std::to_string(out.residual) +
            " after " + std::to_string(out.iterations) + " iterations");
}

// Fixed-point residual |x - prox(x - t grad f(x), t)| for step t = 1/L_f_bar.
inline double fixed_point_residual(const CompositeProblem& problem, const Vector& x) {
  const double step = 1.0 / problem.f.L_f_bar;
  return (x - problem.h.prox(x - step * problem.f.grad(x), step)).norm();
}

}  // namespace sfista
