#pragma once

#include <optional>

#include "sfista/certificates.hpp"
#include "sfista/criteria.hpp"

namespace sfista {

// Certificates at the current iterate. u costs one extra gradient and is optional.
struct CertificateBundle {
  std::optional<StationarityResidual> stationarity;
  ResidualPair pair;
  double norm_v = 0.0;
};

inline CertificateBundle compute_certificates(const IterateState& s, const CompositeProblem& problem,
                                              bool with_stationarity = true) {
  CertificateBundle b;
  if (with_stationarity) b.stationarity = stationarity_residual(s, problem);
  b.pair = residual_pair(s);
  b.norm_v = b.pair.v.norm();
  return b;
}

inline bool check(const Criterion& criterion, const IterateState& s,
                  const CompositeProblem& problem) {
  struct Visitor {
    const IterateState& s;
    const CompositeProblem& problem;

    bool operator()(const FunctionGap& c) const {
      if (!problem.reference_optimum)
        raise(ErrorKind::invalid_config, "function_gap needs a reference optimum");
      return eval_phi(problem, s.y).to_double() - problem.reference_optimum->phi_star <= c.eps_bar;
    }
    bool operator()(const Stationarity& c) const {
      return stationarity_residual(s, problem).norm_u <= c.rho;
    }
    bool operator()(const Relative& c) const {
      const ResidualPair p = residual_pair(s);
      return p.v.squaredNorm() + 2.0 * p.eta <= c.sigma_tilde * (s.y - s.x0).squaredNorm();
    }
    bool operator()(const AlternateRelative& c) const {
      // y_0 = x_0.
      const ResidualPair p = residual_pair(s);
      return p.v.squaredNorm() + 2.0 * p.eta <= c.sigma * (p.v + s.y - s.x0).squaredNorm();
    }
    bool operator()(const Absolute& c) const {
      const ResidualPair p = residual_pair(s);
      return p.v.norm() <= c.eps && p.eta <= c.eta_tol;
    }
  };
  return std::visit(Visitor{s, problem}, criterion);
}

}  // namespace sfista
