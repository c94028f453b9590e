#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <locale>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include "sfista/problem.hpp"
#include "sfista/prox.hpp"
#include "sfista/reference.hpp"
#include "sfista/rng.hpp"

namespace sfista {

enum class InstanceKind { lasso, elastic_net, box_qp, logistic_l2 };

inline const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::lasso: return "lasso";
    case InstanceKind::elastic_net: return "elastic_net";
    case InstanceKind::box_qp: return "box_qp";
    case InstanceKind::logistic_l2: return "logistic_l2";
  }
  return "unknown";
}

inline InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "lasso") return InstanceKind::lasso;
  if (name == "elastic_net" || name == "elastic-net") return InstanceKind::elastic_net;
  if (name == "box_qp" || name == "box-qp") return InstanceKind::box_qp;
  if (name == "logistic_l2" || name == "logistic-l2") return InstanceKind::logistic_l2;
  raise(ErrorKind::invalid_argument, "unknown problem kind '" + name + "'");
}

// reg: weight of the nonsmooth/prox term (l1 weight for lasso and elastic net,
//      (reg/2)|x|^2 for logistic_l2, unused by box_qp).
// ridge: (ridge/2)|x|^2 added to the smooth part.
struct InstanceParams {
  double reg = 0.1;
  double ridge = 0.0;
};

struct InstanceSpec {
  InstanceKind kind = InstanceKind::lasso;
  std::uint64_t seed = 42;
  Eigen::Index m = 100;
  Eigen::Index n = 200;
  InstanceParams params;
  // Filled in by generation.
  double L_f_bar = 0.0;
  double mu_f_bar = 0.0;
  double mu_h_bar = 0.0;
};

struct Instance {
  InstanceSpec spec;
  CompositeProblem problem;
};

inline constexpr double kLipschitzInflation = 1.0 + 1e-9;

struct PowerIterationOptions {
  double rel_tolerance = 1e-10;
  std::uint64_t max_iterations = 100'000;
};

// Largest eigenvalue of a symmetric positive semidefinite operator.
//
// Stops once the estimated remaining error of the Rayleigh quotient is below
// rel_tolerance. The remaining error is extrapolated from the ratio r of two
// successive changes as change * r / (1 - r).
template <class MatVec>
double power_iteration(const MatVec& apply, Eigen::Index n, std::uint64_t seed,
                       const PowerIterationOptions& options = {}) {
  if (n < 1) raise(ErrorKind::invalid_argument, "power_iteration: empty operator");
  Xoshiro256 rng(seed ^ 0x5eed5eed5eed5eedULL);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  v.normalize();

  constexpr double kNoiseFloor = 8.0 * std::numeric_limits<double>::epsilon();
  double rho = 0.0;
  double prev_change = std::numeric_limits<double>::infinity();
  for (std::uint64_t it = 0; it < options.max_iterations; ++it) {
    Vector w = apply(v);
    const double next_rho = v.dot(w);
    const double w_norm = w.norm();
    if (w_norm == 0.0) return 0.0;  // zero operator
    const double change = std::abs(next_rho - rho);
    rho = next_rho;
    v = w / w_norm;
    if (it == 0) continue;

    if (change <= kNoiseFloor * rho) return rho;
    const double ratio = change / prev_change;
    if (ratio < 1.0) {
      const double remaining = change * std::max(1.0, ratio / (1.0 - ratio));
      if (remaining <= options.rel_tolerance * rho) return rho;
    }
    prev_change = change;
  }
  raise(ErrorKind::numeric_failure, "power_iteration did not converge");
}

namespace detail {

inline Matrix gaussian_matrix(Xoshiro256& rng, Eigen::Index rows, Eigen::Index cols,
                              double scale) {
  Matrix out(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = scale * rng.normal();
  return out;
}

inline Vector gaussian_vector(Xoshiro256& rng, Eigen::Index n, double scale) {
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = scale * rng.normal();
  return out;
}

struct LeastSquaresData {
  Matrix A;
  Vector b;
  double ridge = 0.0;
};

inline SmoothOracle least_squares(std::shared_ptr<const LeastSquaresData> d, double mu_f_bar,
                                  double L_f_bar) {
  return make_smooth_oracle(
      [d](const Vector& x) {
        return 0.5 * (d->A * x - d->b).squaredNorm() + 0.5 * d->ridge * x.squaredNorm();
      },
      [d](const Vector& x) -> Vector {
        return d->A.transpose() * (d->A * x - d->b) + d->ridge * x;
      },
      mu_f_bar, L_f_bar);
}

struct LogisticData {
  Matrix A;
  Vector labels;  // +-1
  double ridge = 0.0;
};

// log(1 + exp(-z)) without overflow.
inline double softplus_neg(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

inline SmoothOracle logistic(std::shared_ptr<const LogisticData> d, double mu_f_bar,
                             double L_f_bar) {
  return make_smooth_oracle(
      [d](const Vector& x) {
        const Vector margins = d->labels.cwiseProduct(d->A * x);
        double total = 0.0;
        for (Eigen::Index i = 0; i < margins.size(); ++i) total += softplus_neg(margins[i]);
        return total + 0.5 * d->ridge * x.squaredNorm();
      },
      [d](const Vector& x) -> Vector {
        const Vector margins = d->labels.cwiseProduct(d->A * x);
        Vector weights(margins.size());
        for (Eigen::Index i = 0; i < margins.size(); ++i) {
          // d/dz log(1+exp(-z)) = -1/(1+exp(z))
          const double z = margins[i];
          const double s = z > 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
          weights[i] = -d->labels[i] * s;
        }
        return d->A.transpose() * weights + d->ridge * x;
      },
      mu_f_bar, L_f_bar);
}

inline void validate(const InstanceSpec& spec) {
  if (spec.m < 1 || spec.n < 1) raise(ErrorKind::invalid_argument, "m and n must be >= 1");
  const auto& p = spec.params;
  if (!(p.reg >= 0.0) || !(p.ridge >= 0.0) || !std::isfinite(p.reg) || !std::isfinite(p.ridge))
    raise(ErrorKind::invalid_argument, "reg and ridge must be finite and >= 0");
  switch (spec.kind) {
    case InstanceKind::lasso:
      if (p.ridge != 0.0) raise(ErrorKind::invalid_argument, "lasso takes no ridge term; use elastic_net");
      break;
    case InstanceKind::elastic_net:
      if (!(p.ridge > 0.0)) raise(ErrorKind::invalid_argument, "elastic_net needs ridge > 0");
      break;
    case InstanceKind::box_qp:
      break;
    case InstanceKind::logistic_l2:
      if (!(p.reg + p.ridge > 0.0))
        raise(ErrorKind::invalid_argument, "logistic_l2 needs reg + ridge > 0 to have a minimizer");
      break;
  }
}

}  // namespace detail

// Box-constrained QP  min 1/2 x'Qx - c'x  s.t.  lo <= x <= hi  from explicit data.
// L_f_bar comes from power iteration on Q; mu_f_bar is whatever the caller knows.
inline CompositeProblem make_box_qp(Matrix Q, Vector c, Vector lo, Vector hi,
                                    double mu_f_bar = 0.0, std::uint64_t seed = 0) {
  const Eigen::Index n = Q.rows();
  if (Q.cols() != n || c.size() != n || lo.size() != n || hi.size() != n)
    raise(ErrorKind::invalid_argument, "make_box_qp: inconsistent dimensions");
  auto data = std::make_shared<const std::pair<Matrix, Vector>>(std::move(Q), std::move(c));
  const double top = power_iteration([&](const Vector& v) -> Vector { return data->first * v; },
                                     n, seed);
  CompositeProblem problem;
  problem.dimension = n;
  problem.f = make_smooth_oracle(
      [data](const Vector& x) { return 0.5 * x.dot(data->first * x) - data->second.dot(x); },
      [data](const Vector& x) -> Vector { return data->first * x - data->second; }, mu_f_bar,
      top * kLipschitzInflation);
  problem.h = prox::box_indicator(std::move(lo), std::move(hi));
  return problem;
}

// Seeded benchmark instance. Identical (kind, seed, m, n, params) give
// bit-identical data.
inline Instance make_instance(InstanceSpec spec, bool with_reference = true) {
  detail::validate(spec);
  Xoshiro256 rng(spec.seed);
  const auto m = spec.m;
  const auto n = spec.n;
  const auto& p = spec.params;
  const double row_scale = 1.0 / std::sqrt(static_cast<double>(m));

  Instance out;
  out.problem.dimension = n;

  switch (spec.kind) {
    case InstanceKind::lasso:
    case InstanceKind::elastic_net: {
      auto d = std::make_shared<detail::LeastSquaresData>();
      d->A = detail::gaussian_matrix(rng, m, n, row_scale);
      Vector x_true = Vector::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double g = rng.normal();
        if (u < 0.1) x_true[i] = g;
      }
      d->b = d->A * x_true + detail::gaussian_vector(rng, m, 0.01);
      d->ridge = p.ridge;
      const Matrix& A = d->A;
      const double ridge = p.ridge;
      spec.L_f_bar = kLipschitzInflation *
                     power_iteration(
                         [&](const Vector& v) -> Vector {
                           return A.transpose() * (A * v) + ridge * v;
                         },
                         n, spec.seed);
      spec.mu_f_bar = p.ridge;
      spec.mu_h_bar = 0.0;
      out.problem.f = detail::least_squares(d, spec.mu_f_bar, spec.L_f_bar);
      out.problem.h = prox::l1_norm(p.reg);
      break;
    }
    case InstanceKind::box_qp: {
      const Matrix M = detail::gaussian_matrix(rng, m, n, row_scale);
      Matrix Q = M.transpose() * M;
      Q.diagonal().array() += p.ridge;
      Vector c = detail::gaussian_vector(rng, n, 2.0);
      CompositeProblem qp = make_box_qp(std::move(Q), std::move(c), Vector::Constant(n, -1.0),
                                        Vector::Constant(n, 1.0), p.ridge, spec.seed);
      spec.L_f_bar = qp.f.L_f_bar;
      spec.mu_f_bar = p.ridge;
      spec.mu_h_bar = 0.0;
      out.problem = std::move(qp);
      break;
    }
    case InstanceKind::logistic_l2: {
      auto d = std::make_shared<detail::LogisticData>();
      d->A = detail::gaussian_matrix(rng, m, n, row_scale);
      const Vector w_true = detail::gaussian_vector(rng, n, 1.0);
      const Vector noise = detail::gaussian_vector(rng, m, 0.1);
      const Vector scores = d->A * w_true + noise;
      d->labels = scores.unaryExpr([](double s) { return s >= 0.0 ? 1.0 : -1.0; });
      d->ridge = p.ridge;
      const Matrix& A = d->A;
      // Hessian of the logistic loss is A' diag(s(1-s)) A <= A'A / 4.
      const double top = power_iteration(
          [&](const Vector& v) -> Vector { return A.transpose() * (A * v); }, n, spec.seed);
      spec.L_f_bar = kLipschitzInflation * (0.25 * top + p.ridge);
      spec.mu_f_bar = p.ridge;
      spec.mu_h_bar = p.reg;
      out.problem.f = detail::logistic(d, spec.mu_f_bar, spec.L_f_bar);
      out.problem.h = prox::half_squared_norm(p.reg);
      break;
    }
  }

  out.spec = spec;
  if (with_reference) {
    const ReferenceSolution ref = reference_solve(out.problem, Vector::Zero(n));
    out.problem.reference_optimum = ReferenceOptimum{ref.phi_star, ref.x_star};
  }
  return out;
}

inline Instance make_instance(InstanceKind kind, std::uint64_t seed, Eigen::Index m,
                              Eigen::Index n, InstanceParams params, bool with_reference = true) {
  InstanceSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  spec.m = m;
  spec.n = n;
  spec.params = params;
  return make_instance(spec, with_reference);
}

// ---------------------------------------------------------------------------
// Instance spec files: one `key = value` pair per line, '#' starts a comment.

inline std::string format_real(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  return os.str();
}

inline void write_instance_spec(std::ostream& os, const InstanceSpec& spec) {
  os << "# composite instance; regenerate with the same kind/seed/shape/params\n";
  os << "prng = " << Xoshiro256::name << "\n";
  os << "kind = " << to_string(spec.kind) << "\n";
  os << "seed = " << spec.seed << "\n";
  os << "m = " << spec.m << "\n";
  os << "n = " << spec.n << "\n";
  os << "reg = " << format_real(spec.params.reg) << "\n";
  os << "ridge = " << format_real(spec.params.ridge) << "\n";
  os << "L_f_bar = " << format_real(spec.L_f_bar) << "\n";
  os << "mu_f_bar = " << format_real(spec.mu_f_bar) << "\n";
  os << "mu_h_bar = " << format_real(spec.mu_h_bar) << "\n";
}

inline std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(ErrorKind::invalid_argument, "line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

inline double parse_real(const std::string& text) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double value = 0.0;
  is >> value;
  if (is.fail() || !(is >> std::ws).eof())
    raise(ErrorKind::invalid_argument, "not a real number: '" + text + "'");
  return value;
}

// Reads a spec file. Generated fields (L_f_bar, ...) are taken as written;
// regenerate with make_instance to recompute them.
inline InstanceSpec read_instance_spec(std::istream& is) {
  const auto kv = parse_key_values(is);
  auto get = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) raise(ErrorKind::invalid_argument, std::string("missing key '") + key + "'");
    return it->second;
  };
  auto get_or = [&](const char* key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_real(it->second);
  };
  InstanceSpec spec;
  spec.kind = parse_instance_kind(get("kind"));
  spec.seed = std::stoull(get("seed"));
  spec.m = std::stol(get("m"));
  spec.n = std::stol(get("n"));
  spec.params.reg = get_or("reg", spec.params.reg);
  spec.params.ridge = get_or("ridge", 0.0);
  spec.L_f_bar = get_or("L_f_bar", 0.0);
  spec.mu_f_bar = get_or("mu_f_bar", 0.0);
  spec.mu_h_bar = get_or("mu_h_bar", 0.0);
  return spec;
}

}  // namespace sfista
