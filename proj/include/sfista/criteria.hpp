#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <variant>

#include "sfista/errors.hpp"

namespace sfista {

// phi(y) - phi* <= eps_bar. Test-only: needs a known optimum.
struct FunctionGap {
  double eps_bar = 1e-6;
};

// |u| <= rho with u in grad f(y) + dh(y).
struct Stationarity {
  double rho = 1e-6;
};

// |v|^2 + 2 eta <= sigma_tilde |y - x0|^2.
struct Relative {
  double sigma_tilde = 0.1;
};

// |v|^2 + 2 eta <= sigma |v + y - y0|^2.
struct AlternateRelative {
  double sigma = 0.1;
};

// |v| <= eps and eta <= eta_tol.
struct Absolute {
  double eps = 1e-6;
  double eta_tol = 1e-6;
};

using Criterion = std::variant<Stationarity, Relative, AlternateRelative, Absolute, FunctionGap>;

inline std::string criterion_name(const Criterion& c) {
  struct Visitor {
    std::string operator()(const FunctionGap&) const { return "function_gap"; }
    std::string operator()(const Stationarity&) const { return "stationarity"; }
    std::string operator()(const Relative&) const { return "relative"; }
    std::string operator()(const AlternateRelative&) const { return "alternate_relative"; }
    std::string operator()(const Absolute&) const { return "absolute"; }
  };
  return std::visit(Visitor{}, c);
}

inline void validate_criterion(const Criterion& c) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  const bool ok = std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, FunctionGap>) return positive(k.eps_bar);
        if constexpr (std::is_same_v<T, Stationarity>) return positive(k.rho);
        if constexpr (std::is_same_v<T, Relative>) return positive(k.sigma_tilde);
        if constexpr (std::is_same_v<T, AlternateRelative>) return positive(k.sigma);
        if constexpr (std::is_same_v<T, Absolute>) return positive(k.eps) && positive(k.eta_tol);
      },
      c);
  if (!ok) raise(ErrorKind::invalid_config, criterion_name(c) + ": tolerances must be > 0");
}

}  // namespace sfista
