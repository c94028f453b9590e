#pragma once

#include <limits>
#include <ostream>

namespace sfista {

// Real number or +infinity. Values of indicator functions and other
// extended-valued convex functions live here; +inf absorbs under addition.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value(v) {}  // NOLINT: implicit on purpose

  static constexpr ExtendedReal plus_infinity() {
    ExtendedReal r;
    r.infinite = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite; }

  // The real value, or IEEE +inf when infinite.
  constexpr double to_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : value;
  }

  friend constexpr ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite || b.infinite) return plus_infinity();
    return ExtendedReal(a.value + b.value);
  }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedReal r) {
    if (r.infinite) return os << "+inf";
    return os << r.value;
  }
};

}  // namespace sfista
