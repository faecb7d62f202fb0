#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <type_traits>

namespace tpgrass {

// Exact scalar for every certification claim. Arbitrary precision, no rounding,
// so positivity and vanishing tests are tolerance-free.
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
inline constexpr bool is_exact_scalar_v = std::is_same_v<T, Rational>;

// Default relative tolerance for the floating backend. A floating coordinate x of a
// vector with max-magnitude coordinate `scale` counts as zero when |x| <= tol*scale.
inline constexpr double kDefaultTolerance = 1e-9;

inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

inline Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline double abs_of(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline std::string scalar_to_string(const Rational& x) { return x.str(); }
inline std::string scalar_to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace tpgrass
