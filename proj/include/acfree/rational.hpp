#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace acfree {

// Exact arithmetic used throughout the library.  Everything except the
// density verifier works with unbounded rationals; no floating point leaks
// into the combinatorial layers.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a coefficientwise fixed-point solver fails to stabilize within
/// its iteration budget.  This signals an implementation bug, never a data
/// condition, hence logic_error.
class solver_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q" or "p" with optional sign.  Throws std::invalid_argument on
/// malformed input or zero denominator.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + text + "'"); };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) bad();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

/// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  const Integer sn  = boost::multiprecision::sqrt(num);
  const Integer sd  = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

inline Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

inline Integer catalan_number(int n) {
  if (n < 0) throw std::invalid_argument("catalan_number: negative index");
  return binomial(2 * n, n) / (n + 1);
}

}  // namespace acfree
