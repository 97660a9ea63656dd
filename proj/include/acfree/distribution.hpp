#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acfree/cumulants.hpp"
#include "acfree/rational.hpp"

namespace acfree {

/// An atom location: either a rational q, or a surd q*sqrt(r) with rational
/// q and non-negative rational radicand r.
struct AtomLocation {
  Rational scale;     // q
  Rational radicand;  // r; the location is q*sqrt(r), with r = 1 for plain rationals

  static AtomLocation rational(Rational value) { return AtomLocation{std::move(value), 1}; }
  static AtomLocation surd(Rational scale, Rational radicand) {
    if (radicand < 0) throw std::invalid_argument("radicand must be non-negative");
    return AtomLocation{std::move(scale), std::move(radicand)};
  }

  bool is_rational() const {
    if (scale == 0 || radicand == 0) return true;
    return rational_sqrt(radicand).has_value();
  }

  /// x^k split into rational and sqrt(r)-parts: x^k = u + v*sqrt(r).
  std::pair<Rational, Rational> power(int k) const {
    Rational u = 1, v = 0;  // running value = u + v*sqrt(r)
    for (int i = 0; i < k; ++i) {
      // multiply by q*sqrt(r): (u + v sqrt(r)) q sqrt(r) = q v r + q u sqrt(r)
      Rational nu = scale * v * radicand;
      Rational nv = scale * u;
      u = std::move(nu);
      v = std::move(nv);
    }
    return {std::move(u), std::move(v)};
  }

  double to_double() const { return to_double_rational(scale) * std::sqrt(to_double_rational(radicand)); }

 private:
  static double to_double_rational(const Rational& r) { return acfree::to_double(r); }
};

struct Atom {
  AtomLocation location;
  Rational weight;
};

/// A finitely supported probability measure with exact atom data.  Moments
/// are computed symbolically; the irrational parts must cancel so that every
/// moment is rational.
struct AtomicDistribution {
  std::vector<Atom> atoms;

  void validate() const {
    if (atoms.empty()) throw std::invalid_argument("distribution needs at least one atom");
    Rational total = 0;
    for (const Atom& atom : atoms) {
      if (atom.weight <= 0) throw std::invalid_argument("atom weights must be positive");
      total += atom.weight;
    }
    if (total != 1) throw std::invalid_argument("atom weights must sum to 1");
  }

  MomentSequence moments(int order) const {
    validate();
    MomentSequence m;
    for (int k = 1; k <= order; ++k) {
      Rational rational_part = 0;
      // irrational parts grouped by radicand
      std::vector<std::pair<Rational, Rational>> surd_parts;  // (radicand, coefficient)
      for (const Atom& atom : atoms) {
        auto [u, v] = atom.location.power(k);
        rational_part += atom.weight * u;
        if (v == 0 || atom.location.radicand == 0) continue;
        if (const auto root = rational_sqrt(atom.location.radicand)) {
          rational_part += atom.weight * v * *root;
          continue;
        }
        bool merged = false;
        for (auto& [radicand, coefficient] : surd_parts)
          if (radicand == atom.location.radicand) {
            coefficient += atom.weight * v;
            merged = true;
            break;
          }
        if (!merged) surd_parts.emplace_back(atom.location.radicand, atom.weight * v);
      }
      for (const auto& [radicand, coefficient] : surd_parts)
        if (coefficient != 0)
          throw std::invalid_argument("moment " + std::to_string(k) + " is irrational");
      m.values.push_back(std::move(rational_part));
    }
    return m;
  }

  CumulantSequence boolean_cumulants(int order) const { return moments_to_boolean(moments(order)); }
};

namespace detail {

inline std::string strip_spaces(const std::string& text) {
  std::string out;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

/// location := rational | [rational '*'] 'sqrt(' rational ')', with an
/// optional leading '-' on the surd form.
inline AtomLocation parse_location(const std::string& text) {
  const auto sqrt_at = text.find("sqrt(");
  if (sqrt_at == std::string::npos) return AtomLocation::rational(parse_rational(text));
  if (text.back() != ')') throw std::invalid_argument("malformed surd: '" + text + "'");
  const std::string inner = text.substr(sqrt_at + 5, text.size() - sqrt_at - 6);
  std::string prefix = text.substr(0, sqrt_at);
  Rational scale = 1;
  if (!prefix.empty()) {
    if (prefix == "-") {
      scale = -1;
    } else if (prefix.back() == '*') {
      scale = parse_rational(prefix.substr(0, prefix.size() - 1));
    } else {
      throw std::invalid_argument("malformed surd: '" + text + "'");
    }
  }
  const Rational radicand = parse_rational(inner);
  if (radicand < 0) throw std::invalid_argument("radicand must be non-negative");
  return AtomLocation::surd(scale, radicand);
}

}  // namespace detail

/// Parses "loc:weight,loc:weight,..." where loc is a rational or a
/// q*sqrt(r) surd, e.g. "0:1/2,2:1/2" or "-sqrt(2):1/4,0:1/2,sqrt(2):1/4".
inline AtomicDistribution parse_atoms(const std::string& text) {
  const std::string s = detail::strip_spaces(text);
  AtomicDistribution distribution;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string item = s.substr(pos, comma - pos);
    const auto colon = item.rfind(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("atom needs the form location:weight, got '" + item + "'");
    distribution.atoms.push_back(Atom{detail::parse_location(item.substr(0, colon)),
                                      parse_rational(item.substr(colon + 1))});
    pos = comma + 1;
  }
  distribution.validate();
  return distribution;
}

}  // namespace acfree
