#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acfree/cumulants.hpp"
#include "acfree/rational.hpp"

namespace acfree {

/// Truncated formal power series with exact rational coefficients,
/// coefficient k attached to z^k for k = 0..order.  Binary operations on
/// series of different orders truncate to the smaller one, so any computation
/// at order N agrees with the same computation at a higher order on the first
/// N coefficients.
class RationalSeries {
 public:
  explicit RationalSeries(int order) : coefficients_(static_cast<size_t>(check_order(order)) + 1) {}

  RationalSeries(int order, std::vector<Rational> coefficients)
      : coefficients_(std::move(coefficients)) {
    check_order(order);
    coefficients_.resize(static_cast<size_t>(order) + 1);
  }

  static RationalSeries zero(int order) { return RationalSeries(order); }

  static RationalSeries constant(int order, const Rational& value) {
    RationalSeries s(order);
    s.coefficients_[0] = value;
    return s;
  }

  static RationalSeries one(int order) { return constant(order, 1); }

  static RationalSeries monomial(int order, int degree, const Rational& value = 1) {
    RationalSeries s(order);
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    if (degree <= order) s.coefficients_[static_cast<size_t>(degree)] = value;
    return s;
  }

  int order() const { return static_cast<int>(coefficients_.size()) - 1; }

  const Rational& coeff(int k) const {
    if (k < 0 || k > order()) throw std::invalid_argument("coefficient index out of range");
    return coefficients_[static_cast<size_t>(k)];
  }

  void set_coeff(int k, Rational value) {
    if (k < 0 || k > order()) throw std::invalid_argument("coefficient index out of range");
    coefficients_[static_cast<size_t>(k)] = std::move(value);
  }

  const std::vector<Rational>& coefficients() const { return coefficients_; }

  bool is_zero() const {
    for (const Rational& c : coefficients_)
      if (c != 0) return false;
    return true;
  }

  /// Degree of the lowest nonzero coefficient; order()+1 for the zero series.
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (coeff(k) != 0) return k;
    return order() + 1;
  }

  RationalSeries truncated(int new_order) const {
    check_order(new_order);
    std::vector<Rational> c(coefficients_.begin(),
                            coefficients_.begin() + std::min<size_t>(coefficients_.size(),
                                                                     static_cast<size_t>(new_order) + 1));
    return RationalSeries(new_order, std::move(c));
  }

  friend RationalSeries operator+(const RationalSeries& f, const RationalSeries& g) {
    const int order = std::min(f.order(), g.order());
    RationalSeries result(order);
    for (int k = 0; k <= order; ++k) result.coefficients_[static_cast<size_t>(k)] = f.coeff(k) + g.coeff(k);
    return result;
  }

  friend RationalSeries operator-(const RationalSeries& f, const RationalSeries& g) {
    const int order = std::min(f.order(), g.order());
    RationalSeries result(order);
    for (int k = 0; k <= order; ++k) result.coefficients_[static_cast<size_t>(k)] = f.coeff(k) - g.coeff(k);
    return result;
  }

  RationalSeries operator-() const {
    RationalSeries result(order());
    for (int k = 0; k <= order(); ++k) result.coefficients_[static_cast<size_t>(k)] = -coeff(k);
    return result;
  }

  friend RationalSeries operator*(const RationalSeries& f, const RationalSeries& g) {
    const int order = std::min(f.order(), g.order());
    RationalSeries result(order);
    for (int i = 0; i <= order && i <= f.order(); ++i) {
      if (f.coeff(i) == 0) continue;
      for (int j = 0; i + j <= order && j <= g.order(); ++j) {
        if (g.coeff(j) == 0) continue;
        result.coefficients_[static_cast<size_t>(i + j)] += f.coeff(i) * g.coeff(j);
      }
    }
    return result;
  }

  friend RationalSeries operator*(const Rational& scalar, const RationalSeries& f) {
    RationalSeries result(f.order());
    for (int k = 0; k <= f.order(); ++k) result.coefficients_[static_cast<size_t>(k)] = scalar * f.coeff(k);
    return result;
  }

  friend RationalSeries operator*(const RationalSeries& f, const Rational& scalar) {
    return scalar * f;
  }

  bool operator==(const RationalSeries& other) const = default;

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    return order;
  }

  std::vector<Rational> coefficients_;
};

/// Multiply by z^k (coefficients shifted up, truncated at the order).
inline RationalSeries shift_up(const RationalSeries& f, int k) {
  if (k < 0) throw std::invalid_argument("shift must be non-negative");
  RationalSeries result(f.order());
  for (int j = 0; j + k <= f.order(); ++j) result.set_coeff(j + k, f.coeff(j));
  return result;
}

/// Divide by z^k; the k lowest coefficients must vanish.  The result keeps
/// the same order, with unknown top coefficients treated as zero, so callers
/// should work at a slack order when they need the tail.
inline RationalSeries shift_down(const RationalSeries& f, int k) {
  if (k < 0) throw std::invalid_argument("shift must be non-negative");
  for (int j = 0; j < k && j <= f.order(); ++j)
    if (f.coeff(j) != 0) throw std::invalid_argument("series is not divisible by z^k");
  RationalSeries result(f.order());
  for (int j = k; j <= f.order(); ++j) result.set_coeff(j - k, f.coeff(j));
  return result;
}

/// Multiplicative inverse of a series with nonzero constant term.
inline RationalSeries reciprocal(const RationalSeries& u) {
  if (u.coeff(0) == 0) throw std::invalid_argument("reciprocal needs a nonzero constant term");
  RationalSeries result(u.order());
  const Rational lead = 1 / u.coeff(0);
  result.set_coeff(0, lead);
  for (int k = 1; k <= u.order(); ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += u.coeff(j) * result.coeff(k - j);
    result.set_coeff(k, -lead * acc);
  }
  return result;
}

/// (1 - f)^{-1} as a truncated geometric sum; f must have zero constant term.
inline RationalSeries geometric_inverse(const RationalSeries& f) {
  if (f.coeff(0) != 0)
    throw std::invalid_argument("geometric_inverse needs a zero constant term");
  return reciprocal(RationalSeries::one(f.order()) - f);
}

/// Square root with sqrt(f)(0) the non-negative rational root of f(0).
/// Throws std::domain_error when f(0) is not a rational square.
inline RationalSeries sqrt(const RationalSeries& f) {
  const auto root = rational_sqrt(f.coeff(0));
  if (!root) throw std::domain_error("constant term is not a rational square");
  if (*root == 0)
    throw std::domain_error("square root at a zero constant term is not a power series here");
  RationalSeries result(f.order());
  result.set_coeff(0, *root);
  const Rational half_inv = Rational(1, 2) / *root;
  for (int k = 1; k <= f.order(); ++k) {
    Rational acc = 0;
    for (int j = 1; j < k; ++j) acc += result.coeff(j) * result.coeff(k - j);
    result.set_coeff(k, half_inv * (f.coeff(k) - acc));
  }
  return result;
}

/// Composition f(g) for g with zero constant term (Horner form).
inline RationalSeries compose(const RationalSeries& f, const RationalSeries& g) {
  if (g.coeff(0) != 0) throw std::invalid_argument("composition needs g(0) = 0");
  const int order = std::min(f.order(), g.order());
  RationalSeries result = RationalSeries::constant(order, f.coeff(f.order()));
  for (int k = f.order() - 1; k >= 0; --k)
    result = result * g.truncated(order) + RationalSeries::constant(order, f.coeff(k));
  return result;
}

inline bool is_even_series(const RationalSeries& f) {
  for (int k = 1; k <= f.order(); k += 2)
    if (f.coeff(k) != 0) return false;
  return true;
}

/// Substitute z^2 -> z in an even series: coefficient k of the result is
/// coefficient 2k of the input.
inline RationalSeries substitute_square_root_variable(const RationalSeries& f) {
  if (!is_even_series(f))
    throw std::invalid_argument("substitution needs an even series");
  RationalSeries result(f.order() / 2);
  for (int k = 0; 2 * k <= f.order(); ++k) result.set_coeff(k, f.coeff(2 * k));
  return result;
}

// ---------------------------------------------------------------------------
// Eta series <-> moments.
// ---------------------------------------------------------------------------

/// M(z) = sum phi(a^k) z^k from a moment sequence.
inline RationalSeries moment_series(const MomentSequence& m) {
  RationalSeries result(m.order());
  for (int k = 1; k <= m.order(); ++k) result.set_coeff(k, m.moment(k));
  return result;
}

/// eta = M / (1 + M).
inline RationalSeries eta_from_moments(const MomentSequence& m) {
  const RationalSeries M = moment_series(m);
  return M * reciprocal(RationalSeries::one(M.order()) + M);
}

/// M = eta / (1 - eta); the coefficients 1..order are the moments.
inline MomentSequence moments_from_eta(const RationalSeries& eta) {
  if (eta.coeff(0) != 0) throw std::invalid_argument("an eta series has no constant term");
  const RationalSeries M = eta * geometric_inverse(eta);
  MomentSequence m;
  for (int k = 1; k <= M.order(); ++k) m.values.push_back(M.coeff(k));
  return m;
}

/// eta series of a Boolean cumulant sequence (coefficient n = beta_n).
inline RationalSeries eta_from_boolean(const CumulantSequence& beta) {
  detail::require_kind(beta, CumulantKind::boolean_kind, "eta_from_boolean");
  RationalSeries result(beta.order());
  for (int k = 1; k <= beta.order(); ++k) result.set_coeff(k, beta.at(k));
  return result;
}

inline CumulantSequence boolean_from_eta(const RationalSeries& eta) {
  if (eta.coeff(0) != 0) throw std::invalid_argument("an eta series has no constant term");
  std::vector<Rational> values;
  for (int k = 1; k <= eta.order(); ++k) values.push_back(eta.coeff(k));
  return CumulantSequence::boolean(std::move(values));
}

// ---------------------------------------------------------------------------
// 2x2 matrices of series.
// ---------------------------------------------------------------------------

/// 2x2 matrix of series; rows and columns are indexed by the unstarred (0)
/// and starred (1) version of a symbol, so entry (0,1) of F_a is f_{a,a*}.
struct SeriesMatrix {
  std::array<std::array<RationalSeries, 2>, 2> e;

  static SeriesMatrix zero(int order) {
    return SeriesMatrix{{{{RationalSeries(order), RationalSeries(order)},
                          {RationalSeries(order), RationalSeries(order)}}}};
  }

  static SeriesMatrix identity(int order) {
    SeriesMatrix m = zero(order);
    m.e[0][0] = RationalSeries::one(order);
    m.e[1][1] = RationalSeries::one(order);
    return m;
  }

  int order() const { return e[0][0].order(); }

  SeriesMatrix operator+(const SeriesMatrix& other) const {
    SeriesMatrix result = *this;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) result.e[r][c] = e[r][c] + other.e[r][c];
    return result;
  }

  SeriesMatrix operator*(const SeriesMatrix& other) const {
    SeriesMatrix result = zero(std::min(order(), other.order()));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        result.e[r][c] = e[r][0] * other.e[0][c] + e[r][1] * other.e[1][c];
    return result;
  }

  friend SeriesMatrix operator*(const RationalSeries& f, const SeriesMatrix& m) {
    SeriesMatrix result = m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) result.e[r][c] = f * m.e[r][c];
    return result;
  }

  bool operator==(const SeriesMatrix& other) const = default;
};

/// eta(zH) = sum beta_n z^n H^n, truncated.  Every entry of zH has zero
/// constant term, so the sum stabilizes after order-many terms.
inline SeriesMatrix eta_matrix_apply(const RationalSeries& eta, const SeriesMatrix& H) {
  const int order = H.order();
  SeriesMatrix power = SeriesMatrix::identity(order);
  SeriesMatrix result = SeriesMatrix::zero(order);
  for (int n = 1; n <= order; ++n) {
    power = power * H;
    if (n > eta.order()) break;
    if (eta.coeff(n) == 0) continue;
    result = result + RationalSeries::monomial(order, n, eta.coeff(n)) * power;
  }
  return result;
}

/// sum beta_n z^n H^{n-1}: the F-matrix attached to eta and a pocket matrix
/// H.  Multiplying on the right by zH recovers eta(zH).
inline SeriesMatrix eta_matrix_apply_offset(const RationalSeries& eta, const SeriesMatrix& H) {
  const int order = H.order();
  SeriesMatrix power = SeriesMatrix::identity(order);
  SeriesMatrix result = SeriesMatrix::zero(order);
  for (int n = 1; n <= order; ++n) {
    if (n <= eta.order() && eta.coeff(n) != 0)
      result = result + RationalSeries::monomial(order, n, eta.coeff(n)) * power;
    if (n < order) power = power * H;
  }
  return result;
}

// ---------------------------------------------------------------------------
// The anticommutator fixed-point systems.
// ---------------------------------------------------------------------------

namespace detail {

/// Pocket matrix built from the four f-series of the other letter:
/// H = [ f_xx (1-f_x*x)^{-1}            f_xx* + f_xx (1-f_x*x)^{-1} f_x*x* ]
///     [ (1-f_x*x)^{-1}                 (1-f_x*x)^{-1} f_x*x*              ]
inline SeriesMatrix pocket_matrix(const SeriesMatrix& F) {
  const RationalSeries& f_xx = F.e[0][0];
  const RationalSeries& f_xxs = F.e[0][1];
  const RationalSeries& f_xsx = F.e[1][0];
  const RationalSeries& f_xsxs = F.e[1][1];
  const RationalSeries g = geometric_inverse(f_xsx);
  SeriesMatrix H = SeriesMatrix::zero(F.order());
  H.e[0][0] = f_xx * g;
  H.e[0][1] = f_xxs + f_xx * g * f_xsxs;
  H.e[1][0] = g;
  H.e[1][1] = g * f_xsxs;
  return H;
}

/// Mirror of the pocket matrix used for the second letter:
/// H_b = [ (1-f_aa*)^{-1} f_aa                     (1-f_aa*)^{-1}        ]
///       [ f_a*a + f_a*a* (1-f_aa*)^{-1} f_aa      f_a*a* (1-f_aa*)^{-1} ]
inline SeriesMatrix pocket_matrix_mirror(const SeriesMatrix& F) {
  const RationalSeries& f_xx = F.e[0][0];
  const RationalSeries& f_xxs = F.e[0][1];
  const RationalSeries& f_xsx = F.e[1][0];
  const RationalSeries& f_xsxs = F.e[1][1];
  const RationalSeries g = geometric_inverse(f_xxs);
  SeriesMatrix H = SeriesMatrix::zero(F.order());
  H.e[0][0] = g * f_xx;
  H.e[0][1] = g;
  H.e[1][0] = f_xsx + f_xsxs * g * f_xx;
  H.e[1][1] = f_xsxs * g;
  return H;
}

inline void require_eta_input(const RationalSeries& eta, int order, const char* what) {
  if (eta.coeff(0) != 0)
    throw std::invalid_argument(std::string(what) + ": eta series must have no constant term");
  if (eta.order() < order)
    throw std::invalid_argument(std::string(what) + ": eta series order too small");
}

}  // namespace detail

/// Output of the general two-letter solver.  The F matrices live in the
/// letter-counting variable (order 2N); eta_ac is the eta series of ab+ba in
/// its own variable (order N).
struct GeneralAnticommutatorSolution {
  SeriesMatrix F_a, F_b;
  RationalSeries eta_word;  // eta of the joint word series, before z^2 -> z
  RationalSeries eta_ac;
};

/// Solves the coupled matrix system F_a H_a = eta_a(z H_a),
/// F_b H_b = eta_b(z H_b) by coefficientwise iteration from zero, then
/// assembles the joint eta series from the four corner series and
/// substitutes z^2 -> z.  Iteration from zero selects the combinatorial
/// solution; the run asserts that the final two iterates agree and that the
/// joint series is even.
inline GeneralAnticommutatorSolution solve_anticommutator_general(const RationalSeries& eta_a,
                                                                  const RationalSeries& eta_b,
                                                                  int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  detail::require_eta_input(eta_a, order, "solve_anticommutator_general");
  detail::require_eta_input(eta_b, order, "solve_anticommutator_general");
  const int work = 2 * order;
  const RationalSeries beta_a = eta_a.truncated(work);
  const RationalSeries beta_b = eta_b.truncated(work);

  SeriesMatrix F_a = SeriesMatrix::zero(work);
  SeriesMatrix F_b = SeriesMatrix::zero(work);
  SeriesMatrix prev_a = F_a, prev_b = F_b;
  for (int iteration = 0; iteration < work + 2; ++iteration) {
    prev_a = F_a;
    prev_b = F_b;
    const SeriesMatrix H_a = detail::pocket_matrix(prev_b);
    const SeriesMatrix H_b = detail::pocket_matrix_mirror(prev_a);
    F_a = eta_matrix_apply_offset(beta_a, H_a);
    F_b = eta_matrix_apply_offset(beta_b, H_b);
  }
  if (!(F_a == prev_a) || !(F_b == prev_b))
    throw solver_error("anticommutator fixed point did not stabilize");

  const RationalSeries& f_aa = F_a.e[0][0];
  const RationalSeries& f_aas = F_a.e[0][1];
  const RationalSeries& f_asa = F_a.e[1][0];
  const RationalSeries& f_asas = F_a.e[1][1];
  const RationalSeries& f_bb = F_b.e[0][0];
  const RationalSeries& f_bbs = F_b.e[0][1];
  const RationalSeries& f_bsb = F_b.e[1][0];
  const RationalSeries& f_bsbs = F_b.e[1][1];

  const RationalSeries g_ab = geometric_inverse(f_bbs * f_asa);
  const RationalSeries g_ba = geometric_inverse(f_asa * f_bbs);
  const RationalSeries eta_11 = f_aa * g_ab * f_bb;
  const RationalSeries eta_1s = f_aas + f_aa * g_ab * f_bbs * f_asas;
  const RationalSeries eta_s1 = f_bsb + f_bsbs * g_ba * f_asa * f_bb;
  const RationalSeries eta_ss = f_bsbs * g_ba * f_asas;
  const RationalSeries eta_word = eta_11 + eta_1s + eta_s1 + eta_ss;
  if (!is_even_series(eta_word))
    throw solver_error("joint eta series has odd terms");
  return GeneralAnticommutatorSolution{std::move(F_a), std::move(F_b), eta_word,
                                       substitute_square_root_variable(eta_word)};
}

struct SameDistributionSolution {
  SeriesMatrix F_a;
  RationalSeries eta_ac;
};

/// The one-matrix system for letters with a common distribution:
/// F_a H_a = eta(z H_a) with the pockets built from F_a itself, and
/// eta_ac(z^2) = 2 ( f_aa* + f_aa f_a*a* / (1 - f_a*a) ).
inline SameDistributionSolution solve_anticommutator_same(const RationalSeries& eta,
                                                          int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  detail::require_eta_input(eta, order, "solve_anticommutator_same");
  const int work = 2 * order;
  const RationalSeries beta = eta.truncated(work);

  SeriesMatrix F = SeriesMatrix::zero(work);
  SeriesMatrix prev = F;
  for (int iteration = 0; iteration < work + 2; ++iteration) {
    prev = F;
    // the other letter has the same distribution: its corner series are the
    // mirror image of F
    SeriesMatrix mirrored = SeriesMatrix::zero(work);
    mirrored.e[0][0] = prev.e[1][1];
    mirrored.e[0][1] = prev.e[1][0];
    mirrored.e[1][0] = prev.e[0][1];
    mirrored.e[1][1] = prev.e[0][0];
    F = eta_matrix_apply_offset(beta, detail::pocket_matrix(mirrored));
  }
  if (!(F == prev)) throw solver_error("anticommutator fixed point did not stabilize");

  const RationalSeries eta_word =
      Rational(2) * (F.e[0][1] + F.e[0][0] * F.e[1][1] * geometric_inverse(F.e[1][0]));
  if (!is_even_series(eta_word)) throw solver_error("joint eta series has odd terms");
  return SameDistributionSolution{std::move(F), substitute_square_root_variable(eta_word)};
}

struct SymmetricSolution {
  RationalSeries f_a_astar, f_astar_a;  // the two surviving corners of F_a
  RationalSeries f_b_bstar, f_bstar_b;  // and of F_b
  RationalSeries eta_ac;
};

/// Reduced system for symmetric distributions (even eta series): the
/// diagonal corner series vanish, the pockets become antidiagonal, and
/// eta_ac(z^2) = f_aa* + f_b*b.
inline SymmetricSolution solve_symmetric(const RationalSeries& eta_a,
                                         const RationalSeries& eta_b, int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  detail::require_eta_input(eta_a, order, "solve_symmetric");
  detail::require_eta_input(eta_b, order, "solve_symmetric");
  if (!is_even_series(eta_a) || !is_even_series(eta_b))
    throw std::invalid_argument("solve_symmetric needs even eta series");
  const int work = 2 * order;
  const RationalSeries beta_a = eta_a.truncated(work);
  const RationalSeries beta_b = eta_b.truncated(work);

  RationalSeries x = RationalSeries::zero(work);  // f_{a,a*}
  RationalSeries y = x;                           // f_{a*,a}
  RationalSeries u = x;                           // f_{b,b*}
  RationalSeries v = x;                           // f_{b*,b}
  RationalSeries px = x, py = x, pu = x, pv = x;
  for (int iteration = 0; iteration < work + 2; ++iteration) {
    px = x;
    py = y;
    pu = u;
    pv = v;
    SeriesMatrix H_a = SeriesMatrix::zero(work);
    H_a.e[0][1] = pu;
    H_a.e[1][0] = geometric_inverse(pv);
    SeriesMatrix H_b = SeriesMatrix::zero(work);
    H_b.e[0][1] = geometric_inverse(px);
    H_b.e[1][0] = py;
    const SeriesMatrix F_a = eta_matrix_apply_offset(beta_a, H_a);
    const SeriesMatrix F_b = eta_matrix_apply_offset(beta_b, H_b);
    if (!F_a.e[0][0].is_zero() || !F_a.e[1][1].is_zero() || !F_b.e[0][0].is_zero() ||
        !F_b.e[1][1].is_zero())
      throw solver_error("diagonal corner series did not vanish for symmetric input");
    x = F_a.e[0][1];
    y = F_a.e[1][0];
    u = F_b.e[0][1];
    v = F_b.e[1][0];
  }
  if (!(x == px) || !(y == py) || !(u == pu) || !(v == pv))
    throw solver_error("anticommutator fixed point did not stabilize");

  const RationalSeries eta_word = x + v;
  if (!is_even_series(eta_word)) throw solver_error("joint eta series has odd terms");
  return SymmetricSolution{x, y, u, v, substitute_square_root_variable(eta_word)};
}

// ---------------------------------------------------------------------------
// Combinatorial oracle for the corner series.
// ---------------------------------------------------------------------------

enum class Symbol { a, a_star, b, b_star };

inline const char* to_string(Symbol s) {
  switch (s) {
    case Symbol::a: return "a";
    case Symbol::a_star: return "a*";
    case Symbol::b: return "b";
    case Symbol::b_star: return "b*";
  }
  return "?";
}

namespace detail {

/// Successors in the letter automaton of admissible words: the contiguous
/// subwords of (ab)^l1 (b*a*)^k1 (ab)^l2 ... are exactly the walks here.
inline std::vector<Symbol> admissible_successors(Symbol s) {
  switch (s) {
    case Symbol::a: return {Symbol::b};
    case Symbol::b: return {Symbol::a, Symbol::b_star};
    case Symbol::b_star: return {Symbol::a_star};
    case Symbol::a_star: return {Symbol::b_star, Symbol::a};
  }
  return {};
}

inline char letter_of(Symbol s) {
  return (s == Symbol::a || s == Symbol::a_star) ? 'a' : 'b';
}

}  // namespace detail

/// Combinatorial definition of a corner series f_{l,l'}: the coefficient of
/// z^k is the sum, over admissible words of length k that start with l and
/// end with l', of the joint Boolean cumulant of the word with stars dropped
/// (the letters are selfadjoint).  Slow and direct; this is the oracle the
/// matrix solver is checked against.
inline RationalSeries f_series_oracle(const FreePairModel& model, Symbol from, Symbol to,
                                      int order) {
  const bool from_a = detail::letter_of(from) == 'a';
  const bool to_a = detail::letter_of(to) == 'a';
  if (from_a != to_a)
    throw std::invalid_argument("corner series connect a-symbols or b-symbols, not both");
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  if (order > 10) throw std::invalid_argument("word-length guard exceeded");

  RationalSeries result(order);
  std::string word;
  auto walk = [&](auto&& self, Symbol at) -> void {
    word.push_back(detail::letter_of(at));
    if (at == to && !word.empty())
      result.set_coeff(static_cast<int>(word.size()),
                       result.coeff(static_cast<int>(word.size())) +
                           joint_boolean_vnrp(model, Word(word)));
    if (static_cast<int>(word.size()) < order)
      for (Symbol next : detail::admissible_successors(at)) self(self, next);
    word.pop_back();
  };
  if (order >= 1) walk(walk, from);
  return result;
}

// ---------------------------------------------------------------------------
// The eta system for sums of free variables.
// ---------------------------------------------------------------------------

/// eta series of a+b for free a, b: coefficientwise fixed point of
///   B_a = eta_a(z/(1-B_b)) (1-B_b),   B_b = eta_b(z/(1-B_a)) (1-B_a),
/// iterated from zero; the answer is B_a + B_b.
inline RationalSeries solve_sum_eta(const RationalSeries& eta_a, const RationalSeries& eta_b,
                                    int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  detail::require_eta_input(eta_a, order, "solve_sum_eta");
  detail::require_eta_input(eta_b, order, "solve_sum_eta");
  const RationalSeries beta_a = eta_a.truncated(order);
  const RationalSeries beta_b = eta_b.truncated(order);
  const RationalSeries z = RationalSeries::monomial(order, 1);

  RationalSeries B_a = RationalSeries::zero(order);
  RationalSeries B_b = B_a;
  RationalSeries prev_a = B_a, prev_b = B_b;
  for (int iteration = 0; iteration < order + 2; ++iteration) {
    prev_a = B_a;
    prev_b = B_b;
    const RationalSeries one_minus_b = RationalSeries::one(order) - prev_b;
    const RationalSeries one_minus_a = RationalSeries::one(order) - prev_a;
    B_a = compose(beta_a, z * reciprocal(one_minus_b)) * one_minus_b;
    B_b = compose(beta_b, z * reciprocal(one_minus_a)) * one_minus_a;
  }
  if (!(B_a == prev_a) || !(B_b == prev_b))
    throw solver_error("sum fixed point did not stabilize");
  return B_a + B_b;
}

// ---------------------------------------------------------------------------
// Closed forms used as test oracles.
// ---------------------------------------------------------------------------

/// Generating series of the ac-friendly census:
/// sum |NC_acf(2n)| z^n = 1/2 - sqrt( (1-8z) (1-2z-sqrt(1-8z)) / (8z) ).
inline RationalSeries acf_census_series(int order) {
  const int work = order + 2;
  const RationalSeries z = RationalSeries::monomial(work, 1);
  const RationalSeries one = RationalSeries::one(work);
  const RationalSeries root = sqrt(one - Rational(8) * z);
  const RationalSeries inner = shift_down(one - Rational(2) * z - root, 1) * Rational(1, 8);
  const RationalSeries outer = sqrt((one - Rational(8) * z) * inner);
  return (RationalSeries::constant(work, Rational(1, 2)) - outer).truncated(order);
}

/// eta series of ab+ba for two free copies of the two-point law at 0 and 2:
/// 1 - sqrt( (1-8z) (1-2z-sqrt(1-8z)) / (2z) ); equals twice the census
/// series.
inline RationalSeries anticommutator_eta_two_point_law(int order) {
  return Rational(2) * acf_census_series(order);
}

}  // namespace acfree
