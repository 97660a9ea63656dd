#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acfree/coloring.hpp"
#include "acfree/partition.hpp"
#include "acfree/rational.hpp"

namespace acfree {

// This module is the trusted combinatorial oracle of the library: every value
// is obtained by direct summation over explicitly enumerated partition sets.
// The generating-function fast paths live in series.hpp and are tested
// against the functions here.

inline constexpr int kMaxJointColours = 4;

enum class CumulantKind { boolean_kind, free_kind };

/// phi(a^k) for k = 1..N, exact.
struct MomentSequence {
  std::vector<Rational> values;  // values[k-1] = phi(a^k)

  int order() const { return static_cast<int>(values.size()); }
  const Rational& moment(int k) const {
    if (k < 1 || k > order()) throw std::invalid_argument("moment index out of range");
    return values[static_cast<size_t>(k - 1)];
  }
};

/// beta_k(a) or kappa_k(a) for k = 1..N, exact.
struct CumulantSequence {
  CumulantKind kind = CumulantKind::boolean_kind;
  std::vector<Rational> values;  // values[k-1] = cumulant of order k

  int order() const { return static_cast<int>(values.size()); }
  const Rational& at(int k) const {
    if (k < 1 || k > order()) throw std::invalid_argument("cumulant index out of range");
    return values[static_cast<size_t>(k - 1)];
  }

  static CumulantSequence boolean(std::vector<Rational> values) {
    return CumulantSequence{CumulantKind::boolean_kind, std::move(values)};
  }
  static CumulantSequence free_cumulants(std::vector<Rational> values) {
    return CumulantSequence{CumulantKind::free_kind, std::move(values)};
  }
};

namespace detail {

inline void require_kind(const CumulantSequence& c, CumulantKind kind, const char* what) {
  if (c.kind != kind) throw std::invalid_argument(std::string(what) + ": wrong cumulant kind");
}

/// Product of per-block factors `value(size)` over all blocks of a buffer.
template <class Value>
Rational block_product(const std::vector<Partition::Block>& blocks, Value&& value) {
  Rational product = 1;
  for (const auto& block : blocks) product *= value(static_cast<int>(block.size()));
  return product;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-variable conversions.
// ---------------------------------------------------------------------------

/// phi(a^n) = sum over interval partitions of products of Boolean cumulants.
inline MomentSequence boolean_to_moments(const CumulantSequence& beta) {
  detail::require_kind(beta, CumulantKind::boolean_kind, "boolean_to_moments");
  MomentSequence m;
  m.values.reserve(static_cast<size_t>(beta.order()));
  for (int n = 1; n <= beta.order(); ++n) {
    Rational total = 0;
    for (const Partition& pi : enumerate_interval(n))
      total += detail::block_product(pi.blocks(), [&](int size) { return beta.at(size); });
    m.values.push_back(std::move(total));
  }
  return m;
}

/// Unique solution of the triangular system: subtract all terms with more
/// than one block, order by order.
inline CumulantSequence moments_to_boolean(const MomentSequence& m) {
  CumulantSequence beta = CumulantSequence::boolean(std::vector<Rational>());
  for (int n = 1; n <= m.order(); ++n) {
    Rational rest = 0;
    for (const Partition& pi : enumerate_interval(n)) {
      if (pi.block_count() == 1) continue;
      rest += detail::block_product(pi.blocks(), [&](int size) { return beta.at(size); });
    }
    beta.values.push_back(m.moment(n) - rest);
  }
  return beta;
}

/// phi(a^n) = sum over non-crossing partitions of products of free cumulants.
inline MomentSequence free_to_moments(const CumulantSequence& kappa) {
  detail::require_kind(kappa, CumulantKind::free_kind, "free_to_moments");
  MomentSequence m;
  for (int n = 1; n <= kappa.order(); ++n) {
    Rational total = 0;
    for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
      total += detail::block_product(blocks, [&](int size) { return kappa.at(size); });
    });
    m.values.push_back(std::move(total));
  }
  return m;
}

inline CumulantSequence moments_to_free(const MomentSequence& m) {
  CumulantSequence kappa = CumulantSequence::free_cumulants(std::vector<Rational>());
  for (int n = 1; n <= m.order(); ++n) {
    Rational rest = 0;
    for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
      if (blocks.size() == 1) return;
      rest += detail::block_product(blocks, [&](int size) { return kappa.at(size); });
    });
    kappa.values.push_back(m.moment(n) - rest);
  }
  return kappa;
}

/// beta_n = sum over non-crossing partitions with a unique outer block of
/// products of free cumulants.
inline CumulantSequence boolean_from_free(const CumulantSequence& kappa) {
  detail::require_kind(kappa, CumulantKind::free_kind, "boolean_from_free");
  CumulantSequence beta = CumulantSequence::boolean(std::vector<Rational>());
  for (int n = 1; n <= kappa.order(); ++n) {
    Rational total = 0;
    for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
      // unique outer block: the block of 1 reaches n
      if (blocks.front().back() != n) return;
      total += detail::block_product(blocks, [&](int size) { return kappa.at(size); });
    });
    beta.values.push_back(std::move(total));
  }
  return beta;
}

// ---------------------------------------------------------------------------
// Two free selfadjoint letters.
// ---------------------------------------------------------------------------

/// Two freely independent selfadjoint letters, each given by its sequence of
/// Boolean cumulants.  The matching free cumulants are derived once at
/// construction, so repeated moment evaluations do not re-run the
/// triangular conversions.
struct FreePairModel {
  CumulantSequence beta_a, beta_b;
  CumulantSequence kappa_a, kappa_b;

  FreePairModel(CumulantSequence a, CumulantSequence b)
      : beta_a(std::move(a)),
        beta_b(std::move(b)),
        kappa_a(moments_to_free(boolean_to_moments(beta_a))),
        kappa_b(moments_to_free(boolean_to_moments(beta_b))) {}

  int order() const { return std::min(beta_a.order(), beta_b.order()); }

  const Rational& beta(char letter, int size) const {
    switch (letter) {
      case 'a': return beta_a.at(size);
      case 'b': return beta_b.at(size);
      default: throw std::invalid_argument("letter must be 'a' or 'b'");
    }
  }

  const CumulantSequence& free_a() const { return kappa_a; }
  const CumulantSequence& free_b() const { return kappa_b; }
};

/// A word over the alphabet {a, b}.
struct Word {
  std::string letters;

  explicit Word(std::string text) : letters(std::move(text)) {
    if (letters.empty()) throw std::invalid_argument("word must be non-empty");
    for (char ch : letters)
      if (ch != 'a' && ch != 'b') throw std::invalid_argument("word letters must be 'a' or 'b'");
  }

  int size() const { return static_cast<int>(letters.size()); }

  Coloring coloring() const {
    Coloring c;
    c.colour_count = 2;
    c.values.reserve(letters.size());
    for (char ch : letters) c.values.push_back(ch == 'a' ? 1 : 2);
    return c;
  }
};

namespace detail {

enum class TermClass { block_constant, vnrp, unique_outer_vnrp };

/// Colour-compatible partitions of a ground set, reduced to what cumulant
/// products need: the multiset of block sizes per colour.  Tables are
/// independent of any model, so they are built once per (coloring, class) and
/// shared; the cache is guarded for concurrent use.
struct ColourTermTable {
  struct Term {
    std::vector<std::vector<int>> sizes;  // sizes[colour-1] = block sizes of that colour
  };
  std::vector<Term> terms;
};

inline ColourTermTable build_colour_terms(const Coloring& c, TermClass cls) {
  const int n = c.n();
  ColourTermTable table;
  NestingInfo scratch;
  std::vector<int> block_colour;
  for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
    block_colour.clear();
    for (const auto& block : blocks) {
      const int colour = c.colour(block.front());
      for (int element : block)
        if (c.colour(element) != colour) return;
      block_colour.push_back(colour);
    }
    if (cls != TermClass::block_constant) {
      try_nesting_info(n, blocks, scratch);
      if (cls == TermClass::unique_outer_vnrp && scratch.outer_blocks.size() != 1) return;
      for (size_t b = 0; b < blocks.size(); ++b) {
        const int parent = scratch.parent[b];
        if (parent >= 0 && block_colour[b] == block_colour[static_cast<size_t>(parent)]) return;
      }
    }
    ColourTermTable::Term term;
    term.sizes.resize(static_cast<size_t>(c.colour_count));
    for (size_t b = 0; b < blocks.size(); ++b)
      term.sizes[static_cast<size_t>(block_colour[b] - 1)].push_back(static_cast<int>(blocks[b].size()));
    table.terms.push_back(std::move(term));
  });
  return table;
}

inline const ColourTermTable& colour_terms(const Coloring& c, TermClass cls) {
  using Key = std::pair<std::vector<int>, int>;
  static std::map<Key, std::unique_ptr<ColourTermTable>> cache;
  static std::mutex mutex;
  const Key key{c.values, static_cast<int>(cls)};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<ColourTermTable>(build_colour_terms(c, cls))).first;
  return *it->second;
}

inline Rational evaluate_terms(const ColourTermTable& table,
                               const std::vector<const CumulantSequence*>& per_colour) {
  Rational total = 0;
  for (const auto& term : table.terms) {
    Rational product = 1;
    for (size_t colour = 0; colour < term.sizes.size(); ++colour)
      for (int size : term.sizes[colour]) product *= per_colour[colour]->at(size);
    total += product;
  }
  return total;
}

inline Rational coloured_sum(const std::vector<CumulantSequence>& per_colour,
                             const Coloring& c, TermClass cls) {
  c.validate();
  if (c.colour_count > kMaxJointColours)
    throw std::invalid_argument("joint evaluation supports at most 4 colours");
  if (static_cast<int>(per_colour.size()) < c.colour_count)
    throw std::invalid_argument("missing cumulant sequence for some colour");
  // A block of one colour can be no larger than that colour's position count.
  std::vector<int> needed(per_colour.size(), 0);
  for (int value : c.values) ++needed[static_cast<size_t>(value - 1)];
  std::vector<const CumulantSequence*> ptrs;
  for (size_t i = 0; i < per_colour.size(); ++i) {
    if (per_colour[i].order() < needed[i])
      throw std::invalid_argument("cumulant sequence shorter than the word requires");
    ptrs.push_back(&per_colour[i]);
  }
  return evaluate_terms(colour_terms(c, cls), ptrs);
}

}  // namespace detail

/// Joint Boolean cumulant of coloured free arguments: the sum over
/// colour-compatible non-crossing partitions with a unique outer block and
/// the vertical no-repeat property.  One Boolean cumulant sequence per
/// colour; at most 4 colours.
inline Rational joint_boolean_colored(const std::vector<CumulantSequence>& beta_per_colour,
                                      const Coloring& c) {
  for (const auto& seq : beta_per_colour)
    detail::require_kind(seq, CumulantKind::boolean_kind, "joint_boolean_colored");
  return detail::coloured_sum(beta_per_colour, c, detail::TermClass::unique_outer_vnrp);
}

/// Joint moment of coloured free arguments via Boolean cumulants: the sum
/// over all colour-compatible non-crossing partitions with the vertical
/// no-repeat property.
inline Rational joint_moment_colored(const std::vector<CumulantSequence>& beta_per_colour,
                                     const Coloring& c) {
  for (const auto& seq : beta_per_colour)
    detail::require_kind(seq, CumulantKind::boolean_kind, "joint_moment_colored");
  return detail::coloured_sum(beta_per_colour, c, detail::TermClass::vnrp);
}

/// beta_m(w) for a word w in the two letters of the model.
inline Rational joint_boolean_vnrp(const FreePairModel& model, const Word& w) {
  return joint_boolean_colored({model.beta_a, model.beta_b}, w.coloring());
}

enum class MomentPath { vnrp, free_cumulant };

/// phi(w) computed along one of two independent routes: the vertical
/// no-repeat expansion in Boolean cumulants, or the free-cumulant moment
/// expansion with mixed free cumulants dropped.  The two must agree; tests
/// use that agreement as the core oracle.
inline Rational joint_moment_free(const FreePairModel& model, const Word& w, MomentPath path) {
  if (path == MomentPath::vnrp)
    return joint_moment_colored({model.beta_a, model.beta_b}, w.coloring());
  return detail::coloured_sum({model.free_a(), model.free_b()}, w.coloring(),
                              detail::TermClass::block_constant);
}

// ---------------------------------------------------------------------------
// Products as arguments.
// ---------------------------------------------------------------------------

/// Boolean cumulant with products as arguments.  The groups partition the
/// atom positions 1..n into contiguous runs; the expansion ranges over the
/// interval partitions whose join with the grouping is full, which by the
/// boolean-lattice picture of Int(n) means: no cut at any group boundary.
/// `cumulant_of_range(lo, hi)` supplies the joint Boolean cumulant of the
/// atoms lo..hi.
inline Rational boolean_product_expansion(
    const std::vector<int>& group_sizes,
    const std::function<Rational(int, int)>& cumulant_of_range) {
  if (group_sizes.empty()) throw std::invalid_argument("need at least one group");
  int n = 0;
  std::vector<char> boundary;  // boundary[i] set when a group ends at position i
  for (int size : group_sizes) {
    if (size < 1) throw std::invalid_argument("group sizes must be positive");
    n += size;
    boundary.resize(static_cast<size_t>(n) + 1, 0);
    boundary[static_cast<size_t>(n)] = 1;
  }
  std::vector<int> free_positions;  // cut positions not blocked by a group boundary
  for (int i = 1; i < n; ++i)
    if (!boundary[static_cast<size_t>(i)]) free_positions.push_back(i);
  if (free_positions.size() > 30) throw std::invalid_argument("expansion too large");

  Rational total = 0;
  for (std::uint32_t mask = 0; mask < (1u << free_positions.size()); ++mask) {
    Rational product = 1;
    int lo = 1;
    for (size_t i = 0; i < free_positions.size(); ++i) {
      if (mask & (1u << i)) {
        product *= cumulant_of_range(lo, free_positions[i]);
        lo = free_positions[i] + 1;
      }
    }
    product *= cumulant_of_range(lo, n);
    total += product;
  }
  return total;
}

/// How a Boolean cumulant reduces when argument m of n is the unit:
/// vanishes at the ends, drops out in the middle.
struct UnitReduction {
  bool vanishes = false;
  int dropped_position = 0;  // meaningful when !vanishes
};

inline UnitReduction unit_rule(int m, int n) {
  if (n < 2 || m < 1 || m > n) throw std::invalid_argument("unit_rule: bad position");
  if (m == 1 || m == n) return UnitReduction{true, 0};
  return UnitReduction{false, m};
}

// ---------------------------------------------------------------------------
// Sums and products of free variables.
// ---------------------------------------------------------------------------

namespace detail {

/// Per-n table for the sum formula: unique-outer-block partitions reduced to
/// block sizes split by depth parity.
struct DepthParityTable {
  struct Term {
    std::vector<int> even_sizes, odd_sizes;
  };
  std::vector<Term> terms;
};

inline const DepthParityTable& depth_parity_terms(int n) {
  static std::map<int, std::unique_ptr<DepthParityTable>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto table = std::make_unique<DepthParityTable>();
    NestingInfo scratch;
    for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
      if (blocks.front().back() != n) return;  // needs a unique outer block
      try_nesting_info(n, blocks, scratch);
      DepthParityTable::Term term;
      for (size_t b = 0; b < blocks.size(); ++b)
        (scratch.depth[b] % 2 == 0 ? term.even_sizes : term.odd_sizes)
            .push_back(static_cast<int>(blocks[b].size()));
      table->terms.push_back(std::move(term));
    });
    it = cache.emplace(n, std::move(table)).first;
  }
  return *it->second;
}

}  // namespace detail

/// Boolean cumulants of a+b for free a, b: for each n, sum over
/// unique-outer-block non-crossing partitions, colouring blocks by depth
/// parity, plus the same sum with the roles of a and b exchanged.
inline CumulantSequence boolean_cumulants_of_sum(const FreePairModel& model, int order) {
  if (order < 1 || order > model.order())
    throw std::invalid_argument("order out of range for the model");
  CumulantSequence result = CumulantSequence::boolean(std::vector<Rational>());
  for (int n = 1; n <= order; ++n) {
    Rational total = 0;
    for (const auto& term : detail::depth_parity_terms(n).terms) {
      Rational even_a = 1, odd_b = 1, even_b = 1, odd_a = 1;
      for (int size : term.even_sizes) {
        even_a *= model.beta('a', size);
        even_b *= model.beta('b', size);
      }
      for (int size : term.odd_sizes) {
        odd_b *= model.beta('b', size);
        odd_a *= model.beta('a', size);
      }
      total += even_a * odd_b + even_b * odd_a;
    }
    result.values.push_back(std::move(total));
  }
  return result;
}

/// kappa_n(ab,...,ab) for free a, b: the Kreweras product formula, summing
/// kappa(a) over pi against kappa(b) over the complement of pi.
inline Rational free_cumulants_of_product(const CumulantSequence& kappa_a,
                                          const CumulantSequence& kappa_b, int n) {
  detail::require_kind(kappa_a, CumulantKind::free_kind, "free_cumulants_of_product");
  detail::require_kind(kappa_b, CumulantKind::free_kind, "free_cumulants_of_product");
  if (n < 1 || n > kappa_a.order() || n > kappa_b.order())
    throw std::invalid_argument("order out of range");
  Rational total = 0;
  for (const Partition& pi : enumerate_nc(n)) {
    Rational product = detail::block_product(pi.blocks(), [&](int size) { return kappa_a.at(size); });
    product *= detail::block_product(kreweras(pi).blocks(), [&](int size) { return kappa_b.at(size); });
    total += product;
  }
  return total;
}

}  // namespace acfree
