#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acfree/partition.hpp"

namespace acfree {

/// Ac-friendly filtering is capped separately from plain enumeration: the
/// ground set 2n = 16 is the practical desk-scale ceiling.
inline constexpr int kMaxAcFriendlySize = 16;

/// A map {1,...,n} -> {1,...,s}.
struct Coloring {
  int colour_count = 1;     // s
  std::vector<int> values;  // values[i-1] in 1..s

  int n() const { return static_cast<int>(values.size()); }
  int colour(int element) const { return values[static_cast<size_t>(element - 1)]; }

  void validate() const {
    if (colour_count < 1) throw std::invalid_argument("colour count must be positive");
    if (values.empty()) throw std::invalid_argument("coloring must be non-empty");
    for (int v : values)
      if (v < 1 || v > colour_count) throw std::invalid_argument("colour value out of range");
  }

  bool operator==(const Coloring&) const = default;
};

/// Colour of each block when the coloring is constant on blocks; nullopt
/// otherwise.
inline std::optional<std::vector<int>> block_colours(const Partition& p, const Coloring& c) {
  if (p.n() != c.n()) throw std::invalid_argument("coloring size mismatch");
  std::vector<int> colours(static_cast<size_t>(p.block_count()));
  for (int b = 0; b < p.block_count(); ++b) {
    const auto& block = p.block(b);
    const int colour = c.colour(block.front());
    for (int element : block)
      if (c.colour(element) != colour) return std::nullopt;
    colours[static_cast<size_t>(b)] = colour;
  }
  return colours;
}

inline bool is_block_constant(const Partition& p, const Coloring& c) {
  return block_colours(p, c).has_value();
}

/// Vertical no-repeat property: every inner block's colour differs from its
/// parent's.  The coloring must be constant on blocks.
inline bool has_vnrp(const Partition& p, const Coloring& c) {
  const auto colours = block_colours(p, c);
  if (!colours) throw std::invalid_argument("coloring is not constant on blocks");
  const NestingInfo info = nesting_info(p);
  for (int b = 0; b < p.block_count(); ++b) {
    const int parent = info.parent[static_cast<size_t>(b)];
    if (parent >= 0 &&
        (*colours)[static_cast<size_t>(b)] == (*colours)[static_cast<size_t>(parent)])
      return false;
  }
  return true;
}

/// The unique colour-compatible tau >> p with the vertical no-repeat
/// property.  Constructed by marking the outer blocks together with the inner
/// blocks whose colour differs from their parent's, then collapsing along the
/// induced block-projection.
inline Partition vnrp_majorant(const Partition& p, const Coloring& c) {
  const auto colours = block_colours(p, c);
  if (!colours) throw std::invalid_argument("coloring is not constant on blocks");
  const NestingInfo info = nesting_info(p);
  std::vector<int> marked;
  for (int b = 0; b < p.block_count(); ++b) {
    const int parent = info.parent[static_cast<size_t>(b)];
    if (parent < 0 ||
        (*colours)[static_cast<size_t>(b)] != (*colours)[static_cast<size_t>(parent)])
      marked.push_back(b);
  }
  return partition_from_projection(projection_from_marked(p, marked));
}

/// All non-crossing partitions of {1,...,n} on which c is block-constant.
inline std::vector<Partition> enumerate_nc_colored(int n, const Coloring& c) {
  c.validate();
  if (c.n() != n) throw std::invalid_argument("coloring size mismatch");
  std::vector<Partition> result;
  for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
    for (const auto& block : blocks) {
      const int colour = c.colour(block.front());
      for (int element : block)
        if (c.colour(element) != colour) return;
    }
    result.push_back(Partition::from_canonical(n, blocks));
  });
  return result;
}

/// Canonical alternating 2-colouring of a non-crossing partition.
inline Coloring calt_coloring(const Partition& p) {
  const NestingInfo info = nesting_info(p);
  Coloring c;
  c.colour_count = 2;
  c.values.resize(static_cast<size_t>(p.n()));
  for (int i = 1; i <= p.n(); ++i) c.values[static_cast<size_t>(i - 1)] = info.calt_of(i);
  return c;
}

/// A tuple over the alphabet {1,*}.
struct SignedTuple {
  std::vector<bool> star;  // star[i] == true means entry i+1 is '*'

  static SignedTuple ones(int n) { return SignedTuple{std::vector<bool>(static_cast<size_t>(n), false)}; }

  int size() const { return static_cast<int>(star.size()); }
  bool is_star(int index) const { return star[static_cast<size_t>(index - 1)]; }

  SignedTuple complement() const {
    SignedTuple c = *this;
    c.star.flip();
    return c;
  }

  std::string to_string() const {
    std::string out = "(";
    for (size_t i = 0; i < star.size(); ++i) {
      if (i > 0) out += ',';
      out += star[i] ? '*' : '1';
    }
    out += ')';
    return out;
  }

  bool operator==(const SignedTuple&) const = default;
  auto operator<=>(const SignedTuple&) const = default;
};

enum class AcFriendlyCheck { via_depth, via_calt };

namespace detail {

/// Ac-friendly test against precomputed nesting data.  The two conditions:
/// maxima of outer blocks lie in the odd positions or at 2n, and no
/// depth-tie (equivalently colour-tie) straddles an odd/even boundary away
/// from an outer maximum.
inline bool ac_friendly_from_info(int n, const std::vector<Partition::Block>& blocks,
                                  const NestingInfo& info, AcFriendlyCheck how) {
  if (n % 2 != 0) throw std::invalid_argument("ac-friendly test needs an even ground set");
  std::vector<char> outermax(static_cast<size_t>(n) + 1, 0);
  for (int b : info.outer_blocks) {
    const int m = blocks[static_cast<size_t>(b)].back();
    if (m % 2 == 0 && m != n) return false;
    outermax[static_cast<size_t>(m)] = 1;
  }
  if (how == AcFriendlyCheck::via_depth) {
    for (int j = 1; j < n; j += 2)
      if (!outermax[static_cast<size_t>(j)] && info.depth_of(j) == info.depth_of(j + 1))
        return false;
  } else {
    for (int j = 1; j < n; j += 2)
      if (info.calt_of(j) == info.calt_of(j + 1)) return false;
  }
  return true;
}

}  // namespace detail

inline bool is_ac_friendly(const Partition& p,
                           AcFriendlyCheck how = AcFriendlyCheck::via_depth) {
  const NestingInfo info = nesting_info(p);
  return detail::ac_friendly_from_info(p.n(), p.blocks(), info, how);
}

/// The {1,*}-tuple read off the canonical alternating colouring at the odd
/// positions of an ac-friendly partition of {1,...,2n}.  Entry i is 1 when
/// calt(2i-1) = 1 and * when calt(2i-1) = 2; entry 1 is always 1.
inline SignedTuple oddtuple(const Partition& p) {
  const NestingInfo info = nesting_info(p);
  if (!detail::ac_friendly_from_info(p.n(), p.blocks(), info, AcFriendlyCheck::via_depth))
    throw std::invalid_argument("oddtuple requires an ac-friendly partition");
  SignedTuple eps;
  eps.star.resize(static_cast<size_t>(p.n() / 2));
  for (int i = 1; 2 * i - 1 <= p.n(); ++i)
    eps.star[static_cast<size_t>(i - 1)] = info.calt_of(2 * i - 1) == 2;
  return eps;
}

inline std::vector<Partition> enumerate_ac_friendly(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("ground set size must be even and positive");
  if (two_n > kMaxAcFriendlySize) throw std::invalid_argument("ac-friendly size guard exceeded");
  std::vector<Partition> result;
  NestingInfo scratch;
  for_each_nc(two_n, [&](const std::vector<Partition::Block>& blocks) {
    try_nesting_info(two_n, blocks, scratch);  // enumerator only emits non-crossing ones
    if (detail::ac_friendly_from_info(two_n, blocks, scratch, AcFriendlyCheck::via_depth))
      result.push_back(Partition::from_canonical(two_n, blocks));
  });
  return result;
}

}  // namespace acfree
