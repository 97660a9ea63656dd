#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "acfree/coloring.hpp"
#include "acfree/cumulants.hpp"
#include "acfree/partition.hpp"
#include "acfree/rational.hpp"

namespace acfree {

// Joint Boolean cumulants of ab and (ab)* = ba for free selfadjoint a, b:
// sums over anticommutator-friendly partitions, split along the canonical
// alternating colouring, with the oddtuple selecting the word.

/// One ac-friendly partition reduced to the data the formulas consume.
struct AcfEntry {
  Partition partition;
  std::vector<int> colour1_sizes;  // block sizes with calt colour 1
  std::vector<int> colour2_sizes;  // block sizes with calt colour 2
  SignedTuple odd;                 // oddtuple of the partition
  bool pairing = false;            // every block has size 2
  bool all_even = false;           // every block has even size
};

/// The ac-friendly partitions of {1,...,two_n}, computed once per size and
/// cached for the rest of the run.  The underlying scan visits all of
/// NC(two_n), so the guard matters.
inline const std::vector<AcfEntry>& acf_entries(int two_n) {
  if (two_n < 2 || two_n % 2 != 0)
    throw std::invalid_argument("ground set size must be even and positive");
  if (two_n > kMaxAcFriendlySize)
    throw std::invalid_argument("ac-friendly size guard exceeded");
  static std::map<int, std::unique_ptr<std::vector<AcfEntry>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(two_n);
  if (it == cache.end()) {
    auto entries = std::make_unique<std::vector<AcfEntry>>();
    NestingInfo scratch;
    for_each_nc(two_n, [&](const std::vector<Partition::Block>& blocks) {
      try_nesting_info(two_n, blocks, scratch);
      if (!detail::ac_friendly_from_info(two_n, blocks, scratch, AcFriendlyCheck::via_depth))
        return;
      std::vector<int> colour1_sizes, colour2_sizes;
      bool pairing = true, all_even = true;
      for (size_t b = 0; b < blocks.size(); ++b) {
        const int size = static_cast<int>(blocks[b].size());
        (scratch.calt[b] == 1 ? colour1_sizes : colour2_sizes).push_back(size);
        pairing = pairing && size == 2;
        all_even = all_even && size % 2 == 0;
      }
      SignedTuple odd;
      odd.star.resize(static_cast<size_t>(two_n / 2));
      for (int i = 1; 2 * i - 1 <= two_n; ++i)
        odd.star[static_cast<size_t>(i - 1)] = scratch.calt_of(2 * i - 1) == 2;
      entries->push_back(AcfEntry{Partition::from_canonical(two_n, blocks),
                                  std::move(colour1_sizes), std::move(colour2_sizes),
                                  std::move(odd), pairing, all_even});
    });
    it = cache.emplace(two_n, std::move(entries)).first;
  }
  return *it->second;
}

/// Symbolic view of one joint-cumulant formula: the contributing partitions
/// together with the block-size multisets attached to each letter.  Exposed
/// so tests can compare term multisets literally, not just evaluated sums.
struct AcTermTable {
  struct Term {
    Partition partition;
    std::vector<int> sizes_a, sizes_b;
  };
  int n = 0;
  std::vector<Term> terms;
};

/// Terms of beta_n((ab)^eps(1),...,(ab)^eps(n)).  A tuple starting with *
/// contributes through its complement with the letters exchanged.
inline AcTermTable ac_term_table(const SignedTuple& eps) {
  const int n = eps.size();
  if (n < 1) throw std::invalid_argument("tuple must be non-empty");
  const bool flipped = eps.is_star(1);
  const SignedTuple target = flipped ? eps.complement() : eps;
  AcTermTable table;
  table.n = n;
  for (const AcfEntry& entry : acf_entries(2 * n)) {
    if (entry.odd != target) continue;
    table.terms.push_back(
        AcTermTable::Term{entry.partition, flipped ? entry.colour2_sizes : entry.colour1_sizes,
                          flipped ? entry.colour1_sizes : entry.colour2_sizes});
  }
  return table;
}

/// beta_n((ab)^eps(1),...,(ab)^eps(n)) for the model's free selfadjoint pair.
inline Rational joint_boolean_of_word(const FreePairModel& model, const SignedTuple& eps) {
  if (model.order() < eps.size())
    throw std::invalid_argument("model order too small for the tuple");
  Rational total = 0;
  for (const auto& term : ac_term_table(eps).terms) {
    Rational product = 1;
    for (int size : term.sizes_a) product *= model.beta('a', size);
    for (int size : term.sizes_b) product *= model.beta('b', size);
    total += product;
  }
  return total;
}

/// beta_n(ab+ba): the sum over all ac-friendly partitions with colour 1
/// carrying a and colour 2 carrying b, plus the same sum with the letters
/// exchanged.
inline Rational anticommutator_boolean(const FreePairModel& model, int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (model.order() < n) throw std::invalid_argument("model order too small");
  Rational total = 0;
  for (const AcfEntry& entry : acf_entries(2 * n)) {
    Rational ab = 1, ba = 1;
    for (int size : entry.colour1_sizes) {
      ab *= model.beta('a', size);
      ba *= model.beta('b', size);
    }
    for (int size : entry.colour2_sizes) {
      ab *= model.beta('b', size);
      ba *= model.beta('a', size);
    }
    total += ab + ba;
  }
  return total;
}

/// beta_n(ab+ba) when a and b share the Boolean cumulant sequence lambda:
/// twice the plain sum over ac-friendly partitions.
inline Rational anticommutator_boolean_same(const CumulantSequence& lambda, int n) {
  detail::require_kind(lambda, CumulantKind::boolean_kind, "anticommutator_boolean_same");
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (lambda.order() < n) throw std::invalid_argument("sequence order too small");
  Rational total = 0;
  for (const AcfEntry& entry : acf_entries(2 * n)) {
    Rational product = 1;
    for (int size : entry.colour1_sizes) product *= lambda.at(size);
    for (int size : entry.colour2_sizes) product *= lambda.at(size);
    total += product;
  }
  return 2 * total;
}

/// Independent evaluation of beta_n((ab)^eps(1),...,(ab)^eps(n)) that never
/// touches the ac-friendly machinery: write each (ab)^eps(i) as a two-atom
/// product, expand with products-as-arguments over interval partitions, and
/// evaluate every piece through the vertical-no-repeat word engine.
inline Rational oracle_joint_boolean(const FreePairModel& model, const SignedTuple& eps) {
  const int n = eps.size();
  if (n < 1) throw std::invalid_argument("tuple must be non-empty");
  std::string atoms;
  for (int i = 1; i <= n; ++i) atoms += eps.is_star(i) ? "ba" : "ab";
  return boolean_product_expansion(
      std::vector<int>(static_cast<size_t>(n), 2), [&](int lo, int hi) {
        return joint_boolean_vnrp(
            model,
            Word(atoms.substr(static_cast<size_t>(lo - 1), static_cast<size_t>(hi - lo + 1))));
      });
}

enum class CensusFilter { all, pairings, even_blocks };

inline const char* to_string(CensusFilter filter) {
  switch (filter) {
    case CensusFilter::all: return "all";
    case CensusFilter::pairings: return "pairings";
    case CensusFilter::even_blocks: return "even-blocks";
  }
  return "?";
}

/// Number of ac-friendly partitions of {1,...,two_n} in the filter class.
inline std::uint64_t census(int two_n, CensusFilter filter = CensusFilter::all) {
  std::uint64_t count = 0;
  for (const AcfEntry& entry : acf_entries(two_n)) {
    switch (filter) {
      case CensusFilter::all: ++count; break;
      case CensusFilter::pairings: count += entry.pairing ? 1 : 0; break;
      case CensusFilter::even_blocks: count += entry.all_even ? 1 : 0; break;
    }
  }
  return count;
}

/// Closed-form prediction for the filtered census, where one exists:
/// pairings live only in sizes 4m and are counted by Catalan numbers;
/// even-block partitions live only in sizes 4m with a Fuss-Catalan count.
inline Integer census_prediction(int two_n, CensusFilter filter) {
  if (two_n < 2 || two_n % 2 != 0)
    throw std::invalid_argument("ground set size must be even and positive");
  switch (filter) {
    case CensusFilter::all:
      throw std::invalid_argument("no elementary closed form; use the generating series");
    case CensusFilter::pairings:
      if (two_n % 4 != 0) return 0;
      return catalan_number(two_n / 4 - 1);
    case CensusFilter::even_blocks: {
      if (two_n % 4 != 0) return 0;
      const int m = two_n / 4;
      return 3 * binomial(4 * m - 1, m - 1) / (4 * m - 1);
    }
  }
  throw std::invalid_argument("unknown filter");
}

}  // namespace acfree
