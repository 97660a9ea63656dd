#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acfree {

/// Materializing enumeration is capped here; the callback-based visitors can
/// go just as far but without holding the whole set in memory.
inline constexpr int kMaxEnumerationSize = 20;

/// A set partition of {1,...,n} in canonical form: blocks sorted by their
/// minimum element, each block listing its elements in increasing order.
/// Equality and ordering are equality/ordering of canonical forms.
class Partition {
 public:
  using Block = std::vector<int>;

  Partition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    canonicalize_and_validate();
  }

  static Partition singletons(int n) {
    std::vector<Block> blocks(static_cast<size_t>(require_positive(n)));
    for (int i = 1; i <= n; ++i) blocks[static_cast<size_t>(i - 1)] = {i};
    return Partition(canonical_tag{}, n, std::move(blocks));
  }

  static Partition full(int n) {
    Block all(static_cast<size_t>(require_positive(n)));
    for (int i = 1; i <= n; ++i) all[static_cast<size_t>(i - 1)] = i;
    return Partition(canonical_tag{}, n, {std::move(all)});
  }

  /// Trusted constructor for enumeration internals: `blocks` must already be
  /// canonical and a genuine partition of {1,...,n}.
  static Partition from_canonical(int n, std::vector<Block> blocks) {
    return Partition(canonical_tag{}, n, std::move(blocks));
  }

  int n() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Block& block(int index) const { return blocks_[static_cast<size_t>(index)]; }

  int block_index_of(int element) const {
    if (element < 1 || element > n_) throw std::invalid_argument("element out of range");
    return block_of_[static_cast<size_t>(element)];
  }

  /// Text form "{{1,4},{2,3}}".
  std::string to_string() const {
    std::string out = "{";
    for (size_t b = 0; b < blocks_.size(); ++b) {
      if (b > 0) out += ',';
      out += '{';
      for (size_t i = 0; i < blocks_[b].size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(blocks_[b][i]);
      }
      out += '}';
    }
    out += '}';
    return out;
  }

  /// Inverse of to_string; accepts blocks/elements in any order and
  /// canonicalizes.  Throws std::invalid_argument on malformed input.
  static Partition parse(const std::string& text);

  bool operator==(const Partition& other) const {
    return n_ == other.n_ && blocks_ == other.blocks_;
  }
  std::strong_ordering operator<=>(const Partition& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    return blocks_ <=> other.blocks_;
  }

 private:
  struct canonical_tag {};
  Partition(canonical_tag, int n, std::vector<Block> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    index_blocks();
  }

  static int require_positive(int n) {
    if (n < 1) throw std::invalid_argument("partition ground set must be non-empty");
    return n;
  }

  void canonicalize_and_validate() {
    require_positive(n_);
    for (auto& block : blocks_) {
      if (block.empty()) throw std::invalid_argument("empty block");
      std::sort(block.begin(), block.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
    index_blocks();
  }

  void index_blocks() {
    block_of_.assign(static_cast<size_t>(n_) + 1, -1);
    size_t covered = 0;
    for (size_t b = 0; b < blocks_.size(); ++b) {
      for (int element : blocks_[b]) {
        if (element < 1 || element > n_) throw std::invalid_argument("element out of range");
        if (block_of_[static_cast<size_t>(element)] != -1)
          throw std::invalid_argument("blocks are not disjoint");
        block_of_[static_cast<size_t>(element)] = static_cast<int>(b);
      }
      covered += blocks_[b].size();
    }
    if (covered != static_cast<size_t>(n_))
      throw std::invalid_argument("blocks do not cover the ground set");
  }

  int n_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;  // element -> block index; entry 0 unused
};

inline Partition Partition::parse(const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (pos >= text.size() || text[pos] != ch)
      throw std::invalid_argument("malformed partition: '" + text + "'");
    ++pos;
  };
  auto parse_int = [&]() -> int {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("malformed partition: '" + text + "'");
    return std::stoi(text.substr(start, pos - start));
  };

  expect('{');
  std::vector<Partition::Block> blocks;
  int max_element = 0;
  skip_ws();
  while (pos < text.size() && text[pos] != '}') {
    expect('{');
    Partition::Block block;
    skip_ws();
    while (pos < text.size() && text[pos] != '}') {
      block.push_back(parse_int());
      max_element = std::max(max_element, block.back());
      skip_ws();
      if (pos < text.size() && text[pos] == ',') ++pos;
      skip_ws();
    }
    expect('}');
    blocks.push_back(std::move(block));
    skip_ws();
    if (pos < text.size() && text[pos] == ',') ++pos;
    skip_ws();
  }
  expect('}');
  skip_ws();
  if (pos != text.size()) throw std::invalid_argument("trailing characters in partition text");
  return Partition(max_element, std::move(blocks));
}

struct PartitionClassification {
  bool is_noncrossing = false;
  bool is_interval = false;
};

/// Nesting structure of a non-crossing partition, computed in a single
/// left-to-right scan: per-block depth, parent block, the outer blocks in
/// left-to-right order, and the canonical alternating 2-colouring (block of 1
/// coloured 1, consecutive outer blocks alternating, children differing from
/// parents).
struct NestingInfo {
  std::vector<int> block_of;      // element -> block index; entry 0 unused
  std::vector<int> depth;         // per block
  std::vector<int> parent;        // per block; -1 for outer blocks
  std::vector<int> calt;          // per block; colours 1 and 2
  std::vector<int> outer_blocks;  // left to right
  std::vector<int> stack;         // scratch

  int depth_of(int element) const { return depth[static_cast<size_t>(block_of[static_cast<size_t>(element)])]; }
  int calt_of(int element) const { return calt[static_cast<size_t>(block_of[static_cast<size_t>(element)])]; }
};

/// Fills `info` for the given blocks (canonical order required); returns
/// false when the partition is crossing.  Reuses the vectors in `info`, so a
/// caller iterating millions of partitions does not allocate.
inline bool try_nesting_info(int n, const std::vector<Partition::Block>& blocks,
                             NestingInfo& info) {
  const size_t k = blocks.size();
  info.block_of.assign(static_cast<size_t>(n) + 1, -1);
  info.depth.assign(k, 0);
  info.parent.assign(k, -1);
  info.calt.assign(k, 0);
  info.outer_blocks.clear();
  info.stack.clear();
  for (size_t b = 0; b < k; ++b)
    for (int element : blocks[b]) info.block_of[static_cast<size_t>(element)] = static_cast<int>(b);

  for (int i = 1; i <= n; ++i) {
    const int b = info.block_of[static_cast<size_t>(i)];
    const auto& block = blocks[static_cast<size_t>(b)];
    if (i == block.front()) {
      info.depth[static_cast<size_t>(b)] = static_cast<int>(info.stack.size());
      if (info.stack.empty()) {
        info.parent[static_cast<size_t>(b)] = -1;
        info.calt[static_cast<size_t>(b)] = 1 + (static_cast<int>(info.outer_blocks.size()) & 1);
        info.outer_blocks.push_back(b);
      } else {
        info.parent[static_cast<size_t>(b)] = info.stack.back();
        info.calt[static_cast<size_t>(b)] = 3 - info.calt[static_cast<size_t>(info.stack.back())];
      }
      info.stack.push_back(b);
    }
    if (info.stack.empty() || info.stack.back() != b) return false;
    if (i == block.back()) info.stack.pop_back();
  }
  return true;
}

inline NestingInfo nesting_info(const Partition& p) {
  NestingInfo info;
  if (!try_nesting_info(p.n(), p.blocks(), info))
    throw std::invalid_argument("partition is crossing: " + p.to_string());
  return info;
}

inline bool is_noncrossing(const Partition& p) {
  NestingInfo scratch;
  return try_nesting_info(p.n(), p.blocks(), scratch);
}

inline bool is_interval(const Partition& p) {
  for (const auto& block : p.blocks())
    if (block.back() - block.front() + 1 != static_cast<int>(block.size())) return false;
  return true;
}

inline PartitionClassification classify(const Partition& p) {
  PartitionClassification c;
  c.is_interval = is_interval(p);
  c.is_noncrossing = c.is_interval || is_noncrossing(p);
  return c;
}

/// Depth of the block containing `element`: the length, minus one, of its
/// chain of nesting blocks.
inline int depth(const Partition& p, int element) {
  if (element < 1 || element > p.n()) throw std::invalid_argument("element out of range");
  return nesting_info(p).depth_of(element);
}

/// Minimal strictly-nesting block, or nullopt when the block is outer.
inline std::optional<int> parent_block(const Partition& p, int block_index) {
  if (block_index < 0 || block_index >= p.block_count())
    throw std::invalid_argument("block index out of range");
  const int parent = nesting_info(p).parent[static_cast<size_t>(block_index)];
  return parent < 0 ? std::nullopt : std::optional<int>(parent);
}

struct OuterData {
  std::vector<int> outer_blocks;  // block indices, left to right
  std::vector<int> outermax;      // maxima of the outer blocks, increasing
  Partition closure;              // interval partition of the outer spans
};

inline OuterData outer_data(const Partition& p) {
  const NestingInfo info = nesting_info(p);
  std::vector<Partition::Block> spans;
  std::vector<int> outermax;
  for (int b : info.outer_blocks) {
    const auto& block = p.block(b);
    Partition::Block span;
    for (int i = block.front(); i <= block.back(); ++i) span.push_back(i);
    spans.push_back(std::move(span));
    outermax.push_back(block.back());
  }
  return OuterData{info.outer_blocks, std::move(outermax),
                   Partition::from_canonical(p.n(), std::move(spans))};
}

// ---------------------------------------------------------------------------
// Reverse-refinement order and the full-partition-lattice join/meet.
// ---------------------------------------------------------------------------

/// p <= q in reverse refinement: every block of q is a union of blocks of p.
inline bool leq(const Partition& p, const Partition& q) {
  if (p.n() != q.n()) throw std::invalid_argument("partitions live on different ground sets");
  for (const auto& block : p.blocks()) {
    const int target = q.block_index_of(block.front());
    for (int element : block)
      if (q.block_index_of(element) != target) return false;
  }
  return true;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i) parent_[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Join in the lattice of all set partitions (connectivity closure of block
/// overlap).  This coincides with the interval-lattice join on Int(n), which
/// is the only join the library relies on.
inline Partition join(const Partition& p, const Partition& q) {
  if (p.n() != q.n()) throw std::invalid_argument("partitions live on different ground sets");
  detail::UnionFind uf(p.n() + 1);
  for (const auto* part : {&p, &q})
    for (const auto& block : part->blocks())
      for (size_t i = 1; i < block.size(); ++i) uf.unite(block[i - 1], block[i]);
  std::map<int, Partition::Block> groups;
  for (int i = 1; i <= p.n(); ++i) groups[uf.find(i)].push_back(i);
  std::vector<Partition::Block> blocks;
  blocks.reserve(groups.size());
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return Partition(p.n(), std::move(blocks));
}

/// Meet: common refinement, i.e. blockwise intersections.
inline Partition meet(const Partition& p, const Partition& q) {
  if (p.n() != q.n()) throw std::invalid_argument("partitions live on different ground sets");
  std::map<std::pair<int, int>, Partition::Block> groups;
  for (int i = 1; i <= p.n(); ++i)
    groups[{p.block_index_of(i), q.block_index_of(i)}].push_back(i);
  std::vector<Partition::Block> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, members] : groups) blocks.push_back(std::move(members));
  return Partition(p.n(), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Kreweras complementation.
// ---------------------------------------------------------------------------

/// Interleaving pi^(odd) ⊔ rho^(even) on {1,...,2n}: pi placed on the odd
/// positions, rho on the even positions.
inline Partition interleave(const Partition& pi, const Partition& rho) {
  if (pi.n() != rho.n()) throw std::invalid_argument("partitions live on different ground sets");
  std::vector<Partition::Block> blocks;
  for (const auto& block : pi.blocks()) {
    Partition::Block image;
    for (int element : block) image.push_back(2 * element - 1);
    blocks.push_back(std::move(image));
  }
  for (const auto& block : rho.blocks()) {
    Partition::Block image;
    for (int element : block) image.push_back(2 * element);
    blocks.push_back(std::move(image));
  }
  return Partition(2 * pi.n(), std::move(blocks));
}

/// Kreweras complement: the maximal rho (reverse refinement) such that
/// pi^(odd) ⊔ rho^(even) is non-crossing.  Direct construction: i and j
/// (i < j) end up in the same block of Kr(pi) exactly when {i+1,...,j} is a
/// union of blocks of pi.
inline Partition kreweras(const Partition& pi) {
  if (!is_noncrossing(pi)) throw std::invalid_argument("kreweras: partition is crossing");
  const int n = pi.n();
  const int k = pi.block_count();
  auto is_union_of_blocks = [&](int lo, int hi) {
    for (int b = 0; b < k; ++b) {
      const auto& block = pi.block(b);
      const auto it = std::lower_bound(block.begin(), block.end(), lo);
      const bool intersects = it != block.end() && *it <= hi;
      const bool contained  = block.front() >= lo && block.back() <= hi;
      if (intersects && !contained) return false;
    }
    return true;
  };
  detail::UnionFind uf(n + 1);
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (is_union_of_blocks(i + 1, j)) uf.unite(i, j);
  std::map<int, Partition::Block> groups;
  for (int i = 1; i <= n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<Partition::Block> blocks;
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return Partition(n, std::move(blocks));
}

// ---------------------------------------------------------------------------
// The partial order << and block-projections.
// ---------------------------------------------------------------------------

/// p << q: p <= q and every block W of q contains a block V of p with
/// min(W), max(W) both in V.
inline bool ll_leq(const Partition& p, const Partition& q) {
  if (!leq(p, q)) return false;
  for (const auto& block : q.blocks())
    if (p.block_index_of(block.front()) != p.block_index_of(block.back())) return false;
  return true;
}

/// An idempotent, nesting-monotone, extensive self-map of the blocks of a
/// non-crossing partition.  These maps parametrize the partitions lying
/// <<-above the base.
struct BlockProjection {
  Partition base;
  std::vector<int> image;  // image[b] = index of the image of block b
};

inline bool is_valid_block_projection(const BlockProjection& phi) {
  const int k = phi.base.block_count();
  if (static_cast<int>(phi.image.size()) != k) return false;
  auto nests_leq = [&](int a, int b) {
    return phi.base.block(b).front() <= phi.base.block(a).front() &&
           phi.base.block(b).back() >= phi.base.block(a).back();
  };
  for (int b = 0; b < k; ++b) {
    const int image = phi.image[static_cast<size_t>(b)];
    if (image < 0 || image >= k) return false;
    if (phi.image[static_cast<size_t>(image)] != image) return false;  // idempotent
    if (!nests_leq(b, image)) return false;                            // extensive
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (nests_leq(a, b) &&
          !nests_leq(phi.image[static_cast<size_t>(a)], phi.image[static_cast<size_t>(b)]))
        return false;  // monotone for nesting
  return true;
}

/// The unique block-projection whose range is `marked`, built by chasing the
/// parent map until a marked block is reached.  `marked` must contain every
/// outer block of p.
inline BlockProjection projection_from_marked(const Partition& p,
                                              const std::vector<int>& marked) {
  const NestingInfo info = nesting_info(p);
  const int k = p.block_count();
  std::vector<char> is_marked(static_cast<size_t>(k), 0);
  for (int b : marked) {
    if (b < 0 || b >= k) throw std::invalid_argument("marked block index out of range");
    is_marked[static_cast<size_t>(b)] = 1;
  }
  for (int b : info.outer_blocks)
    if (!is_marked[static_cast<size_t>(b)])
      throw std::invalid_argument("marked set must contain every outer block");
  std::vector<int> image(static_cast<size_t>(k), -1);
  // Blocks in canonical order have parents appearing earlier in any chain, so
  // a simple memoized chase terminates.
  auto chase = [&](auto&& self, int b) -> int {
    if (image[static_cast<size_t>(b)] != -1) return image[static_cast<size_t>(b)];
    int result = is_marked[static_cast<size_t>(b)]
                     ? b
                     : self(self, info.parent[static_cast<size_t>(b)]);
    image[static_cast<size_t>(b)] = result;
    return result;
  };
  for (int b = 0; b < k; ++b) chase(chase, b);
  return BlockProjection{p, std::move(image)};
}

/// The unique rho >> base whose induced projection is phi: each block of rho
/// is the union of a fibre of phi.
inline Partition partition_from_projection(const BlockProjection& phi) {
  std::map<int, Partition::Block> fibres;
  for (int b = 0; b < phi.base.block_count(); ++b) {
    auto& members = fibres[phi.image[static_cast<size_t>(b)]];
    const auto& block = phi.base.block(b);
    members.insert(members.end(), block.begin(), block.end());
  }
  std::vector<Partition::Block> blocks;
  for (auto& [root, members] : fibres) blocks.push_back(std::move(members));
  return Partition(phi.base.n(), std::move(blocks));
}

/// Blocks B of p that span their containing block X of q:
/// min(B) = min(X) and max(B) = max(X).  Requires p << q.
inline std::vector<int> special_blocks(const Partition& p, const Partition& q) {
  if (!ll_leq(p, q)) throw std::invalid_argument("special_blocks requires p << q");
  std::vector<int> result;
  for (int b = 0; b < p.block_count(); ++b) {
    const auto& block = p.block(b);
    const auto& host  = q.block(q.block_index_of(block.front()));
    if (block.front() == host.front() && block.back() == host.back()) result.push_back(b);
  }
  return result;
}

/// The block-projection induced by a pair p << q: each block maps to the
/// q-special block spanning its q-block.
inline BlockProjection projection_between(const Partition& p, const Partition& q) {
  if (!ll_leq(p, q)) throw std::invalid_argument("projection_between requires p << q");
  std::vector<int> span_block(static_cast<size_t>(q.block_count()), -1);
  for (int b = 0; b < p.block_count(); ++b) {
    const auto& block = p.block(b);
    const int host = q.block_index_of(block.front());
    const auto& host_block = q.block(host);
    if (block.front() == host_block.front() && block.back() == host_block.back())
      span_block[static_cast<size_t>(host)] = b;
  }
  std::vector<int> image(static_cast<size_t>(p.block_count()));
  for (int b = 0; b < p.block_count(); ++b)
    image[static_cast<size_t>(b)] = span_block[static_cast<size_t>(q.block_index_of(p.block(b).front()))];
  return BlockProjection{p, std::move(image)};
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

namespace detail {

template <class Visitor>
struct NcEnumerator {
  Visitor& visit;
  std::vector<Partition::Block> blocks;
  std::vector<std::pair<int, int>> pending;  // disjoint intervals, leftmost on top

  void run(int n) {
    pending.emplace_back(1, n);
    descend();
  }

  void descend() {
    if (pending.empty()) {
      visit(blocks);
      return;
    }
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    blocks.push_back({lo});
    extend(blocks.size() - 1, hi);
    blocks.pop_back();
    pending.emplace_back(lo, hi);
  }

  void extend(size_t bi, int hi) {
    const int last = blocks[bi].back();
    // Close the block here: the gaps it leaves behind become pending
    // intervals, pushed right-to-left so the leftmost is processed first.
    {
      size_t pushed = 0;
      if (last < hi) {
        pending.emplace_back(last + 1, hi);
        ++pushed;
      }
      for (size_t t = blocks[bi].size(); t >= 2; --t) {
        const int gap_lo = blocks[bi][t - 2] + 1;
        const int gap_hi = blocks[bi][t - 1] - 1;
        if (gap_lo <= gap_hi) {
          pending.emplace_back(gap_lo, gap_hi);
          ++pushed;
        }
      }
      descend();
      pending.resize(pending.size() - pushed);
    }
    // Or grow it with a later element of the interval.
    for (int e = last + 1; e <= hi; ++e) {
      blocks[bi].push_back(e);
      extend(bi, hi);
      blocks[bi].pop_back();
    }
  }
};

}  // namespace detail

/// Visits every non-crossing partition of {1,...,n} exactly once, in the
/// deterministic order given by recursive first-block decomposition.  The
/// block buffer handed to `visit` is in canonical form and is reused between
/// calls; copy it to keep it.
template <class Visitor>
void for_each_nc(int n, Visitor&& visit) {
  if (n < 1) throw std::invalid_argument("ground set must be non-empty");
  if (n > kMaxEnumerationSize) throw std::invalid_argument("enumeration size guard exceeded");
  detail::NcEnumerator<Visitor> enumerator{visit};
  enumerator.run(n);
}

inline std::vector<Partition> enumerate_nc(int n) {
  std::vector<Partition> result;
  for_each_nc(n, [&](const std::vector<Partition::Block>& blocks) {
    result.push_back(Partition::from_canonical(n, blocks));
  });
  return result;
}

inline std::vector<Partition> enumerate_interval(int n) {
  if (n < 1) throw std::invalid_argument("ground set must be non-empty");
  if (n > kMaxEnumerationSize) throw std::invalid_argument("enumeration size guard exceeded");
  std::vector<Partition> result;
  result.reserve(static_cast<size_t>(1) << (n - 1));
  for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    std::vector<Partition::Block> blocks;
    Partition::Block current = {1};
    for (int i = 2; i <= n; ++i) {
      if (cuts & (1u << (i - 2))) {
        blocks.push_back(std::move(current));
        current = {i};
      } else {
        current.push_back(i);
      }
    }
    blocks.push_back(std::move(current));
    result.push_back(Partition::from_canonical(n, std::move(blocks)));
  }
  return result;
}

}  // namespace acfree
