#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "sworbit/bsgs.hpp"
#include "sworbit/perm.hpp"

namespace sworbit {

/// Primitivity is undefined for intransitive groups; reported distinctly.
class NotTransitive : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Signals corrupted orbit data (orbit length not dividing the group order).
class NonDivisible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// C(n,k) for 0 <= n <= 64; every value fits in 64 bits.
inline std::uint64_t binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int i = 0; i <= 64; ++i) {
      t[static_cast<size_t>(i)][0] = 1;
      for (int j = 1; j <= i; ++j)
        t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            t[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
            t[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
    }
    return t;
  }();
  if (n < 0 || n > 64 || k < 0) throw std::domain_error("binomial out of supported range");
  if (k > n) return 0;
  return table[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

namespace detail {

// Colexicographic rank of a k-bit mask: sum of C(position_i, i), i = 1..k
// over set-bit positions in ascending order. Bijective onto [0, C(n,k)).
inline std::uint64_t colex_rank(std::uint64_t mask) {
  std::uint64_t r = 0;
  int i = 1;
  while (mask) {
    r += binomial(std::countr_zero(mask), i++);
    mask &= mask - 1;
  }
  return r;
}

// a < b in lexicographic subset order, for masks of equal popcount:
// the lowest differing bit belongs to the smaller subset.
inline bool lex_mask_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (!diff) return false;
  return (a >> std::countr_zero(diff)) & 1;
}

}  // namespace detail

/// One orbit of the induced action on k-subsets. The representative is the
/// lexicographic minimum over the orbit; members are stored as sorted masks
/// for constant-ish membership tests.
struct OrbitRecord {
  KSubset representative;
  std::uint64_t length = 0;
  std::vector<std::uint64_t> members;

  bool contains_mask(std::uint64_t m) const {
    return std::binary_search(members.begin(), members.end(), m);
  }
};

inline bool orbit_contains(const OrbitRecord& orbit, const KSubset& t) {
  if (t.size() != orbit.representative.size())
    throw std::invalid_argument("orbit_contains: subset size mismatch");
  if (t.degree() != orbit.representative.degree())
    throw std::invalid_argument("orbit_contains: degree mismatch");
  return orbit.contains_mask(t.mask());
}

/// The full partition of the C(n,k) subsets into orbits, with a flat
/// rank-indexed orbit-id table for O(1) lookup during scans.
struct OrbitPartition {
  int degree = 0;
  int k = 0;
  std::vector<OrbitRecord> orbits;       // ordered by representative
  std::vector<std::int32_t> orbit_ids;   // indexed by colex rank

  std::uint64_t sigma() const { return orbits.size(); }

  int orbit_id_of_mask(std::uint64_t mask) const {
    return orbit_ids[static_cast<size_t>(detail::colex_rank(mask))];
  }
  int orbit_id_of(const KSubset& s) const { return orbit_id_of_mask(s.mask()); }
};

namespace detail {

inline void require_orbit_degree(int degree) {
  if (degree > 64) throw std::domain_error("orbit enumeration requires degree <= 64");
}

// Orbit BFS closure of a single mask; members come back sorted, and the
// lexicographically least member is reported separately.
inline std::pair<std::vector<std::uint64_t>, std::uint64_t> orbit_closure(
    const std::vector<Permutation>& gens, std::uint64_t start) {
  std::unordered_set<std::uint64_t> seen{start};
  std::vector<std::uint64_t> queue{start};
  std::uint64_t lexmin = start;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const std::uint64_t x = queue[qi];
    for (const auto& g : gens) {
      const std::uint64_t y = apply_mask(g, x);
      if (seen.insert(y).second) {
        queue.push_back(y);
        if (lex_mask_less(y, lexmin)) lexmin = y;
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return {std::move(queue), lexmin};
}

}  // namespace detail

/// BFS closure of S under the generators. The orbit-stabilizer identity is
/// checked against the chain's order.
inline OrbitRecord subset_orbit(const GeneratedGroup& group, const StabilizerChain& chain,
                                const KSubset& s) {
  detail::require_orbit_degree(group.degree);
  if (s.degree() != group.degree) throw std::invalid_argument("subset degree mismatch");
  auto [members, lexmin] = detail::orbit_closure(group.generators, s.mask());
  OrbitRecord rec{KSubset::from_mask(group.degree, lexmin),
                  static_cast<std::uint64_t>(members.size()), std::move(members)};
  if (chain.order() % rec.length != 0)
    throw NonDivisible("orbit length does not divide group order");
  return rec;
}

/// Partition all k-subsets into orbits with a single lexicographic sweep:
/// each unassigned subset seeds a BFS, so representatives are automatically
/// the lex-least members and orbits arrive ordered by representative.
inline OrbitPartition subset_orbits(const GeneratedGroup& group, const StabilizerChain& chain,
                                    int k) {
  detail::require_orbit_degree(group.degree);
  const int n = group.degree;
  if (k < 1 || k > n) throw std::invalid_argument("subset size out of range");
  const std::uint64_t total = binomial(n, k);
  if (total > 200'000'000) throw std::domain_error("subset space too large to partition");

  OrbitPartition part;
  part.degree = n;
  part.k = k;
  part.orbit_ids.assign(static_cast<size_t>(total), -1);

  std::vector<int> comb(static_cast<size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);  // 0-based points
  std::vector<std::uint64_t> queue;

  while (true) {
    std::uint64_t mask = 0;
    for (int c : comb) mask |= std::uint64_t{1} << c;
    const std::uint64_t r = detail::colex_rank(mask);
    if (part.orbit_ids[static_cast<size_t>(r)] < 0) {
      const auto id = static_cast<std::int32_t>(part.orbits.size());
      part.orbit_ids[static_cast<size_t>(r)] = id;
      queue.assign(1, mask);
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        const std::uint64_t x = queue[qi];
        for (const auto& g : group.generators) {
          const std::uint64_t y = apply_mask(g, x);
          auto& slot = part.orbit_ids[static_cast<size_t>(detail::colex_rank(y))];
          if (slot < 0) {
            slot = id;
            queue.push_back(y);
          }
        }
      }
      std::sort(queue.begin(), queue.end());
      OrbitRecord rec{KSubset::from_mask(n, mask), queue.size(), std::move(queue)};
      if (chain.order() % rec.length != 0)
        throw NonDivisible("orbit length does not divide group order");
      part.orbits.push_back(std::move(rec));
      queue.clear();
    }
    // next k-combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && comb[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  }
  return part;
}

/// order(chain) / orbit length; exact by the orbit-stabilizer theorem.
inline std::uint64_t setwise_stab_order(const StabilizerChain& chain, const OrbitRecord& orbit) {
  if (orbit.length == 0 || chain.order() % orbit.length != 0)
    throw NonDivisible("orbit length does not divide group order");
  return chain.order() / orbit.length;
}

/// The full setwise stabilizer {g : S^g = S} by filtering an exhaustive
/// element enumeration. Intended for small groups only; the default bound
/// covers every group this library's checks need it for.
inline GeneratedGroup setwise_stabilizer_small(const GeneratedGroup& group,
                                               const StabilizerChain& chain, const KSubset& s,
                                               std::uint64_t bound = 1'000'000) {
  detail::require_orbit_degree(group.degree);
  if (chain.order() > bound)
    throw OrderExceedsBound("setwise_stabilizer_small: order " + std::to_string(chain.order()) +
                            " exceeds bound " + std::to_string(bound));
  const std::uint64_t target = s.mask();
  std::vector<Permutation> stab;
  chain.for_each_element([&](const Permutation& g) {
    if (apply_mask(g, target) == target) stab.push_back(g);
  });
  if (stab.empty()) stab.emplace_back(group.degree);  // cannot happen: identity stabilizes
  return GeneratedGroup(group.degree, std::move(stab),
                        group.name.empty() ? "setstab" : group.name + ".setstab");
}

/// A partition of 1..n into pairwise disjoint nonempty blocks.
struct BlockPartition {
  int degree = 0;
  std::vector<std::vector<int>> blocks;
};

/// True iff every generator maps every block onto some block.
inline bool verify_blocks(const GeneratedGroup& group, const BlockPartition& partition) {
  if (partition.degree != group.degree) throw std::invalid_argument("block partition degree mismatch");
  detail::require_orbit_degree(group.degree);
  std::uint64_t covered = 0;
  std::unordered_set<std::uint64_t> block_masks;
  for (const auto& block : partition.blocks) {
    if (block.empty()) throw std::invalid_argument("empty block");
    std::uint64_t m = 0;
    for (int pt : block) {
      if (pt < 1 || pt > group.degree) throw std::invalid_argument("block point out of range");
      m |= std::uint64_t{1} << (pt - 1);
    }
    if (std::popcount(m) != static_cast<int>(block.size()) || (covered & m))
      throw std::invalid_argument("blocks must be disjoint");
    covered |= m;
    block_masks.insert(m);
  }
  const std::uint64_t all =
      group.degree == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << group.degree) - 1;
  if (covered != all) throw std::invalid_argument("blocks must cover 1..n");

  for (const auto& g : group.generators)
    for (std::uint64_t m : block_masks)
      if (!block_masks.contains(apply_mask(g, m))) return false;
  return true;
}

/// Minimal block system in which alpha and beta share a block (union-find
/// closure over generator images).
inline BlockPartition minimal_block_partition(const GeneratedGroup& group, int alpha, int beta) {
  const int n = group.degree;
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  // merge returns the absorbed root, or -1 if already equal
  auto merge = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return -1;
    if (x > y) std::swap(x, y);
    parent[static_cast<size_t>(y)] = x;
    return y;
  };

  std::vector<int> pending;
  if (int absorbed = merge(alpha - 1, beta - 1); absorbed >= 0) pending.push_back(absorbed);
  for (size_t qi = 0; qi < pending.size(); ++qi) {
    const int gamma = pending[qi];
    const int kappa = find(gamma);
    for (const auto& g : group.generators) {
      const int dg = g(gamma + 1) - 1;
      const int dk = g(kappa + 1) - 1;
      if (int absorbed = merge(dg, dk); absorbed >= 0) pending.push_back(absorbed);
    }
  }

  std::vector<std::vector<int>> buckets(static_cast<size_t>(n));
  for (int pt = 0; pt < n; ++pt) buckets[static_cast<size_t>(find(pt))].push_back(pt + 1);
  BlockPartition out;
  out.degree = n;
  for (auto& b : buckets)
    if (!b.empty()) out.blocks.push_back(std::move(b));
  return out;
}

inline bool is_transitive(const GeneratedGroup& group) {
  std::vector<bool> seen(static_cast<size_t>(group.degree), false);
  std::vector<int> queue{1};
  seen[0] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& g : group.generators) {
      const int img = g(queue[qi]);
      if (!seen[static_cast<size_t>(img - 1)]) {
        seen[static_cast<size_t>(img - 1)] = true;
        queue.push_back(img);
      }
    }
  return queue.size() == static_cast<size_t>(group.degree);
}

/// True iff the only block systems are trivial, via minimal-block closure of
/// each pair (1, beta). Throws NotTransitive when primitivity is undefined.
inline bool is_primitive(const GeneratedGroup& group, const StabilizerChain& chain) {
  (void)chain;
  if (!is_transitive(group)) throw NotTransitive("primitivity undefined: group is not transitive");
  for (int beta = 2; beta <= group.degree; ++beta)
    if (minimal_block_partition(group, 1, beta).blocks.size() > 1) return false;
  return true;
}

}  // namespace sworbit
