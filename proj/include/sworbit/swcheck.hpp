#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sworbit/action.hpp"
#include "sworbit/bsgs.hpp"
#include "sworbit/perm.hpp"

namespace sworbit {

struct SwExtension {
  int point = 0;                 // beta, not in delta
  std::uint64_t length = 0;      // |(delta u {beta})^G|
};

/// A k-orbit whose length strictly exceeds every (k+1)-extension's length.
/// Only constructed when big_n > big_l holds.
struct SwWitness {
  int k = 0;
  KSubset delta;                 // lex-least orbit representative
  std::uint64_t big_n = 0;       // |delta^G|
  std::uint64_t big_l = 0;       // max extension orbit length
  std::vector<SwExtension> extensions;  // every beta not in delta, ascending
};

/// Default scan range 2..floor(n/2)-1. The lower end includes 2 so the
/// degree-6 classification row is reachable; the upper end matches the
/// exhaustive-search loop this scan reimplements.
inline std::pair<int, int> default_k_range(int degree) { return {2, degree / 2 - 1}; }

/// Witness report line, fixed for golden tests:
/// `SW k=<k> group=<name> delta={a,b,c} N=<N> L=<L>`.
inline std::string witness_line(const SwWitness& w, const std::string& group_name) {
  return "SW k=" + std::to_string(w.k) + " group=" + group_name +
         " delta=" + print_subset(w.delta) + " N=" + std::to_string(w.big_n) +
         " L=" + std::to_string(w.big_l);
}

/// Scan k in [k_lo, k_hi]: for each k-orbit representative T with N = |T^G|,
/// resolve every extension length |(T u {beta})^G| by orbit-id lookup in the
/// (k+1)-partition and emit a witness iff N exceeds them all. Consecutive k
/// share one partition, so each subset size is swept exactly once.
inline std::vector<SwWitness> sw_scan(const GeneratedGroup& group, const StabilizerChain& chain,
                                      int k_lo, int k_hi) {
  const int n = group.degree;
  std::vector<SwWitness> out;
  if (k_lo > k_hi) return out;
  if (k_lo < 1 || k_hi > n - 1) throw std::invalid_argument("k range outside [1, n-1]");

  OrbitPartition lower = subset_orbits(group, chain, k_lo);
  for (int k = k_lo; k <= k_hi; ++k) {
    OrbitPartition upper = subset_orbits(group, chain, k + 1);
    for (const auto& orb : lower.orbits) {
      const std::uint64_t rep = orb.representative.mask();
      std::vector<SwExtension> exts;
      exts.reserve(static_cast<size_t>(n - k));
      std::uint64_t big_l = 0;
      for (int beta = 1; beta <= n; ++beta) {
        const std::uint64_t bit = std::uint64_t{1} << (beta - 1);
        if (rep & bit) continue;
        const int id = upper.orbit_id_of_mask(rep | bit);
        const std::uint64_t len = upper.orbits[static_cast<size_t>(id)].length;
        exts.push_back({beta, len});
        big_l = std::max(big_l, len);
      }
      if (orb.length > big_l)
        out.push_back({k, orb.representative, orb.length, big_l, std::move(exts)});
    }
    lower = std::move(upper);
  }
  return out;
}

/// The double-count data of the removal/extension identity: for delta of
/// size k and sigma of size k+1, d counts points of sigma whose removal
/// lands in delta's orbit, u counts points whose addition to delta lands in
/// sigma's orbit. When delta is contained in sigma, d|sigma^G| = u|delta^G|
/// exactly (counting edges of the containment graph both ways).
struct UdCounts {
  int u = 0;
  int d = 0;
  std::uint64_t delta_len = 0;
  std::uint64_t sigma_len = 0;
  bool nested = false;  // delta contained in sigma (identity asserted then)
};

inline UdCounts ud_counts(const GeneratedGroup& group, const StabilizerChain& chain,
                          const KSubset& delta, const KSubset& sigma) {
  if (sigma.size() != delta.size() + 1)
    throw std::invalid_argument("ud_counts: |sigma| must be |delta| + 1");
  const OrbitRecord orb_d = subset_orbit(group, chain, delta);
  const OrbitRecord orb_s = subset_orbit(group, chain, sigma);

  UdCounts out;
  out.delta_len = orb_d.length;
  out.sigma_len = orb_s.length;
  out.nested = (delta.mask() & sigma.mask()) == delta.mask();
  for (int alpha : sigma.members())
    if (orb_d.contains_mask(sigma.mask() & ~(std::uint64_t{1} << (alpha - 1)))) ++out.d;
  for (int beta = 1; beta <= group.degree; ++beta) {
    const std::uint64_t bit = std::uint64_t{1} << (beta - 1);
    if (delta.mask() & bit) continue;
    if (orb_s.contains_mask(delta.mask() | bit)) ++out.u;
  }
  if (out.nested &&
      static_cast<std::uint64_t>(out.d) * out.sigma_len !=
          static_cast<std::uint64_t>(out.u) * out.delta_len)
    throw std::logic_error("counting identity violated for nested subsets");
  return out;
}

/// True iff the witness orbit has maximal length among all orbits on
/// 3-subsets. Defined for k = 3 witnesses only.
inline bool max_orbit_check(const GeneratedGroup& group, const StabilizerChain& chain,
                            const SwWitness& witness) {
  if (witness.k != 3) throw std::invalid_argument("max_orbit_check requires a k=3 witness");
  const OrbitPartition part = subset_orbits(group, chain, 3);
  std::uint64_t best = 0;
  for (const auto& orb : part.orbits) best = std::max(best, orb.length);
  return witness.big_n == best;
}

struct Sw1Extension {
  int point = 0;                              // beta
  std::uint64_t sigma_len = 0;                // |sigma^G|
  std::uint64_t delta_orbit_in_sigma_stab = 0;  // |delta^{G_sigma}|
  std::uint64_t sigma_orbit_in_delta_stab = 0;  // |sigma^{G_delta}|
  bool holds = false;                         // k+1 >= a > b >= 1
};

struct Sw1Report {
  int k = 0;
  KSubset delta;
  bool pair_coverage = false;  // every 2-subset appears in some G-image of delta
  bool all_hold = false;
  std::vector<Sw1Extension> extensions;  // only extensions with |sigma^G| < |delta^G|
};

/// For each extension sigma = delta u {beta} with |sigma^G| < |delta^G|,
/// computes the orbit of delta under the setwise stabilizer of sigma and of
/// sigma under the setwise stabilizer of delta, and reports whether
/// k+1 >= |delta^{G_sigma}| > |sigma^{G_delta}| >= 1. Also reports whether
/// the orbit of delta covers every 2-subset of the ground set (the input to
/// the primitive/imprimitive dichotomy).
inline Sw1Report sw1_chain_check(const GeneratedGroup& group, const StabilizerChain& chain,
                                 const SwWitness& witness, std::uint64_t bound = 1'000'000) {
  Sw1Report report;
  report.k = witness.k;
  report.delta = witness.delta;

  const OrbitRecord orb_d = subset_orbit(group, chain, witness.delta);
  {
    const int n = group.degree;
    std::vector<std::uint64_t> covered(static_cast<size_t>(n), 0);
    for (std::uint64_t m : orb_d.members) {
      std::uint64_t rest = m;
      while (rest) {
        const int a = std::countr_zero(rest);
        rest &= rest - 1;
        covered[static_cast<size_t>(a)] |= rest;
      }
    }
    report.pair_coverage = true;
    for (int a = 0; a < n - 1 && report.pair_coverage; ++a) {
      const std::uint64_t want = ((std::uint64_t{1} << (n - 1 - a)) - 1) << (a + 1);
      if ((covered[static_cast<size_t>(a)] & want) != want) report.pair_coverage = false;
    }
  }

  const GeneratedGroup stab_delta = setwise_stabilizer_small(group, chain, witness.delta, bound);
  report.all_hold = true;
  for (const auto& ext : witness.extensions) {
    if (ext.length >= witness.big_n) continue;
    const std::uint64_t bit = std::uint64_t{1} << (ext.point - 1);
    const KSubset sigma = KSubset::from_mask(group.degree, witness.delta.mask() | bit);
    const GeneratedGroup stab_sigma = setwise_stabilizer_small(group, chain, sigma, bound);

    const auto a = detail::orbit_closure(stab_sigma.generators, witness.delta.mask()).first.size();
    const auto b = detail::orbit_closure(stab_delta.generators, sigma.mask()).first.size();
    Sw1Extension row;
    row.point = ext.point;
    row.sigma_len = ext.length;
    row.delta_orbit_in_sigma_stab = a;
    row.sigma_orbit_in_delta_stab = b;
    row.holds = static_cast<std::uint64_t>(witness.k + 1) >= a && a > b && b >= 1;
    if (!row.holds) report.all_hold = false;
    report.extensions.push_back(row);
  }
  return report;
}

}  // namespace sworbit
