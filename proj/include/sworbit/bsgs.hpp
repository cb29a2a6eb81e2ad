#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sworbit/perm.hpp"

namespace sworbit {

/// Raised when full element enumeration is requested for a group whose order
/// exceeds the caller's bound; the caller must use a different method.
class OrderExceedsBound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A permutation group given by generators. The identity may be present among
/// the generators but contributes nothing.
struct GeneratedGroup {
  int degree = 0;
  std::vector<Permutation> generators;
  std::string name;

  GeneratedGroup(int deg, std::vector<Permutation> gens, std::string nm = {})
      : degree(deg), generators(std::move(gens)), name(std::move(nm)) {
    if (generators.empty()) throw std::invalid_argument("group needs at least one generator");
    for (const auto& g : generators)
      if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
  }
};

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Level i holds the fundamental orbit of its base point under the strong
/// generators that fix all earlier base points, together with an explicit
/// transversal (transversal[j] maps base_point to orbit[j]). The product of
/// fundamental orbit sizes is the group order; a permutation lies in the
/// group iff it sifts to the identity.
class StabilizerChain {
public:
  struct Level {
    int base_point = 0;                    // 1-based
    std::vector<Permutation> strong_gens;  // all fix earlier base points
    std::vector<int> orbit;                // discovery (BFS) order
    std::vector<int> slot;                 // slot[pt-1] = index into orbit, or -1
    std::vector<Permutation> transversal;  // parallel to orbit
  };

  int degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  std::vector<int> base() const {
    std::vector<int> b;
    for (const auto& lv : levels_) b.push_back(lv.base_point);
    return b;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& lv : levels_) o *= lv.orbit.size();
    return o;
  }

  /// True iff p sifts to the identity through the chain.
  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) throw std::invalid_argument("degree mismatch in contains");
    auto [residue, level] = sift(p, 0);
    (void)level;
    return residue.is_identity();
  }

  /// Sift p through levels [from..end); returns the residue and the level at
  /// which sifting stopped (levels().size() if it ran through).
  std::pair<Permutation, size_t> sift(Permutation p, size_t from) const {
    for (size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      const int image = p(lv.base_point);
      const int idx = lv.slot[static_cast<size_t>(image - 1)];
      if (idx < 0) return {std::move(p), l};
      p = compose(p, inverse(lv.transversal[static_cast<size_t>(idx)]));
    }
    return {std::move(p), levels_.size()};
  }

  /// Visit each group element exactly once (transversal product enumeration),
  /// in an order determined by the chain alone.
  template <typename Fn>
  void for_each_element(Fn&& fn) const {
    enumerate_from(0, Permutation(degree_), fn);
  }

  /// Materialize all elements; throws OrderExceedsBound if order() > bound.
  std::vector<Permutation> elements_up_to(std::uint64_t bound) const {
    if (order() > bound)
      throw OrderExceedsBound("group order " + std::to_string(order()) +
                              " exceeds enumeration bound " + std::to_string(bound));
    std::vector<Permutation> out;
    out.reserve(static_cast<size_t>(order()));
    for_each_element([&](const Permutation& p) { out.push_back(p); });
    return out;
  }

  friend StabilizerChain build_chain(const GeneratedGroup& group);

private:
  explicit StabilizerChain(int degree) : degree_(degree) {}

  template <typename Fn>
  void enumerate_from(size_t i, const Permutation& outer, Fn& fn) const {
    if (i == levels_.size()) {
      fn(outer);
      return;
    }
    for (const auto& u : levels_[i].transversal) enumerate_from(i + 1, compose(u, outer), fn);
  }

  int degree_;
  std::vector<Level> levels_;
};

namespace detail {

inline void recompute_level(StabilizerChain::Level& lv, int degree) {
  lv.orbit.assign(1, lv.base_point);
  lv.transversal.assign(1, Permutation(degree));
  lv.slot.assign(static_cast<size_t>(degree), -1);
  lv.slot[static_cast<size_t>(lv.base_point - 1)] = 0;
  for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
    for (const auto& s : lv.strong_gens) {
      const int img = s(lv.orbit[qi]);
      if (lv.slot[static_cast<size_t>(img - 1)] < 0) {
        lv.slot[static_cast<size_t>(img - 1)] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(img);
        lv.transversal.push_back(compose(lv.transversal[qi], s));
      }
    }
  }
}

// Least point moved by any of the permutations; 0 if all are the identity.
inline int least_moved(const std::vector<Permutation>& perms) {
  int best = 0;
  for (const auto& p : perms) {
    const int m = p.least_moved_point();
    if (m != 0 && (best == 0 || m < best)) best = m;
  }
  return best;
}

}  // namespace detail

/// Classical deterministic Schreier-Sims. Base points are chosen as the least
/// point moved by a current strong generator at each level, so the chain is a
/// function of the generator list alone.
inline StabilizerChain build_chain(const GeneratedGroup& group) {
  StabilizerChain chain(group.degree);

  std::vector<Permutation> gens;
  for (const auto& g : group.generators)
    if (!g.is_identity()) gens.push_back(g);
  if (gens.empty()) return chain;  // trivial group, empty chain

  auto& levels = chain.levels_;
  {
    StabilizerChain::Level l0;
    l0.base_point = detail::least_moved(gens);
    l0.strong_gens = gens;
    detail::recompute_level(l0, group.degree);
    levels.push_back(std::move(l0));
  }

  // Verify levels deepest-first: every Schreier generator of level i must
  // sift to the identity through the deeper levels. A failed sift adds the
  // residue as a strong generator on levels i+1..j and restarts at j.
  size_t i = 0;
  while (true) {
    bool restarted = false;
    for (size_t oi = 0; oi < levels[i].orbit.size() && !restarted; ++oi) {
      for (size_t si = 0; si < levels[i].strong_gens.size() && !restarted; ++si) {
        const int beta = levels[i].orbit[oi];
        const Permutation& s = levels[i].strong_gens[si];
        const int beta_s = s(beta);
        const int idx = levels[i].slot[static_cast<size_t>(beta_s - 1)];
        Permutation schreier =
            compose(compose(levels[i].transversal[oi], s),
                    inverse(levels[i].transversal[static_cast<size_t>(idx)]));
        if (schreier.is_identity()) continue;
        auto [residue, j] = chain.sift(std::move(schreier), i + 1);
        if (residue.is_identity()) continue;
        if (j == levels.size()) {
          StabilizerChain::Level nl;
          nl.base_point = residue.least_moved_point();
          levels.push_back(std::move(nl));
        }
        for (size_t l = i + 1; l <= j; ++l) {
          levels[l].strong_gens.push_back(residue);
          detail::recompute_level(levels[l], group.degree);
        }
        i = j;
        restarted = true;
      }
    }
    if (restarted) continue;
    if (i == 0) break;
    --i;
  }
  return chain;
}

inline std::uint64_t order(const StabilizerChain& chain) { return chain.order(); }

inline bool contains(const StabilizerChain& chain, const Permutation& p) {
  return chain.contains(p);
}

}  // namespace sworbit
