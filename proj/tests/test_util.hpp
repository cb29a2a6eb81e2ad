#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sworbit/bsgs.hpp"
#include "sworbit/perm.hpp"

namespace testutil {

inline sworbit::GeneratedGroup from_cycles(int degree, const std::vector<std::string>& texts,
                                           const std::string& name) {
  std::vector<sworbit::Permutation> gens;
  for (const auto& t : texts) gens.push_back(sworbit::parse_cycles(t, degree));
  return sworbit::GeneratedGroup(degree, std::move(gens), name);
}

// the three worked imprimitive examples, reused across the suite
inline sworbit::GeneratedGroup g1() {
  return from_cycles(8,
                     {"(4,6)", "(1,2,5,3)(4,8)(6,7)", "(1,8)(4,6)", "(3,4,6)", "(1,7,8)",
                      "(2,3)(4,6)", "(2,4)(3,6)", "(1,5)(7,8)", "(1,7)(5,8)"},
                     "G1");
}

inline sworbit::GeneratedGroup g2() {
  return from_cycles(
      9, {"(4,7)(5,9)(6,1)", "(8,9,5)(2,7,4)(3,1,6)", "(4,5,6)(7,1,9)", "(8,3,2)(7,1,9)"}, "G2");
}

inline sworbit::GeneratedGroup g3() {
  return from_cycles(16,
                     {"(1,12)(7,3)(11,8)(4,2)(5,10)(6,9)(13,15)(14,16)",
                      "(1,8,6,14)(7,2,5,13)(11,9,16,12)(4,10,15,3)",
                      "(1,14)(7,13)(11,12)(4,3)(5,2)(6,8)(9,16)(10,15)",
                      "(1,6)(7,5)(11,15)(4,16)(2,14)(8,13)(9,12)(10,3)",
                      "(1,16)(7,15)(11,6)(4,5)(2,3)(8,12)(9,14)(10,13)",
                      "(11,4)(9,10)(3,12)(15,16)",
                      "(1,7)(11,4)(5,6)(2,8)(9,10)(3,12)(13,14)(15,16)"},
                     "G3");
}

inline sworbit::GeneratedGroup m24() {
  return from_cycles(
      24,
      {"(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
       "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
       "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)"},
      "M24");
}

inline sworbit::Permutation random_permutation(int degree, std::mt19937_64& rng) {
  std::vector<int> images(static_cast<size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<size_t>(i)] = i + 1;
  for (int i = degree - 1; i > 0; --i) {
    std::uniform_int_distribution<int> dist(0, i);
    std::swap(images[static_cast<size_t>(i)], images[static_cast<size_t>(dist(rng))]);
  }
  return sworbit::Permutation::from_images(images);
}

inline sworbit::KSubset random_subset(int degree, int k, std::mt19937_64& rng) {
  std::set<int> pts;
  std::uniform_int_distribution<int> dist(1, degree);
  while (static_cast<int>(pts.size()) < k) pts.insert(dist(rng));
  return sworbit::KSubset(degree, {pts.begin(), pts.end()});
}

// Brute-force orbit of a subset under generator images, independent of the
// library's orbit machinery (works on sorted member vectors, no masks).
inline std::set<std::vector<int>> brute_orbit(const std::vector<sworbit::Permutation>& gens,
                                              const sworbit::KSubset& start) {
  std::set<std::vector<int>> seen{start.members()};
  std::vector<std::vector<int>> frontier{start.members()};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& mem : frontier) {
      for (const auto& g : gens) {
        std::vector<int> img;
        img.reserve(mem.size());
        for (int pt : mem) img.push_back(g(pt));
        std::sort(img.begin(), img.end());
        if (seen.insert(img).second) next.push_back(img);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

// Brute-force group closure by repeated multiplication; for small oracles only.
inline std::set<std::vector<int>> brute_elements(const std::vector<sworbit::Permutation>& gens) {
  auto key = [](const sworbit::Permutation& p) {
    std::vector<int> v(static_cast<size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i) v[static_cast<size_t>(i - 1)] = p(i);
    return v;
  };
  const int degree = gens.front().degree();
  std::set<std::vector<int>> seen{key(sworbit::Permutation(degree))};
  std::vector<sworbit::Permutation> frontier{sworbit::Permutation(degree)};
  while (!frontier.empty()) {
    std::vector<sworbit::Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = compose(x, g);
        if (seen.insert(key(y)).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace testutil
