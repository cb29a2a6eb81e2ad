#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "sworbit/bsgs.hpp"
#include "test_util.hpp"

using namespace sworbit;

using testutil::from_cycles;
using testutil::g1;
using testutil::g2;
using testutil::m24;

TEST_CASE("chain orders") {
  CHECK(build_chain(from_cycles(4, {"(1,2)", "(1,2,3,4)"}, "Sym4")).order() == 24);
  CHECK(build_chain(g1()).order() == 1152);
  CHECK(build_chain(g2()).order() == 54);
  CHECK(build_chain(GeneratedGroup(5, {Permutation(5)}, "trivial")).order() == 1);
  CHECK(build_chain(m24()).order() == 244823040);
}

TEST_CASE("chain structure invariants") {
  const auto group = g1();
  const auto chain = build_chain(group);

  std::uint64_t product = 1;
  for (const auto& lv : chain.levels()) product *= lv.orbit.size();
  CHECK(product == chain.order());

  // strong generators at level i fix all earlier base points
  const auto base = chain.base();
  for (size_t i = 0; i < chain.levels().size(); ++i)
    for (const auto& s : chain.levels()[i].strong_gens)
      for (size_t j = 0; j < i; ++j) CHECK(s(base[j]) == base[j]);

  // sifting any generator yields the identity
  for (const auto& gen : group.generators) CHECK(chain.contains(gen));

  // deterministic given generator order
  const auto again = build_chain(group);
  CHECK(again.base() == base);
  for (size_t i = 0; i < chain.levels().size(); ++i)
    CHECK(again.levels()[i].orbit == chain.levels()[i].orbit);
}

TEST_CASE("membership") {
  const auto chain3 = build_chain(from_cycles(3, {"(1,2,3)"}, "C3"));
  CHECK(chain3.contains(Permutation(3)));
  CHECK(!chain3.contains(parse_cycles("(1,2)", 3)));

  const auto group = g2();
  const auto chain = build_chain(group);
  for (const auto& gen : group.generators) CHECK(chain.contains(gen));
  CHECK_THROWS_AS(chain.contains(Permutation(5)), std::invalid_argument);
}

TEST_CASE("membership agrees with brute force on small groups") {
  const auto group = from_cycles(7, {"(1,2)", "(1,2,3,4,5,6,7)"}, "Sym7");
  const auto chain = build_chain(group);
  CHECK(chain.order() == 5040);

  const auto everything = testutil::brute_elements(group.generators);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testutil::random_permutation(7, rng);
    std::vector<int> key(7);
    for (int i = 1; i <= 7; ++i) key[static_cast<size_t>(i - 1)] = p(i);
    CHECK(chain.contains(p) == everything.contains(key));
  }

  // random words in the generators always belong
  const auto g2group = g2();
  const auto g2chain = build_chain(g2group);
  for (int trial = 0; trial < 100; ++trial) {
    Permutation w(9);
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int j = 0; j < len; ++j)
      w = compose(w, g2group.generators[rng() % g2group.generators.size()]);
    CHECK(g2chain.contains(w));
  }
}

TEST_CASE("element enumeration") {
  const auto sym3 = build_chain(from_cycles(3, {"(1,2)", "(1,2,3)"}, "Sym3"));
  auto elems = sym3.elements_up_to(10);
  CHECK(elems.size() == 6);
  std::set<std::string> distinct;
  for (const auto& p : elems) distinct.insert(print_cycles(p));
  CHECK(distinct.size() == 6);

  const auto chain54 = build_chain(g2());
  auto all54 = chain54.elements_up_to(100);
  CHECK(all54.size() == 54);
  distinct.clear();
  for (const auto& p : all54) distinct.insert(print_cycles(p));
  CHECK(distinct.size() == 54);

  CHECK_THROWS_AS(build_chain(m24()).elements_up_to(1'000'000), OrderExceedsBound);
}

TEST_CASE("identity generators are ignored") {
  const auto group = GeneratedGroup(4, {Permutation(4), parse_cycles("(1,2)", 4)}, "C2");
  CHECK(build_chain(group).order() == 2);
  CHECK_THROWS_AS(GeneratedGroup(4, {}, "empty"), std::invalid_argument);
  CHECK_THROWS_AS(GeneratedGroup(4, {Permutation(5)}, "mismatch"), std::invalid_argument);
}
