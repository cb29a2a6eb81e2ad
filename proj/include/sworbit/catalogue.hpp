#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sworbit/action.hpp"
#include "sworbit/bsgs.hpp"
#include "sworbit/perm.hpp"
#include "sworbit/projline.hpp"
#include "sworbit/swcheck.hpp"

namespace sworbit {

/// One catalogue entry: a named generator list with optional expected
/// metadata used by validation and by `swscan --expect`.
struct GroupRecord {
  std::string name;
  int degree = 0;
  std::vector<std::string> generator_text;
  std::vector<Permutation> generators;  // parsed eagerly at load time
  std::optional<std::uint64_t> expected_order;
  std::optional<bool> expected_primitive;
  std::optional<std::vector<int>> expect_k;
  std::vector<BlockPartition> block_systems;
  std::optional<std::vector<std::uint64_t>> expected_sigma;   // sigma_k, k = 1..size
  std::optional<std::uint64_t> expected_delta3_len;           // |{1,2,3}^G|
  std::string note;
  bool skip_scan = false;

  GeneratedGroup group() const { return GeneratedGroup(degree, generators, name); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// distinct type so already-located errors are not wrapped twice
struct LocatedParseError : ParseError {
  using ParseError::ParseError;
};

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw LocatedParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Line-oriented catalogue format:
///   group <name> / degree <n> / gen <cycles>... / optional metadata / end
/// Blank lines and '#' comments are ignored; names are unique keys.
inline std::vector<GroupRecord> parse_catalogue(std::istream& in) {
  std::vector<GroupRecord> records;
  std::optional<GroupRecord> open;
  std::string raw;
  int lineno = 0;

  auto require_open = [&](const char* key) -> GroupRecord& {
    if (!open) detail::parse_fail(lineno, std::string(key) + " outside a group block");
    return *open;
  };
  auto require_degree = [&](const char* key) -> GroupRecord& {
    GroupRecord& rec = require_open(key);
    if (rec.degree == 0) detail::parse_fail(lineno, std::string(key) + " before degree");
    return rec;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;

    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : detail::trim(line.substr(sp + 1));

    try {
      if (key == "group") {
        if (open) detail::parse_fail(lineno, "previous group block not closed with 'end'");
        if (value.empty()) detail::parse_fail(lineno, "group needs a name");
        for (const auto& r : records)
          if (r.name == value) detail::parse_fail(lineno, "duplicate group name " + value);
        open = GroupRecord{};
        open->name = value;
      } else if (key == "degree") {
        GroupRecord& rec = require_open("degree");
        rec.degree = std::stoi(value);
        if (rec.degree < 1) detail::parse_fail(lineno, "degree must be positive");
      } else if (key == "gen") {
        GroupRecord& rec = require_degree("gen");
        rec.generators.push_back(parse_cycles(value, rec.degree));
        rec.generator_text.push_back(value);
      } else if (key == "order") {
        require_open("order").expected_order = std::stoull(value);
      } else if (key == "primitive") {
        if (value != "true" && value != "false")
          detail::parse_fail(lineno, "primitive takes true or false");
        require_open("primitive").expected_primitive = value == "true";
      } else if (key == "expect_k") {
        std::vector<int> ks;
        for (const auto& part : detail::split(value, ','))
          if (!detail::trim(part).empty()) ks.push_back(std::stoi(detail::trim(part)));
        require_open("expect_k").expect_k = std::move(ks);
      } else if (key == "blocks") {
        GroupRecord& rec = require_degree("blocks");
        BlockPartition bp;
        bp.degree = rec.degree;
        for (const auto& part : detail::split(value, ';'))
          bp.blocks.push_back(parse_subset(detail::trim(part), rec.degree).members());
        rec.block_systems.push_back(std::move(bp));
      } else if (key == "sigma") {
        std::vector<std::uint64_t> sv;
        for (const auto& part : detail::split(value, ','))
          sv.push_back(std::stoull(detail::trim(part)));
        require_open("sigma").expected_sigma = std::move(sv);
      } else if (key == "delta_orbit") {
        require_open("delta_orbit").expected_delta3_len = std::stoull(value);
      } else if (key == "note") {
        require_open("note").note = value;
      } else if (key == "skip_scan") {
        if (value != "true" && value != "false")
          detail::parse_fail(lineno, "skip_scan takes true or false");
        require_open("skip_scan").skip_scan = value == "true";
      } else if (key == "end") {
        GroupRecord& rec = require_open("end");
        if (rec.generators.empty()) detail::parse_fail(lineno, "group has no generators");
        records.push_back(std::move(rec));
        open.reset();
      } else {
        detail::parse_fail(lineno, "unknown key '" + key + "'");
      }
    } catch (const detail::LocatedParseError&) {
      throw;
    } catch (const std::exception& e) {
      detail::parse_fail(lineno, e.what());
    }
  }
  if (open) throw ParseError("unterminated group block for " + open->name);
  return records;
}

namespace detail {

/// Sym(6) acting on the ten splittings of {1..6} into complementary
/// 3-subsets. A splitting is identified by its side containing the point 1;
/// splittings are numbered in lexicographic order of that side.
inline GeneratedGroup sym6_on_splittings() {
  std::vector<std::vector<int>> reps;
  for (int a = 2; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b) reps.push_back({1, a, b});

  auto act = [&](const Permutation& g6) {
    std::vector<int> images;
    for (const auto& rep : reps) {
      std::vector<int> img;
      for (int pt : rep) img.push_back(g6(pt));
      std::sort(img.begin(), img.end());
      if (img[0] != 1) {  // take the complementary side
        std::vector<int> comp;
        for (int pt = 1; pt <= 6; ++pt)
          if (!std::binary_search(img.begin(), img.end(), pt)) comp.push_back(pt);
        img = std::move(comp);
      }
      const auto it = std::find(reps.begin(), reps.end(), img);
      images.push_back(static_cast<int>(it - reps.begin()) + 1);
    }
    return Permutation::from_images(images);
  };

  std::vector<Permutation> gens{act(parse_cycles("(1,2)", 6)),
                                act(parse_cycles("(1,2,3,4,5,6)", 6))};
  return GeneratedGroup(10, std::move(gens), "Sym(6)");
}

inline void emit_group(std::ostream& os, const GeneratedGroup& g, std::uint64_t order,
                       bool primitive, const std::string& expect_k, const std::string& note) {
  os << "group " << g.name << "\n";
  os << "degree " << g.degree << "\n";
  for (const auto& gen : g.generators) os << "gen " << print_cycles(gen) << "\n";
  os << "order " << order << "\n";
  os << "primitive " << (primitive ? "true" : "false") << "\n";
  if (!expect_k.empty()) os << "expect_k " << expect_k << "\n";
  if (!note.empty()) os << "note " << note << "\n";
  os << "end\n\n";
}

inline constexpr const char* builtin_literal = R"CAT(
group Alt(7)
degree 15
gen (1,11,8)(2,5,12)(3,9,6)(4,7,10)(13,15,14)
gen (2,15,12,11,9,10,5)(3,4,13,8,14,6,7)
order 2520
primitive true
expect_k 6
note coset action of an L2(7) subgroup in Alt(7); the unique primitive action of Alt(7) on 15 points up to relabeling
end

group ASL(2,4)
degree 16
gen (5,6)(7,8)(9,11)(10,12)(13,16)(14,15)
gen (5,7)(6,8)(9,12)(10,11)(13,14)(15,16)
gen (2,5)(3,9)(4,13)(7,10)(8,14)(12,15)
gen (1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)
order 960
primitive true
expect_k 6
note affine maps on F4^2: point (x,y) is numbered 4*x+y+1 with field codes 0,1,w,w^2
end

group 2^4:Alt(7)
degree 16
gen (2,8,7)(3,9,11)(4,16,13)(5,10,14)(6,15,12)
gen (3,6,11,8,16,14,9)(4,5,12,7,15,13,10)
gen (1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)
order 40320
primitive true
expect_k 7
note Alt(7) < GL(4,2) on F2^4 plus a translation; vector v is numbered v+1
end

group L3(4)
degree 21
gen (6,10)(7,11)(8,12)(9,13)(14,18)(15,19)(16,20)(17,21)
gen (6,14)(7,15)(8,16)(9,17)(10,18)(11,19)(12,20)(13,21)
gen (1,2,6)(3,10,7)(4,14,9)(5,18,8)(12,15,21)(13,19,16)
order 20160
primitive true
expect_k 6
note PSL(3,4) on the 21 points of PG(2,4), points ordered by normalized coordinates
end

group M22
degree 22
gen (2,16,9,6,8)(3,12,13,18,4)(7,17,10,11,22)(14,19,21,20,15)
gen (1,15,8,5,7)(2,11,12,17,3)(6,16,9,10,21)(13,18,20,19,14)
order 443520
primitive true
expect_k 10
note point stabilizer of M23 on the remaining 22 points
end

group M23
degree 23
gen (1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)
gen (3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)
order 10200960
primitive true
expect_k 10
note classical two-generator presentation
end

group M24
degree 24
gen (1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)
gen (3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)
gen (1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)
order 244823040
primitive true
expect_k 11
note classical three-generator presentation extending M23
end

group G1
degree 8
gen (4,6)
gen (1,2,5,3)(4,8)(6,7)
gen (1,8)(4,6)
gen (3,4,6)
gen (1,7,8)
gen (2,3)(4,6)
gen (2,4)(3,6)
gen (1,5)(7,8)
gen (1,7)(5,8)
order 1152
primitive false
expect_k 3
blocks {1,5,7,8};{2,3,4,6}
sigma 1,2,2,3
delta_orbit 48
note transitive imprimitive example on 8 points
end

group G2
degree 9
gen (4,7)(5,9)(6,1)
gen (8,9,5)(2,7,4)(3,1,6)
gen (4,5,6)(7,1,9)
gen (8,3,2)(7,1,9)
order 54
primitive false
expect_k 3
blocks {1,7,9};{2,3,8};{4,5,6}
sigma 1,2,5,5
delta_orbit 54
note transitive imprimitive example on 9 points
end

group G3
degree 16
gen (1,12)(7,3)(11,8)(4,2)(5,10)(6,9)(13,15)(14,16)
gen (1,8,6,14)(7,2,5,13)(11,9,16,12)(4,10,15,3)
gen (1,14)(7,13)(11,12)(4,3)(5,2)(6,8)(9,16)(10,15)
gen (1,6)(7,5)(11,15)(4,16)(2,14)(8,13)(9,12)(10,3)
gen (1,16)(7,15)(11,6)(4,5)(2,3)(8,12)(9,14)(10,13)
gen (11,4)(9,10)(3,12)(15,16)
gen (1,7)(11,4)(5,6)(2,8)(9,10)(3,12)(13,14)(15,16)
order 256
primitive false
expect_k 3,7
blocks {1,5};{2,14};{3,9};{4,16};{6,7};{8,13};{10,12};{11,15}
blocks {1,5,6,7};{2,8,13,14};{3,9,10,12};{4,11,15,16}
blocks {1,3,5,6,7,9,10,12};{2,4,8,11,13,14,15,16}
sigma 1,6,11,35,48,91,100,132
delta_orbit 256
note transitive imprimitive 2-group on 16 points; one published generator violated all three block systems and is dropped as a misprint, the remaining seven reproduce every documented invariant
end

group Alt(5)
degree 5
gen (1,2,3)
gen (3,4,5)
order 60
primitive true
note negative control: no witness at any k in the default range
end

group Sym(7)
degree 7
gen (1,2)
gen (1,2,3,4,5,6,7)
order 5040
primitive true
note negative control: single orbit per k, C(n,k) < C(n,k+1) below n/2
end

group M11
degree 11
gen (1,2,3,4,5,6,7,8,9,10,11)
gen (3,7,11,8)(4,10,5,6)
order 7920
primitive true
note negative control: classical two-generator presentation
end

group M12
degree 12
gen (1,2,3,4,5,6,7,8,9,10,11)
gen (3,7,11,8)(4,10,5,6)
gen (1,12)(2,11)(3,6)(4,8)(5,9)(7,10)
order 95040
primitive true
note negative control: M11 extended by an outer involution
end

group Sym(8)
degree 8
gen (1,2)
gen (1,2,3,4,5,6,7,8)
order 40320
primitive true
skip_scan true
note full symmetric group: a single orbit C(n,k) < C(n,k+1) for k < n/2 can never witness
end

group trivial5
degree 5
gen ()
order 1
note identity-only group
end
)CAT";

}  // namespace detail

/// The shipped builtin catalogue. Projective rows and the Sym(6) splitting
/// action are generated programmatically; the rest ship as explicit cycle
/// lists. Assembled once, deterministically.
inline const std::string& builtin_catalogue_text() {
  static const std::string text = [] {
    std::ostringstream os;
    // Classified rows in table order, interleaved with the literal records below.
    os << "# builtin catalogue: classified groups, worked examples, negative controls\n\n";
    const auto emit_proj = [&os](int q, bool use_pgl, int expect_k) {
      auto [psl, pgl] = psl_pgl_groups(q);
      const GeneratedGroup& g = use_pgl ? pgl : psl;
      const auto uq = static_cast<std::uint64_t>(q);
      const std::uint64_t order =
          uq * (uq * uq - 1) / (use_pgl || q % 2 == 0 ? 1 : 2);
      detail::emit_group(os, g, order, true, std::to_string(expect_k),
                         "Moebius action on the projective line over GF(" + std::to_string(q) +
                             ")");
    };
    emit_proj(5, false, 2);
    emit_proj(7, false, 3);
    emit_proj(7, true, 3);
    emit_proj(9, false, 4);
    detail::emit_group(os, detail::sym6_on_splittings(), 720, true, "4",
                       "action of Sym(6) on the ten complementary 3-subset splittings of six "
                       "points");
    emit_proj(11, false, 5);
    emit_proj(11, true, 5);
    emit_proj(13, false, 6);
    emit_proj(16, false, 5);
    os << detail::builtin_literal;
    return os.str();
  }();
  return text;
}

inline const std::vector<GroupRecord>& builtin_catalogue() {
  static const std::vector<GroupRecord> records = [] {
    std::istringstream in(builtin_catalogue_text());
    return parse_catalogue(in);
  }();
  return records;
}

enum class ValidationLevel { Basic, Scan };

struct ValidationReport {
  std::string name;
  std::vector<std::string> passed;
  std::vector<std::string> failed;
  bool ok() const { return failed.empty(); }
};

/// Check a record against whatever expectations it declares. Failures are
/// report entries, never exceptions.
inline ValidationReport validate_record(const GroupRecord& record,
                                        ValidationLevel level = ValidationLevel::Basic) {
  ValidationReport report;
  report.name = record.name;
  auto check = [&](bool ok, const std::string& what) {
    (ok ? report.passed : report.failed).push_back(what);
  };

  const GeneratedGroup g = record.group();
  const StabilizerChain chain = build_chain(g);

  if (record.expected_order)
    check(chain.order() == *record.expected_order,
          "order " + std::to_string(chain.order()) + " vs expected " +
              std::to_string(*record.expected_order));
  if (record.expected_primitive) {
    try {
      const bool prim = is_primitive(g, chain);
      check(prim == *record.expected_primitive,
            std::string("primitive ") + (prim ? "true" : "false") + " vs expected " +
                (*record.expected_primitive ? "true" : "false"));
    } catch (const NotTransitive&) {
      check(false, "expected primitivity but the group is not transitive");
    }
  }
  if (record.expected_delta3_len) {
    if (record.degree < 3) {
      check(false, "delta_orbit expectation on degree < 3");
    } else {
      const auto orb = subset_orbit(g, chain, KSubset(record.degree, {1, 2, 3}));
      check(orb.length == *record.expected_delta3_len,
            "delta orbit length " + std::to_string(orb.length) + " vs expected " +
                std::to_string(*record.expected_delta3_len));
    }
  }
  if (record.expected_sigma) {
    for (size_t i = 0; i < record.expected_sigma->size(); ++i) {
      const int k = static_cast<int>(i) + 1;
      const auto part = subset_orbits(g, chain, k);
      check(part.sigma() == (*record.expected_sigma)[i],
            "sigma_" + std::to_string(k) + " = " + std::to_string(part.sigma()) +
                " vs expected " + std::to_string((*record.expected_sigma)[i]));
    }
  }
  for (size_t i = 0; i < record.block_systems.size(); ++i)
    check(verify_blocks(g, record.block_systems[i]),
          "block system " + std::to_string(i + 1) + " invariant");

  if (level == ValidationLevel::Scan) {
    const auto [lo, hi] = default_k_range(record.degree);
    const auto witnesses = sw_scan(g, chain, lo, hi);
    std::vector<int> got;
    for (const auto& w : witnesses)
      if (got.empty() || got.back() != w.k) got.push_back(w.k);
    std::vector<int> want = record.expect_k.value_or(std::vector<int>{});
    std::sort(want.begin(), want.end());
    check(got == want, "scan witness k set matches expect_k");
  }
  return report;
}

}  // namespace sworbit
