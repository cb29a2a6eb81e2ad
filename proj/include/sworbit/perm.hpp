#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sworbit {

/// Thrown on malformed cycle notation, subset syntax, or catalogue text.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A bijection on the points 1..n. Immutable after construction.
/// Composition is left-to-right project-wide: x^(pq) = (x^p)^q.
class Permutation {
public:
  /// Identity on `degree` points.
  explicit Permutation(int degree) : images_(static_cast<size_t>(check_degree(degree))) {
    std::iota(images_.begin(), images_.end(), 0);
  }

  /// Build from a 1-based image sequence: images[i-1] is the image of point i.
  static Permutation from_images(const std::vector<int>& one_based) {
    const int n = static_cast<int>(one_based.size());
    Permutation p(check_degree(n));
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
      const int img = one_based[static_cast<size_t>(i)];
      if (img < 1 || img > n)
        throw std::invalid_argument("image out of range 1.." + std::to_string(n));
      if (seen[static_cast<size_t>(img - 1)])
        throw std::invalid_argument("image sequence is not a bijection");
      seen[static_cast<size_t>(img - 1)] = true;
      p.images_[static_cast<size_t>(i)] = img - 1;
    }
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }

  /// Image of a 1-based point.
  int operator()(int point) const { return images_[static_cast<size_t>(point - 1)] + 1; }

  bool is_identity() const {
    for (size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// Least moved point (1-based), or 0 for the identity.
  int least_moved_point() const {
    for (size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return static_cast<int>(i) + 1;
    return 0;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) = default;

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation inverse(const Permutation& p);
  friend std::uint64_t apply_mask(const Permutation& p, std::uint64_t mask);

private:
  static int check_degree(int n) {
    if (n < 1) throw std::invalid_argument("degree must be at least 1");
    return n;
  }

  std::vector<int> images_;  // 0-based storage, invisible at the API boundary
};

/// x^(compose(p,q)) = (x^p)^q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in compose");
  Permutation r(p.degree());
  for (size_t i = 0; i < r.images_.size(); ++i)
    r.images_[i] = q.images_[static_cast<size_t>(p.images_[i])];
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r(p.degree());
  for (size_t i = 0; i < r.images_.size(); ++i)
    r.images_[static_cast<size_t>(p.images_[i])] = static_cast<int>(i);
  return r;
}

/// Image of a point bitmask (bit i-1 = point i). Degree must be <= 64.
inline std::uint64_t apply_mask(const Permutation& p, std::uint64_t mask) {
  std::uint64_t out = 0;
  while (mask) {
    const int b = std::countr_zero(mask);
    out |= std::uint64_t{1} << p.images_[static_cast<size_t>(b)];
    mask &= mask - 1;
  }
  return out;
}

/// Parse a whitespace-tolerant product of disjoint cycles over 1..degree.
/// Fixed points may appear as singleton cycles or be omitted; "" and "()"
/// both denote the identity.
inline Permutation parse_cycles(std::string_view text, int degree) {
  std::vector<int> images(static_cast<size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<size_t>(degree), false);

  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_point = [&]() -> int {
    skip_ws();
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw ParseError("expected a point at position " + std::to_string(start));
    long v = std::stol(std::string(text.substr(start, i - start)));
    if (v < 1 || v > degree)
      throw ParseError("point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
    if (used[static_cast<size_t>(v - 1)])
      throw ParseError("point " + std::to_string(v) + " repeated");
    used[static_cast<size_t>(v - 1)] = true;
    return static_cast<int>(v);
  };

  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError(std::string("expected '(' but found '") + text[i] + "'");
    ++i;
    skip_ws();
    if (i < text.size() && text[i] == ')') {  // "()" = identity
      ++i;
      skip_ws();
      continue;
    }
    std::vector<int> cycle;
    cycle.push_back(parse_point());
    skip_ws();
    while (i < text.size() && text[i] == ',') {
      ++i;
      cycle.push_back(parse_point());
      skip_ws();
    }
    if (i >= text.size() || text[i] != ')') throw ParseError("unterminated cycle");
    ++i;
    for (size_t j = 0; j < cycle.size(); ++j)
      images[static_cast<size_t>(cycle[j] - 1)] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation::from_images(images);
}

/// Canonical printer: each cycle starts at its least element, cycles ordered
/// by least element, fixed points omitted, identity printed as "()".
inline std::string print_cycles(const Permutation& p) {
  const int n = p.degree();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::string out;
  for (int s = 1; s <= n; ++s) {
    if (seen[static_cast<size_t>(s - 1)] || p(s) == s) continue;
    out += '(';
    int t = s;
    bool first = true;
    do {
      seen[static_cast<size_t>(t - 1)] = true;
      if (!first) out += ',';
      out += std::to_string(t);
      first = false;
      t = p(t);
    } while (t != s);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// A canonical k-subset of 1..n: strictly increasing members, plus a point
/// bitmask when n <= 64 (bit i-1 = point i).
class KSubset {
public:
  KSubset() = default;  // empty subset of a 1-point set

  KSubset(int degree, std::vector<int> members) : degree_(degree), members_(std::move(members)) {
    if (degree < 1) throw std::invalid_argument("degree must be at least 1");
    for (size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] < 1 || members_[i] > degree)
        throw std::invalid_argument("subset member " + std::to_string(members_[i]) +
                                    " out of range 1.." + std::to_string(degree));
      if (i > 0 && members_[i - 1] >= members_[i])
        throw std::invalid_argument("subset members must be strictly increasing");
    }
    if (degree_ <= 64)
      for (int m : members_) mask_ |= std::uint64_t{1} << (m - 1);
  }

  static KSubset from_mask(int degree, std::uint64_t mask) {
    std::vector<int> members;
    std::uint64_t m = mask;
    while (m) {
      members.push_back(std::countr_zero(m) + 1);
      m &= m - 1;
    }
    return KSubset(degree, std::move(members));
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int point) const {
    return std::binary_search(members_.begin(), members_.end(), point);
  }

  /// Bitmask form; only valid for degree <= 64.
  std::uint64_t mask() const {
    if (degree_ > 64) throw std::domain_error("bitmask form requires degree <= 64");
    return mask_;
  }

  friend bool operator==(const KSubset& a, const KSubset& b) {
    return a.degree_ == b.degree_ && a.members_ == b.members_;
  }
  friend bool operator!=(const KSubset& a, const KSubset& b) { return !(a == b); }
  /// Lexicographic order on member sequences.
  friend bool operator<(const KSubset& a, const KSubset& b) { return a.members_ < b.members_; }

private:
  int degree_ = 1;
  std::vector<int> members_;
  std::uint64_t mask_ = 0;
};

inline KSubset image_of_subset(const Permutation& p, const KSubset& s) {
  if (p.degree() != s.degree()) throw std::invalid_argument("degree mismatch in image_of_subset");
  std::vector<int> img;
  img.reserve(s.members().size());
  for (int m : s.members()) img.push_back(p(m));
  std::sort(img.begin(), img.end());
  return KSubset(s.degree(), std::move(img));
}

/// Parse "{a,b,c}" (whitespace tolerated, "{}" is the empty subset).
inline KSubset parse_subset(std::string_view text, int degree) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') throw ParseError("subset must start with '{'");
  ++i;
  std::vector<int> members;
  skip_ws();
  while (i < text.size() && text[i] != '}') {
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw ParseError("expected a point in subset");
    members.push_back(std::stoi(std::string(text.substr(start, i - start))));
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip_ws();
    }
  }
  if (i >= text.size()) throw ParseError("subset must end with '}'");
  ++i;
  skip_ws();
  if (i != text.size()) throw ParseError("trailing characters after subset");
  std::sort(members.begin(), members.end());
  return KSubset(degree, std::move(members));
}

inline std::string print_subset(const KSubset& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.members().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.members()[i]);
  }
  return out + "}";
}

}  // namespace sworbit
