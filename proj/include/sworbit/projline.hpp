#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sworbit/action.hpp"
#include "sworbit/bsgs.hpp"
#include "sworbit/perm.hpp"

namespace sworbit {

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// q = p^e with p prime, or (0,0) if q is not a prime power.
inline std::pair<int, int> prime_power(int q) {
  if (q < 2) return {0, 0};
  int p = q;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  return rest == 1 ? std::pair{p, e} : std::pair{0, 0};
}

}  // namespace detail

/// GF(p^e) with elements coded 0..q-1: the code's base-p digits are the
/// coefficients of the polynomial residue (digit i = coefficient of x^i).
/// The modulus is the least irreducible monic polynomial of degree e when
/// candidates are ordered by that same digit encoding, and omega is the
/// least element code of full multiplicative order, so the construction is
/// a function of (p, e) alone.
class FiniteField {
public:
  static FiniteField make(int p, int e) {
    if (!detail::is_prime(p)) throw std::invalid_argument("p must be prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::int64_t q = 1;
    for (int i = 0; i < e; ++i) {
      q *= p;
      if (q > 65536) throw std::invalid_argument("field size limited to 2^16");
    }
    return FiniteField(p, e, static_cast<int>(q));
  }

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  int omega() const { return omega_; }
  /// Lower coefficients of the monic modulus (constant term first).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const {
    int out = 0, mul = 1;
    for (int i = 0; i < e_; ++i) {
      out += ((a % p_ + b % p_) % p_) * mul;
      a /= p_;
      b /= p_;
      mul *= p_;
    }
    return out;
  }

  int neg(int a) const {
    int out = 0, mul = 1;
    for (int i = 0; i < e_; ++i) {
      out += ((p_ - a % p_) % p_) * mul;
      a /= p_;
      mul *= p_;
    }
    return out;
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<size_t>((log_[static_cast<size_t>(a)] +
                                     log_[static_cast<size_t>(b)]) % (q_ - 1))];
  }

  int inv(int a) const {
    if (a == 0) throw std::domain_error("inversion of zero");
    return exp_[static_cast<size_t>((q_ - 1 - log_[static_cast<size_t>(a)]) % (q_ - 1))];
  }

  int pow(int a, std::uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    const auto r = static_cast<std::uint64_t>(log_[static_cast<size_t>(a)]) % (q_ - 1) * (k % (q_ - 1));
    return exp_[static_cast<size_t>(r % (q_ - 1))];
  }

  /// x = z^2 for some z. Zero counts as a square; in even characteristic
  /// squaring is a bijection, so everything does.
  bool is_square(int a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[static_cast<size_t>(a)] % 2 == 0;
  }

private:
  FiniteField(int p, int e, int q) : p_(p), e_(e), q_(q) {
    find_modulus();
    find_omega();
    build_tables();
  }

  // polynomial helpers over GF(p), coefficient vectors constant-term first
  std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (size_t j = 0; j < b.size(); ++j)
          prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    for (size_t i = prod.size(); i-- > static_cast<size_t>(e_);) {
      const int c = prod[i];
      if (c)
        for (int j = 0; j < e_; ++j)
          prod[i - static_cast<size_t>(e_) + static_cast<size_t>(j)] =
              ((prod[i - static_cast<size_t>(e_) + static_cast<size_t>(j)] -
                c * modulus_[static_cast<size_t>(j)]) % p_ + p_) % p_;
    }
    prod.resize(static_cast<size_t>(e_));
    return prod;
  }

  static bool poly_divides(const std::vector<int>& div, std::vector<int> rem, int p) {
    // both monic, coefficients constant-term first
    const auto dd = static_cast<int>(div.size()) - 1;
    for (int top = static_cast<int>(rem.size()) - 1; top >= dd; --top) {
      const int c = rem[static_cast<size_t>(top)];
      if (!c) continue;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<size_t>(top - dd + j)] =
            ((rem[static_cast<size_t>(top - dd + j)] - c * div[static_cast<size_t>(j)]) % p + p) % p;
    }
    for (int x : rem)
      if (x) return false;
    return true;
  }

  void find_modulus() {
    for (int cand = 0; cand < q_; ++cand) {
      std::vector<int> poly(static_cast<size_t>(e_) + 1, 0);
      int c = cand;
      for (int i = 0; i < e_; ++i) {
        poly[static_cast<size_t>(i)] = c % p_;
        c /= p_;
      }
      poly[static_cast<size_t>(e_)] = 1;
      bool irreducible = true;
      for (int d = 1; d <= e_ / 2 && irreducible; ++d) {
        int dcount = 1;
        for (int i = 0; i < d; ++i) dcount *= p_;
        for (int dc = 0; dc < dcount && irreducible; ++dc) {
          std::vector<int> div(static_cast<size_t>(d) + 1, 0);
          int x = dc;
          for (int i = 0; i < d; ++i) {
            div[static_cast<size_t>(i)] = x % p_;
            x /= p_;
          }
          div[static_cast<size_t>(d)] = 1;
          if (poly_divides(div, poly, p_)) irreducible = false;
        }
      }
      if (irreducible) {
        modulus_.assign(poly.begin(), poly.end() - 1);
        return;
      }
    }
    throw std::logic_error("no irreducible modulus found");
  }

  std::vector<int> to_poly(int code) const {
    std::vector<int> out(static_cast<size_t>(e_));
    for (int i = 0; i < e_; ++i) {
      out[static_cast<size_t>(i)] = code % p_;
      code /= p_;
    }
    return out;
  }

  int from_poly(const std::vector<int>& poly) const {
    int out = 0;
    for (size_t i = poly.size(); i-- > 0;) out = out * p_ + poly[i];
    return out;
  }

  void find_omega() {
    std::vector<int> prime_factors;
    int m = q_ - 1;
    for (int d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_factors.push_back(m);

    auto poly_pow = [&](int base, int k) {
      std::vector<int> acc(static_cast<size_t>(e_), 0);
      acc[0] = 1;
      std::vector<int> b = to_poly(base);
      while (k) {
        if (k & 1) acc = poly_mul_mod(acc, b);
        b = poly_mul_mod(b, b);
        k >>= 1;
      }
      return from_poly(acc);
    };

    for (int w = 1; w < q_; ++w) {
      bool full = true;
      for (int f : prime_factors)
        if (poly_pow(w, (q_ - 1) / f) == 1) {
          full = false;
          break;
        }
      if (full) {
        omega_ = w;
        return;
      }
    }
    throw std::logic_error("no multiplicative generator found");
  }

  void build_tables() {
    exp_.assign(static_cast<size_t>(q_ - 1), 0);
    log_.assign(static_cast<size_t>(q_), 0);
    std::vector<int> acc(static_cast<size_t>(e_), 0);
    acc[0] = 1;
    const std::vector<int> w = to_poly(omega_);
    for (int i = 0; i < q_ - 1; ++i) {
      const int code = from_poly(acc);
      exp_[static_cast<size_t>(i)] = code;
      log_[static_cast<size_t>(code)] = i;
      acc = poly_mul_mod(acc, w);
    }
  }

  int p_, e_, q_;
  std::vector<int> modulus_;
  int omega_ = 0;
  std::vector<int> exp_, log_;
};

/// Row-major 2x2 matrix [[a,b],[c,d]] over a finite field.
struct Mat2 {
  int a = 0, b = 0, c = 0, d = 0;
};

inline int det(const FiniteField& f, const Mat2& m) {
  return f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c));
}

/// Point numbering on the projective line: code x in 0..q-1 becomes point
/// x+1, the infinite point becomes q+1.
inline int proj_point_of_code(int code) { return code + 1; }
inline int proj_point_infinity(int q) { return q + 1; }

/// The permutation of the q+1 projective points induced by the right action
/// of m on row vectors: span(1,x) -> (a+xc, b+xd), span(0,1) -> (c,d).
inline Permutation moebius_perm(const FiniteField& f, const Mat2& m) {
  if (det(f, m) == 0) throw std::invalid_argument("moebius_perm: singular matrix");
  const int q = f.q();
  std::vector<int> images(static_cast<size_t>(q) + 1);
  for (int x = 0; x < q; ++x) {
    const int u = f.add(m.a, f.mul(x, m.c));
    const int v = f.add(m.b, f.mul(x, m.d));
    images[static_cast<size_t>(x)] =
        u == 0 ? proj_point_infinity(q) : proj_point_of_code(f.mul(v, f.inv(u)));
  }
  images[static_cast<size_t>(q)] =
      m.c == 0 ? proj_point_infinity(q) : proj_point_of_code(f.mul(m.d, f.inv(m.c)));
  return Permutation::from_images(images);
}

/// (PSL(2,q), PGL(2,q)) acting on the q+1 projective points. PSL is the
/// subgroup of square-determinant classes; both orders are verified against
/// the closed-form count before returning.
inline std::pair<GeneratedGroup, GeneratedGroup> psl_pgl_groups(int q) {
  const auto [p, e] = detail::prime_power(q);
  if (p == 0 || q < 4) throw std::invalid_argument("q must be a prime power >= 4");
  const FiniteField f = FiniteField::make(p, e);
  const int w = f.omega();
  const int one = 1;

  std::vector<Permutation> pgl_gens{
      moebius_perm(f, {w, 0, 0, one}),
      moebius_perm(f, {one, one, 0, one}),
      moebius_perm(f, {0, one, one, 0}),
  };
  std::vector<Permutation> psl_gens{
      moebius_perm(f, {f.mul(w, w), 0, 0, one}),
      moebius_perm(f, {one, one, 0, one}),
      moebius_perm(f, {0, f.neg(one), one, 0}),
  };
  const std::string qs = std::to_string(q);
  GeneratedGroup psl(q + 1, std::move(psl_gens), "L2(" + qs + ")");
  GeneratedGroup pgl(q + 1, std::move(pgl_gens), "PGL(2," + qs + ")");

  const auto uq = static_cast<std::uint64_t>(q);
  const std::uint64_t pgl_order = uq * (uq * uq - 1);
  const std::uint64_t psl_order = pgl_order / (q % 2 == 0 ? 1 : 2);
  if (build_chain(pgl).order() != pgl_order || build_chain(psl).order() != psl_order)
    throw std::logic_error("projective group construction failed order verification");
  return {std::move(psl), std::move(pgl)};
}

/// All x in GF(q) \ {0,1} with x not in {-1, 2, 2^-1} and x^2 - x + 1 != 0,
/// in ascending code order. These are the elements omega^a for which the
/// 4-point section {0, 1, infinity, x} has the generic stabilizer.
inline std::vector<int> valid_exponents(const FiniteField& f) {
  if (f.p() == 2) throw std::domain_error("valid_exponents requires odd characteristic");
  const int two = f.add(1, 1);
  std::vector<int> out;
  for (int x = 0; x < f.q(); ++x) {
    if (x == 0 || x == 1) continue;
    if (x == f.neg(1) || x == two || x == f.inv(two)) continue;
    if (f.add(f.sub(f.mul(x, x), x), 1) == 0) continue;
    out.push_back(x);
  }
  return out;
}

struct ExponentReport {
  int x = 0;                        // the element omega^a
  std::uint64_t pgl_stab = 0;       // |PGL(2,q)_Sigma|
  std::uint64_t psl_stab = 0;       // |PSL(2,q)_Sigma|
  int det_a = 0;                    // det [[1,x],[-1,-1]] = x - 1
  bool a_in_psl = false;            // is_square(det_a)
  std::uint64_t psl_orbit = 0;      // |Sigma^{PSL}|
  bool exceeds_c3 = false;          // psl_orbit > C(q+1,3)
};

struct TheoremReport {
  int q = 0;
  std::uint64_t c3 = 0;             // C(q+1,3) = number of 3-subsets
  std::vector<int> valid;           // valid exponent elements
  std::vector<ExponentReport> per_exponent;
};

/// Mechanical check of the 3-homogeneous classification argument: for each
/// valid exponent element x, the stabilizer orders of Sigma = {0,1,inf,x}
/// in PGL and PSL, whether the swapping matrix A = [[1,x],[-1,-1]] lands in
/// PSL, and whether Sigma's PSL-orbit outnumbers all 3-subsets.
inline TheoremReport theorem_check(int q) {
  const auto [p, e] = detail::prime_power(q);
  if (p == 0 || p == 2 || q < 7) throw std::invalid_argument("q must be an odd prime power >= 7");
  if (q + 1 > 64) throw std::domain_error("theorem_check supports q+1 <= 64 points");
  const FiniteField f = FiniteField::make(p, e);

  TheoremReport report;
  report.q = q;
  report.c3 = binomial(q + 1, 3);
  report.valid = valid_exponents(f);

  auto [psl, pgl] = psl_pgl_groups(q);
  const StabilizerChain psl_chain = build_chain(psl);
  const StabilizerChain pgl_chain = build_chain(pgl);

  for (int x : report.valid) {
    const KSubset sigma(q + 1, {proj_point_of_code(0), proj_point_of_code(1),
                                proj_point_of_code(x), proj_point_infinity(q)});
    ExponentReport row;
    row.x = x;
    row.pgl_stab = setwise_stab_order(pgl_chain, subset_orbit(pgl, pgl_chain, sigma));
    const OrbitRecord psl_orbit = subset_orbit(psl, psl_chain, sigma);
    row.psl_stab = setwise_stab_order(psl_chain, psl_orbit);
    row.det_a = det(f, Mat2{1, x, f.neg(1), f.neg(1)});
    row.a_in_psl = f.is_square(row.det_a);
    row.psl_orbit = psl_orbit.length;
    row.exceeds_c3 = psl_orbit.length > report.c3;
    report.per_exponent.push_back(row);
  }
  return report;
}

}  // namespace sworbit
