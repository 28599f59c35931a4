#pragma once

// Binary quadratic lattices: integral symmetric Gram matrices [[a, b], [b, c]]
// (form a x^2 + 2 b x y + c y^2), reduction to canonical class
// representatives, index-Q sublattices and isotropy over F_p.

#include "characters.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace siegel {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("lattice arithmetic overflow");
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("lattice arithmetic overflow");
  return r;
}

}  // namespace detail

struct GramForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t det() const { return detail::checked_mul(a, c) - detail::checked_mul(b, b); }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
  bool is_psd() const { return a >= 0 && c >= 0 && det() >= 0; }
  std::int64_t value(std::int64_t x, std::int64_t y) const {
    using detail::checked_add;
    using detail::checked_mul;
    return checked_add(checked_add(checked_mul(a, checked_mul(x, x)), checked_mul(2 * b, checked_mul(x, y))),
                       checked_mul(c, checked_mul(y, y)));
  }
  std::string to_string() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(b) + "," + std::to_string(c) + "]]";
  }
  auto operator<=>(const GramForm&) const = default;
};

enum class Group { GL2, SL2 };

/// A reduced representative. In SL2 mode `orient` is -1 when the SL2 class
/// is that of the b-negated twin of `form`; in GL2 mode it is always +1.
struct CanonicalForm {
  GramForm form;
  int orient = 1;

  /// The oriented Gram matrix this key stands for.
  GramForm oriented() const { return orient < 0 ? GramForm{form.a, -form.b, form.c} : form; }
  std::int64_t det() const { return form.det(); }
  auto operator<=>(const CanonicalForm&) const = default;
};

/// Sampling order: (det, a, b, c, orient).
inline bool sample_order(const CanonicalForm& x, const CanonicalForm& y) {
  return std::make_tuple(x.det(), x.form.a, x.form.b, x.form.c, x.orient) <
         std::make_tuple(y.det(), y.form.a, y.form.b, y.form.c, y.orient);
}

inline std::int64_t floor_div(std::int64_t n, std::int64_t d) {
  std::int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

/// Canonical representative of the GL2(Z) or SL2(Z) class of a positive
/// semi-definite form.
inline CanonicalForm reduce(const GramForm& t, Group group = Group::GL2) {
  if (!t.is_psd()) throw std::invalid_argument("reduce: form " + t.to_string() + " is not positive semi-definite");
  if (t.is_zero()) return {{0, 0, 0}, 1};
  const std::int64_t d = t.det();
  if (d == 0) {
    // a = g u^2, c = g v^2 with gcd(u, v) = 1, so the form is g (u x + v y)^2.
    return {{std::gcd(t.a, t.c), 0, 0}, 1};
  }
  std::int64_t a = t.a, b = t.b, c = t.c;
  // Proper (SL2) reduction: 2|b| <= a <= c, b >= 0 when 2|b| = a or a = c.
  for (;;) {
    if (a > c) {
      std::swap(a, c);
      b = -b;
    }
    // b <- b - s a with b in (-a/2, a/2]
    std::int64_t s = floor_div(2 * b + a - 1, 2 * a);
    if (s != 0) {
      std::int64_t nb = b - detail::checked_mul(s, a);
      c = (d + nb * nb) / a;
      b = nb;
      continue;
    }
    if (a > c) continue;
    break;
  }
  if (a == c && b < 0) b = -b;
  if (group == Group::GL2) return {{a, b < 0 ? -b : b, c}, 1};
  if (b < 0) return {{a, -b, c}, -1};
  return {{a, b, c}, 1};
}

/// 2x2 integer matrix whose rows span a sublattice of Z^2.
struct SublatticeBasis {
  std::int64_t h11 = 1, h12 = 0, h21 = 0, h22 = 1;
  std::int64_t index() const { return h11 * h22 - h12 * h21; }
  auto operator<=>(const SublatticeBasis&) const = default;
};

/// All index-Q sublattices of Z^2 containing QZ^2, Q square-free, in Hermite
/// normal form [[a, b], [0, d]] with a d = Q and 0 <= b < d.
inline std::vector<SublatticeBasis> sublattices(std::int64_t q) {
  if (!is_squarefree(q)) throw std::invalid_argument("sublattices: index " + std::to_string(q) + " is not square-free");
  std::vector<SublatticeBasis> out;
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    for (std::int64_t b = 0; b < d; ++b) out.push_back({q / d, b, 0, d});
  }
  return out;
}

/// P * (H T H^t): the Gram matrix of the restricted form in the rows of H, scaled by P.
inline GramForm restrict_and_scale(const GramForm& t, const SublatticeBasis& h, std::int64_t p) {
  using detail::checked_add;
  using detail::checked_mul;
  auto bil = [&t](std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2) {
    return checked_add(checked_add(checked_mul(t.a, checked_mul(x1, x2)),
                                   checked_mul(t.b, checked_add(checked_mul(x1, y2), checked_mul(y1, x2)))),
                       checked_mul(t.c, checked_mul(y1, y2)));
  };
  return {checked_mul(p, bil(h.h11, h.h12, h.h11, h.h12)), checked_mul(p, bil(h.h11, h.h12, h.h21, h.h22)),
          checked_mul(p, bil(h.h21, h.h22, h.h21, h.h22))};
}

enum class IsotropyClass { hyperbolic, anisotropic, rank_deficient, I_type, split_type };

inline std::string to_string(IsotropyClass c) {
  switch (c) {
    case IsotropyClass::hyperbolic: return "hyperbolic";
    case IsotropyClass::anisotropic: return "anisotropic";
    case IsotropyClass::rank_deficient: return "rank_deficient";
    case IsotropyClass::I_type: return "I_type";
    default: return "split_type";
  }
}

struct IsotropyResult {
  int count = 0;
  IsotropyClass cls = IsotropyClass::rank_deficient;
};

/// Isotropic lines of v -> v^t T v over F_p, counted over all p + 1 lines.
inline IsotropyResult isotropic_lines(const GramForm& t, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("isotropic_lines: " + std::to_string(p) + " is not prime");
  auto md = [p](std::int64_t x) { return ((x % p) + p) % p; };
  const std::int64_t a = md(t.a), b = md(t.b), c = md(t.c);
  auto q = [&](std::int64_t x, std::int64_t y) { return md(a * x * x + 2 * b * x * y + c * y * y); };
  IsotropyResult r;
  if (q(0, 1) == 0) ++r.count;
  for (std::int64_t s = 0; s < p; ++s)
    if (q(1, s) == 0) ++r.count;
  if (md(a * c - b * b) == 0) r.cls = IsotropyClass::rank_deficient;
  else if (p == 2) r.cls = (a % 2 == 1 || c % 2 == 1) ? IsotropyClass::I_type : IsotropyClass::split_type;
  else r.cls = (r.count == 2) ? IsotropyClass::hyperbolic : IsotropyClass::anisotropic;
  return r;
}

/// Reduced positive-definite forms with 1 <= det <= bound, sorted by sample_order.
inline std::vector<CanonicalForm> reduced_forms(std::int64_t det_bound, Group group) {
  std::vector<CanonicalForm> out;
  for (std::int64_t a = 1; 3 * a * a <= 4 * det_bound; ++a) {
    const std::int64_t bmin = (group == Group::GL2) ? 0 : -((a - 1) / 2);
    for (std::int64_t b = bmin; 2 * b <= a; ++b) {
      for (std::int64_t c = a;; ++c) {
        const std::int64_t d = a * c - b * b;
        if (d > det_bound) break;
        if (d < 1) continue;
        if (b < 0 && c == a) continue;
        if (b < 0) out.push_back({{a, -b, c}, -1});
        else out.push_back({{a, b, c}, 1});
      }
    }
  }
  std::sort(out.begin(), out.end(), sample_order);
  return out;
}

}  // namespace siegel
