#pragma once

// Dense univariate polynomials with CycNum coefficients.

#include "cyclotomic.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

namespace siegel {

class CycPoly {
 public:
  CycPoly() = default;
  /// Coefficients, constant term first.
  explicit CycPoly(std::vector<CycNum> coeffs) : c_(std::move(coeffs)) { trim(); }

  static CycPoly monomial(std::size_t degree, CycNum coeff = CycNum(1)) {
    std::vector<CycNum> c(degree + 1, CycNum(0));
    c[degree] = std::move(coeff);
    return CycPoly(std::move(c));
  }
  /// x - root
  static CycPoly linear(const CycNum& root) { return CycPoly({-root, CycNum(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<CycNum>& coeffs() const { return c_; }
  CycNum coeff(std::size_t i) const { return i < c_.size() ? c_[i] : CycNum(0); }
  CycNum leading() const { return c_.empty() ? CycNum(0) : c_.back(); }

  CycNum operator()(const CycNum& x) const {
    CycNum acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend CycPoly operator*(const CycPoly& a, const CycPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<CycNum> out(a.c_.size() + b.c_.size() - 1, CycNum(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return CycPoly(std::move(out));
  }
  friend CycPoly operator+(const CycPoly& a, const CycPoly& b) {
    std::vector<CycNum> out(std::max(a.c_.size(), b.c_.size()), CycNum(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return CycPoly(std::move(out));
  }
  friend bool operator==(const CycPoly& a, const CycPoly& b) { return a.c_ == b.c_; }

  /// Division by a monic linear factor (x - r); returns the quotient, remainder discarded.
  CycPoly deflate(const CycNum& r) const {
    if (c_.size() < 2) return {};
    std::vector<CycNum> q(c_.size() - 1, CycNum(0));
    CycNum carry(0);
    for (std::size_t i = c_.size(); i-- > 1;) {
      carry = c_[i] + carry * r;
      q[i - 1] = carry;
    }
    return CycPoly(std::move(q));
  }

  CycPoly monic() const {
    if (is_zero()) return {};
    CycNum inv = c_.back().inverse();
    std::vector<CycNum> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x * inv);
    return CycPoly(std::move(out));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string coeff = c_[i].to_string();
      bool unit = (coeff == "1" && i > 0);
      if (!unit) s += (coeff.find_first_of(" +") != std::string::npos) ? "(" + coeff + ")" : coeff;
      if (i > 0) s += std::string(unit ? "" : "*") + "x" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<CycNum> c_;
};

/// Rationals close to the real roots of a polynomial with rational
/// coefficients, found numerically. They are only candidates: callers confirm
/// them exactly.
inline std::vector<Rational> approximate_rational_roots(const CycPoly& p) {
  std::vector<Rational> out;
  const long n = p.degree();
  if (n < 1) return out;
  for (const auto& c : p.coeffs())
    if (!c.is_rational()) return out;
  // primitive integer multiple: rational roots have denominators dividing its leading coefficient
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, Integer(c.rational().get_den()));
  const Integer lead = Integer(p.leading().rational() * den);
  using C = std::complex<long double>;
  std::vector<long double> a;
  const CycPoly m = p.monic();
  for (const auto& c : m.coeffs()) a.push_back(static_cast<long double>(c.rational().get_d()));
  auto eval = [&a](C z) {
    C acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
  };
  long double radius = 1;
  for (long i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(a[static_cast<std::size_t>(i)]));
  std::vector<C> z(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::polar(radius * 0.9L, 0.4L + 6.283185307179586L * i / n);
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      C d = 1;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) d *= (z[i] - z[j]);
      if (std::abs(d) == 0) d = 1e-30L;
      C step = eval(z[i]) / d;
      z[i] -= step;
      moved = std::max(moved, std::abs(step) / std::max<long double>(1, std::abs(z[i])));
    }
    if (moved < 1e-16L) break;
  }
  auto push = [&out](const Rational& r) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  for (const auto& r : z) {
    if (std::abs(r.imag()) > 1e-6L * std::max<long double>(1, std::abs(r))) continue;
    const long double re = r.real();
    push(Rational(Integer(static_cast<double>(std::llround(re)))));
    if (std::fabs(static_cast<long double>(lead.get_d())) < 1e15L) {
      const long double l = static_cast<long double>(lead.get_d());
      Rational q(Integer(static_cast<double>(std::llround(re * l))), Integer(static_cast<double>(std::fabs(l))));
      if (l < 0) q = -q;
      q.canonicalize();
      push(q);
    }
  }
  return out;
}

}  // namespace siegel
