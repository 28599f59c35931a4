#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// Elements are stored in the power basis 1, z, ..., z^{phi(m)-1} reduced
// modulo the m-th cyclotomic polynomial. Conductors are kept canonical
// (never congruent to 2 mod 4), and binary operations lift both operands to
// the lcm of their conductors.

#include <gmpxx.h>

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "num/den" or "num"; whitespace is not allowed.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Upper bound on conductors created by arithmetic. Overridable at runtime
/// (the CLI reads SIEGEL_CONDUCTOR_CAP).
inline std::atomic<int>& conductor_cap_storage() {
  static std::atomic<int> cap{120};
  return cap;
}
inline int conductor_cap() { return conductor_cap_storage().load(); }
inline void set_conductor_cap(int cap) {
  if (cap < 1) throw std::invalid_argument("conductor cap must be positive");
  conductor_cap_storage().store(cap);
}

namespace detail {

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline int canonical_conductor(int m) { return (m % 4 == 2) ? m / 2 : m; }

// Integer polynomials, low degree first.
using IntPoly = std::vector<long>;

inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

// Phi_m via x^m - 1 = prod_{d|m} Phi_d.
inline IntPoly cyclotomic_poly(int m, std::map<int, IntPoly>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_poly(d, memo));
  memo[m] = p;
  return p;
}

/// Per-conductor tables: z^j mod Phi_m for 0 <= j < m.
struct CycContext {
  int m = 1;
  int phi = 1;
  IntPoly cyclotomic;
  std::vector<std::vector<long>> power_table;
};

inline std::shared_ptr<const CycContext> context(int m) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CycContext>> cache;
  static std::map<int, IntPoly> memo;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  auto ctx = std::make_shared<CycContext>();
  ctx->m = m;
  ctx->phi = euler_phi(m);
  ctx->cyclotomic = cyclotomic_poly(m, memo);
  const int phi = ctx->phi;
  ctx->power_table.assign(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(phi), 0));
  std::vector<long> cur(static_cast<std::size_t>(phi), 0);
  cur[0] = 1;
  for (int j = 0; j < m; ++j) {
    ctx->power_table[static_cast<std::size_t>(j)] = cur;
    // multiply by x and reduce with x^phi = -sum_{i<phi} c_i x^i
    long top = cur[static_cast<std::size_t>(phi - 1)];
    for (int i = phi - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < phi; ++i) cur[static_cast<std::size_t>(i)] -= top * ctx->cyclotomic[static_cast<std::size_t>(i)];
  }
  cache[m] = ctx;
  return ctx;
}

}  // namespace detail

class CycNum {
 public:
  CycNum() : m_(1), coeffs_(1) {}
  CycNum(long value) : m_(1), coeffs_{Rational(value)} {}  // NOLINT(google-explicit-constructor)
  CycNum(const Rational& value) : m_(1), coeffs_{value} {}  // NOLINT(google-explicit-constructor)
  CycNum(const Integer& value) : m_(1), coeffs_{Rational(value)} {}  // NOLINT(google-explicit-constructor)

  /// Element of Q(zeta_m) with the given power-basis coordinates.
  CycNum(int m, std::vector<Rational> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    if (m % 4 == 2) {
      // Q(zeta_m) == Q(zeta_{m/2}); re-express through zeta_m = -zeta_{m/2}^{(m/2+1)/2}.
      CycNum acc(0);
      for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) acc += CycNum::zeta(m, static_cast<long>(i)) * CycNum(coeffs_[i]);
      *this = acc;
      return;
    }
    check_cap(m);
    if (static_cast<int>(coeffs_.size()) != detail::euler_phi(m))
      throw std::invalid_argument("coefficient count must equal phi(m)");
  }

  /// zeta_m^j, with the conductor reduced to the exact order of the root.
  static CycNum zeta(long m, long j) {
    if (m < 1) throw std::invalid_argument("zeta: order must be positive");
    j %= m;
    if (j < 0) j += m;
    long g = std::gcd(j, m);
    long d = m / g;
    long e = j / g;
    if (d == 1) return CycNum(1);
    if (d == 2) return CycNum(-1);
    if (d % 4 == 2) {
      long n = d / 2;
      CycNum r = zeta(n, e * ((n + 1) / 2));
      return (e % 2 == 0) ? r : -r;
    }
    check_cap(static_cast<int>(d));
    auto ctx = detail::context(static_cast<int>(d));
    std::vector<Rational> c(static_cast<std::size_t>(ctx->phi));
    const auto& row = ctx->power_table[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = row[i];
    CycNum out;
    out.m_ = static_cast<int>(d);
    out.coeffs_ = std::move(c);
    return out;
  }

  int conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  /// Rational value; throws if the element is not rational.
  Rational rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return coeffs_[0];
  }

  /// Representation of this element in Q(zeta_target); target must be a multiple of m.
  CycNum lifted(int target) const {
    target = detail::canonical_conductor(target);
    if (target == m_) return *this;
    if (target % m_ != 0) throw std::invalid_argument("lift target is not a multiple of the conductor");
    check_cap(target);
    auto ctx = detail::context(target);
    const int step = target / m_;
    std::vector<Rational> out(static_cast<std::size_t>(ctx->phi));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& row = ctx->power_table[(i * static_cast<std::size_t>(step)) % static_cast<std::size_t>(target)];
      for (std::size_t k = 0; k < out.size(); ++k)
        if (row[k] != 0) out[k] += coeffs_[i] * row[k];
    }
    CycNum r;
    r.m_ = target;
    r.coeffs_ = std::move(out);
    return r;
  }

  /// Same element expressed over the smallest conductor that contains it.
  CycNum simplified() const;

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycNum& operator+=(const CycNum& o) {
    if (m_ == o.m_) {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
      return *this;
    }
    const int target = std::lcm(m_, o.m_);
    *this = lifted(target);
    CycNum b = o.lifted(target);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    return *this;
  }
  CycNum& operator-=(const CycNum& o) { return *this += -o; }

  CycNum& operator*=(const CycNum& o) {
    *this = *this * o;
    return *this;
  }
  CycNum& operator/=(const CycNum& o) {
    *this = *this / o;
    return *this;
  }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.m_ == 1) return b.scaled(a.coeffs_[0]);
    if (b.m_ == 1) return a.scaled(b.coeffs_[0]);
    const int target = std::lcm(a.m_, b.m_);
    if (a.m_ != target || b.m_ != target) return a.lifted(target) * b.lifted(target);
    auto ctx = detail::context(target);
    const std::size_t phi = a.coeffs_.size();
    // Convolution first, then a single reduction through the power table.
    std::vector<Rational> conv(2 * phi - 1);
    for (std::size_t i = 0; i < phi; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j)
        if (b.coeffs_[j] != 0) conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    std::vector<Rational> out(phi);
    for (std::size_t s = 0; s < conv.size(); ++s) {
      if (conv[s] == 0) continue;
      if (s < phi) {
        out[s] += conv[s];
        continue;
      }
      const auto& row = ctx->power_table[s % static_cast<std::size_t>(target)];
      for (std::size_t k = 0; k < phi; ++k)
        if (row[k] != 0) out[k] += conv[s] * row[k];
    }
    CycNum r;
    r.m_ = target;
    r.coeffs_ = std::move(out);
    return r;
  }

  friend CycNum operator/(const CycNum& a, const CycNum& b) {
    if (b.m_ == 1) {
      if (b.coeffs_[0] == 0) throw std::domain_error("division by zero");
      return a.scaled(1 / b.coeffs_[0]);
    }
    return a * b.inverse();
  }

  CycNum scaled(const Rational& s) const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  /// Multiplicative inverse via the multiplication-by-a matrix.
  CycNum inverse() const;

  CycNum pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.m_ == b.m_) return a.coeffs_ == b.coeffs_;
    const int target = std::lcm(a.m_, b.m_);
    return a.lifted(target).coeffs_ == b.lifted(target).coeffs_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Embedding zeta_m -> exp(2 pi i / m).
  std::complex<double> to_complex() const {
    const double pi = 3.14159265358979323846;
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      double angle = 2.0 * pi * static_cast<double>(i) / static_cast<double>(m_);
      acc += coeffs_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
  }

  std::string to_string() const {
    CycNum s = simplified();
    if (s.m_ == 1) return s.coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
      const Rational& c = s.coeffs_[i];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      Rational a = abs(c);
      if (i == 0) os << a.get_str();
      else {
        if (a != 1) os << a.get_str() << "*";
        os << "z" << s.m_;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

 private:
  static void check_cap(int m) {
    if (m > conductor_cap())
      throw std::overflow_error("conductor " + std::to_string(m) + " exceeds cap " + std::to_string(conductor_cap()));
  }

  int m_;
  std::vector<Rational> coeffs_;
};

namespace detail {

// Solves sum_j x_j * rows[j] = target over Q; returns false when inconsistent.
inline bool solve_rational_rows(std::vector<std::vector<Rational>> rows, std::vector<Rational> target,
                                std::vector<Rational>& solution) {
  const std::size_t n = rows.size();
  const std::size_t len = target.size();
  // Columns of the system are the rows; build augmented matrix len x (n+1).
  std::vector<std::vector<Rational>> a(len, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[j][i];
    a[i][n] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < len; ++c) {
    std::size_t p = r;
    while (p < len && a[p][c] == 0) ++p;
    if (p == len) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k <= n; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < len; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < len; ++i)
    if (a[i][n] != 0) return false;
  solution.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) solution[pivot_col[i]] = a[i][n];
  return true;
}

}  // namespace detail

inline CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (m_ == 1) return CycNum(1 / coeffs_[0]);
  const std::size_t phi = coeffs_.size();
  // Row j of the multiplication matrix is this * z^j.
  std::vector<std::vector<Rational>> rows;
  rows.reserve(phi);
  for (std::size_t j = 0; j < phi; ++j) rows.push_back((*this * zeta(m_, static_cast<long>(j))).lifted(m_).coeffs_);
  std::vector<Rational> one(phi);
  one[0] = 1;
  std::vector<Rational> x;
  if (!detail::solve_rational_rows(rows, one, x)) throw std::domain_error("inverse: singular multiplication matrix");
  CycNum r;
  r.m_ = m_;
  r.coeffs_ = std::move(x);
  return r;
}

inline CycNum CycNum::simplified() const {
  if (m_ == 1 || is_rational()) return CycNum(coeffs_[0]);
  for (int d = 3; d < m_; ++d) {
    if (m_ % d != 0 || d % 4 == 2) continue;
    const int phi_d = detail::euler_phi(d);
    std::vector<std::vector<Rational>> rows;
    for (int j = 0; j < phi_d; ++j) rows.push_back(zeta(d, j).lifted(m_).coeffs_);
    std::vector<Rational> x;
    if (detail::solve_rational_rows(rows, coeffs_, x)) return CycNum(d, std::move(x));
  }
  return *this;
}

}  // namespace siegel
