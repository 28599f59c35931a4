#pragma once

// Dirichlet characters modulo a square-free level, stored as a product of
// local characters chi_q. chi_q sends the smallest primitive root g_q mod q
// to zeta_{q-1}^j.

#include "cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

inline long mod_pow(long base, long e, long m) {
  long r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * base) % m);
    base = static_cast<long>((static_cast<__int128>(base) * base) % m);
    e >>= 1;
  }
  return r;
}

inline long smallest_primitive_root(long q) {
  if (q == 2) return 1;
  const auto factors = prime_factors(q - 1);
  for (long g = 2; g < q; ++g) {
    bool ok = true;
    for (long f : factors)
      if (mod_pow(g, (q - 1) / f, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

/// (-1/q) for an odd prime q.
inline int legendre_epsilon(long q) {
  if (q == 2 || !is_prime(q)) throw std::invalid_argument("legendre_epsilon: q must be an odd prime");
  return (q % 4 == 1) ? 1 : -1;
}

class LocalCharacter {
 public:
  LocalCharacter(long q, long j) : q_(q), j_(j) {
    if (!is_prime(q)) throw std::invalid_argument("local character: " + std::to_string(q) + " is not prime");
    if (j < 0 || j >= std::max(q - 1, 1L) || (q == 2 && j != 0))
      throw std::invalid_argument("local character at " + std::to_string(q) + ": exponent " + std::to_string(j) +
                                  " out of range");
    g_ = smallest_primitive_root(q);
    // discrete log table
    log_.assign(static_cast<std::size_t>(q), -1);
    long x = 1;
    for (long t = 0; t < q - 1; ++t) {
      log_[static_cast<std::size_t>(x)] = t;
      x = x * g_ % q;
    }
    if (q == 2) log_[1] = 0;
  }

  long prime() const { return q_; }
  long exponent() const { return j_; }
  long generator() const { return g_; }
  long order() const { return (q_ == 2) ? 1 : (q_ - 1) / std::gcd(q_ - 1, j_); }
  bool is_trivial() const { return j_ == 0; }
  bool is_real() const { return order() <= 2; }

  /// chi_q(n) as the fraction e/order of a full turn; nullopt when q | n.
  std::optional<std::pair<long, long>> angle(long n) const {
    long r = n % q_;
    if (r < 0) r += q_;
    if (r == 0) return std::nullopt;
    const long ord = order();
    const long g = std::gcd(q_ - 1, j_ == 0 ? q_ - 1 : j_);
    // zeta_{q-1}^{j t} == zeta_ord^{(j/g) t}
    long e = (q_ == 2) ? 0 : ((j_ / g) * log_[static_cast<std::size_t>(r)]) % ord;
    return std::make_pair(e, ord);
  }

  CycNum operator()(long n) const {
    auto a = angle(n);
    if (!a) return CycNum(0);
    return CycNum::zeta(a->second, a->first);
  }

 private:
  long q_;
  long j_;
  long g_ = 1;
  std::vector<long> log_;
};

class DirichletCharacter {
 public:
  /// Character mod N; primes of N missing from spec get the trivial component.
  DirichletCharacter(long modulus, const std::vector<std::pair<long, long>>& spec = {}) : n_(modulus) {
    if (!is_squarefree(modulus)) throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not square-free");
    for (const auto& [q, j] : spec) {
      if (!is_prime(q) || modulus % q != 0)
        throw std::invalid_argument("character component at " + std::to_string(q) + " does not divide the modulus");
      if (locals_.count(q)) throw std::invalid_argument("duplicate character component at " + std::to_string(q));
      locals_.emplace(q, LocalCharacter(q, j));
    }
    for (long q : prime_factors(modulus))
      if (!locals_.count(q)) locals_.emplace(q, LocalCharacter(q, 0));
  }

  static DirichletCharacter trivial(long modulus) { return DirichletCharacter(modulus); }

  long modulus() const { return n_; }
  const std::map<long, LocalCharacter>& locals() const { return locals_; }
  const LocalCharacter& local(long q) const {
    auto it = locals_.find(q);
    if (it == locals_.end()) throw std::invalid_argument("no local component at " + std::to_string(q));
    return it->second;
  }

  long order() const {
    long o = 1;
    for (const auto& [q, c] : locals_) o = std::lcm(o, c.order());
    return o;
  }
  bool is_trivial() const {
    for (const auto& [q, c] : locals_)
      if (!c.is_trivial()) return false;
    return true;
  }
  /// chi^2 == 1
  bool is_real() const {
    for (const auto& [q, c] : locals_)
      if (!c.is_real()) return false;
    return true;
  }

  CycNum operator()(long n) const {
    long num = 0, den = 1;
    for (const auto& [q, c] : locals_) {
      auto a = c.angle(n);
      if (!a) return CycNum(0);
      long l = std::lcm(den, a->second);
      num = num * (l / den) + a->first * (l / a->second);
      den = l;
      num %= den;
    }
    return CycNum::zeta(den, num);
  }

  /// chi_m(n): the product of the local components at primes dividing m, at n.
  CycNum component_value(long m, long n) const {
    long num = 0, den = 1;
    for (const auto& [q, c] : locals_) {
      if (m % q != 0) continue;
      auto a = c.angle(n);
      if (!a) return CycNum(0);
      long l = std::lcm(den, a->second);
      num = (num * (l / den) + a->first * (l / a->second)) % l;
      den = l;
    }
    return CycNum::zeta(den, num);
  }

  /// Product of the local components at primes dividing m.
  DirichletCharacter restrict_to(long m) const {
    if (m < 1 || n_ % m != 0) throw std::invalid_argument("restrict: " + std::to_string(m) + " does not divide " + std::to_string(n_));
    std::vector<std::pair<long, long>> spec;
    for (long q : prime_factors(m)) spec.emplace_back(q, local(q).exponent());
    return DirichletCharacter(m, spec);
  }

  /// chi(-1), i.e. chi(N-1); 1 for the modulus-1 character.
  CycNum parity() const { return n_ == 1 ? CycNum(1) : (*this)(n_ - 1); }

  /// chi(-1) == (-1)^k
  bool valid_for_weight(long k) const { return parity() == CycNum(k % 2 == 0 ? 1 : -1); }

  /// Spec string: "1" or "q1:j1,q2:j2" listing nontrivial components.
  std::string spec_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [q, c] : locals_) {
      if (c.is_trivial()) continue;
      if (!first) os << ",";
      os << q << ":" << c.exponent();
      first = false;
    }
    return first ? "1" : os.str();
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.n_ != b.n_) return false;
    for (const auto& [q, c] : a.locals_)
      if (b.local(q).exponent() != c.exponent()) return false;
    return true;
  }

 private:
  long n_;
  std::map<long, LocalCharacter> locals_;
};

struct CharacterProperties {
  long order = 1;
  std::map<long, bool> is_real_at;
  CycNum parity;
  bool valid_space = false;
};

inline CharacterProperties char_props(const DirichletCharacter& chi, long k) {
  CharacterProperties p;
  p.order = chi.order();
  for (const auto& [q, c] : chi.locals()) p.is_real_at[q] = c.is_real();
  p.parity = chi.parity();
  p.valid_space = chi.valid_for_weight(k);
  return p;
}

/// Parses "1" or "q1:j1,q2:j2,..." against the given modulus.
inline DirichletCharacter parse_character(long modulus, const std::string& text) {
  std::vector<std::pair<long, long>> spec;
  if (text != "1" && !text.empty()) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("character item '" + item + "' is not q:j");
      try {
        std::size_t used1 = 0, used2 = 0;
        long q = std::stol(item.substr(0, colon), &used1);
        long j = std::stol(item.substr(colon + 1), &used2);
        if (used1 != colon || used2 != item.size() - colon - 1) throw std::invalid_argument("trailing characters");
        spec.emplace_back(q, j);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("character item '" + item + "' is not q:j");
      }
    }
  }
  return DirichletCharacter(modulus, spec);
}

/// All characters mod N whose local orders lie in the allowed set.
inline std::vector<DirichletCharacter> enumerate_characters(long modulus, const std::vector<long>& allowed_orders) {
  std::vector<std::vector<std::pair<long, long>>> specs{{}};
  for (long q : prime_factors(modulus)) {
    std::vector<std::vector<std::pair<long, long>>> next;
    for (long j = 0; j < std::max(q - 1, 1L); ++j) {
      long ord = (q == 2) ? 1 : (q - 1) / std::gcd(q - 1, j);
      if (std::find(allowed_orders.begin(), allowed_orders.end(), ord) == allowed_orders.end()) continue;
      for (auto s : specs) {
        s.emplace_back(q, j);
        next.push_back(std::move(s));
      }
    }
    specs = std::move(next);
  }
  std::vector<DirichletCharacter> out;
  for (const auto& s : specs) out.emplace_back(modulus, s);
  return out;
}

}  // namespace siegel
