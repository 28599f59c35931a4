#pragma once

// The Eisenstein basis of weight k, square-free level N and character chi,
// indexed by multiplicative partitions rho = (N0, N1, N2) of N.
//
// Basis order: total rank sum_q r_q(rho) ascending (r_q = i when q | N_i),
// ties broken by N2 descending, then N1 descending. With this order every
// Hecke matrix is upper triangular.

#include "characters.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace siegel {

struct Partition {
  long n0 = 1;
  long n1 = 1;
  long n2 = 1;

  long level() const { return n0 * n1 * n2; }
  /// 0, 1 or 2 according to which component q divides.
  int rank_at(long q) const {
    if (n0 % q == 0) return 0;
    if (n1 % q == 0) return 1;
    if (n2 % q == 0) return 2;
    throw std::invalid_argument("prime " + std::to_string(q) + " does not divide the partition level");
  }
  int total_rank() const {
    int r = 0;
    for (long q : prime_factors(level())) r += rank_at(q);
    return r;
  }
  /// Move q into component `to` (0, 1, 2).
  Partition moved(long q, int to) const {
    Partition p = *this;
    switch (rank_at(q)) {
      case 0: p.n0 /= q; break;
      case 1: p.n1 /= q; break;
      default: p.n2 /= q; break;
    }
    (to == 0 ? p.n0 : to == 1 ? p.n1 : p.n2) *= q;
    return p;
  }
  std::string to_string() const {
    return "(" + std::to_string(n0) + "," + std::to_string(n1) + "," + std::to_string(n2) + ")";
  }
  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n0 == b.n0 && a.n1 == b.n1 && a.n2 == b.n2;
  }
  friend bool operator<(const Partition& a, const Partition& b) {
    return std::tie(a.n0, a.n1, a.n2) < std::tie(b.n0, b.n1, b.n2);
  }
};

inline std::map<long, int> rank_vector(const Partition& rho) {
  std::map<long, int> out;
  for (long q : prime_factors(rho.level())) out[q] = rho.rank_at(q);
  return out;
}

class EisSpace {
 public:
  /// Throws on non-square-free level, k < 4, or (unless forced) a parity violation.
  EisSpace(long level, long weight, DirichletCharacter chi, bool forced = false)
      : level_(level), weight_(weight), chi_(std::move(chi)), forced_(forced) {
    if (!is_squarefree(level)) throw std::invalid_argument("level " + std::to_string(level) + " is not square-free");
    if (chi_.modulus() != level)
      throw std::invalid_argument("character modulus " + std::to_string(chi_.modulus()) + " differs from level");
    if (weight < 4) throw std::invalid_argument("weight must be at least 4");
    parity_ok_ = chi_.valid_for_weight(weight);
    if (!parity_ok_ && !forced)
      throw std::domain_error("parity: chi(-1) = " + chi_.parity().to_string() + " but (-1)^k = " +
                              std::string(weight % 2 == 0 ? "1" : "-1") + "; the Eisenstein series vanish");

    std::vector<Partition> parts{{1, 1, 1}};
    for (long q : prime_factors(level)) {
      std::vector<Partition> next;
      const bool real = chi_.local(q).is_real();
      for (const auto& p : parts) {
        next.push_back({p.n0 * q, p.n1, p.n2});
        if (real) next.push_back({p.n0, p.n1 * q, p.n2});
        next.push_back({p.n0, p.n1, p.n2 * q});
      }
      parts = std::move(next);
    }
    std::sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) {
      int ra = a.total_rank(), rb = b.total_rank();
      if (ra != rb) return ra < rb;
      if (a.n2 != b.n2) return a.n2 > b.n2;
      return a.n1 > b.n1;
    });
    basis_ = std::move(parts);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
  }

  long level() const { return level_; }
  long weight() const { return weight_; }
  const DirichletCharacter& character() const { return chi_; }
  bool forced() const { return forced_; }
  bool parity_ok() const { return parity_ok_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Partition>& basis() const { return basis_; }
  const Partition& operator[](std::size_t i) const { return basis_[i]; }

  std::optional<std::size_t> index_of(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_index(const Partition& p) const {
    auto i = index_of(p);
    if (!i) throw std::logic_error("partition " + p.to_string() + " is not in the basis");
    return *i;
  }

  std::vector<long> primes() const { return prime_factors(level_); }

  /// chi restricted to the primes of m, evaluated at n.
  CycNum chi_at(long m, long n) const { return chi_.component_value(m, n); }

 private:
  long level_;
  long weight_;
  DirichletCharacter chi_;
  bool forced_ = false;
  bool parity_ok_ = true;
  std::vector<Partition> basis_;
  std::map<Partition, std::size_t> index_;
};

inline EisSpace enumerate_partitions(long level, const DirichletCharacter& chi, long weight, bool forced = false) {
  return EisSpace(level, weight, chi, forced);
}

}  // namespace siegel
