#pragma once

// Hecke operators T(p) and T1(p^2) acting on the Eisenstein basis, the
// simultaneous eigenbasis with its eigenvalues, and the S1/S2 elements that
// carry E_(N,1,1) onto the rest of the basis.
//
// Matrix convention: row rho holds the expansion of E_rho | T, i.e.
// E_rho | T = sum_sigma M[rho][sigma] E_sigma, and vectors act from the left.

#include "eisspace.hpp"
#include "matrix.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

enum class HeckeKind { T, T1 };

struct HeckeOp {
  HeckeKind kind = HeckeKind::T;
  long p = 2;

  static HeckeOp T(long p) { return check({HeckeKind::T, p}); }
  static HeckeOp T1(long p) { return check({HeckeKind::T1, p}); }

  /// "T(2)" or "T1(4)"
  std::string name() const {
    return kind == HeckeKind::T ? "T(" + std::to_string(p) + ")" : "T1(" + std::to_string(p * p) + ")";
  }
  /// "T:2" or "T1:2"
  std::string spec() const { return (kind == HeckeKind::T ? "T:" : "T1:") + std::to_string(p); }

  friend bool operator<(const HeckeOp& a, const HeckeOp& b) {
    if (a.p != b.p) return a.p < b.p;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  }
  friend bool operator==(const HeckeOp& a, const HeckeOp& b) { return a.kind == b.kind && a.p == b.p; }

 private:
  static HeckeOp check(HeckeOp op) {
    if (!is_prime(op.p)) throw std::invalid_argument("Hecke operator at non-prime " + std::to_string(op.p));
    return op;
  }
};

namespace detail {

inline Rational rpow(long base, long e) {
  Integer b(base), r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(r) : Rational(r);
}

}  // namespace detail

/// Exact matrix of op on the space.
inline CycMatrix hecke_matrix(const EisSpace& space, const HeckeOp& op) {
  using detail::rpow;
  const std::size_t n = space.dimension();
  const long k = space.weight();
  const long p = op.p;
  const long level = space.level();
  CycMatrix m(n, n);
  auto chi = [&space](long modulus, long x) { return space.chi_at(modulus, x); };
  auto put = [&](std::size_t row, const Partition& target, const CycNum& value) {
    m(row, space.require_index(target)) += value;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Partition& rho = space[i];
    const long n0 = rho.n0, n1 = rho.n1, n2 = rho.n2;

    if (level % p != 0) {
      if (op.kind == HeckeKind::T) {
        m(i, i) = chi(n0, p * p) * chi(n1, p) * CycNum(rpow(p, 2 * k - 3)) +
                  chi(n0 * n2, p) * CycNum(rpow(p, k - 2) * (p + 1)) + chi(n1, p) * chi(n2, p * p);
      } else {
        m(i, i) = CycNum(Rational(p + 1)) * (chi(n0, p * p) * CycNum(rpow(p, 2 * k - 3)) +
                                             chi(level, p) * CycNum(rpow(p, k - 3) * (p - 1)) + chi(n2, p * p));
      }
      continue;
    }

    const long q = p;
    const auto& local = space.character().local(q);
    const bool trivial = local.is_trivial();
    const bool real = local.is_real();
    const int r = rho.rank_at(q);
    if (r == 1 && !real) throw std::logic_error("basis element with chi_q^2 != 1 at a rank-1 prime");

    if (op.kind == HeckeKind::T) {
      if (r == 2) {
        m(i, i) = chi(n0, q * q) * chi(n1, q) * CycNum(rpow(q, 2 * k - 3));
      } else if (r == 1) {
        const CycNum f = chi(n0 * n2, q);
        m(i, i) = f * CycNum(rpow(q, k - 1));
        if (trivial) put(i, rho.moved(q, 2), f * CycNum(rpow(q, k - 3) * (q * q - 1)));
      } else {
        const CycNum f = chi(n1, q) * chi(n2, q * q);
        m(i, i) = f;
        if (trivial) {
          put(i, rho.moved(q, 1), f * CycNum(make_rational(q - 1, q)));
          put(i, rho.moved(q, 2), f * CycNum(make_rational(q - 1, q)));
        } else if (real) {
          put(i, rho.moved(q, 2), f * CycNum(make_rational(legendre_epsilon(q) * (q - 1), q * q)));
        }
      }
    } else {
      if (r == 2) {
        m(i, i) = chi(n0, q * q) * CycNum(rpow(q, 2 * k - 3) * (q + 1));
      } else if (r == 1) {
        m(i, i) = chi(n0, q * q) * CycNum(rpow(q, 2 * k - 2)) + chi(n2, q * q) * CycNum(Rational(q));
        if (trivial)
          put(i, rho.moved(q, 2),
              (chi(level / q, q) * CycNum(rpow(q, k - 2)) + chi(n2, q * q)) * CycNum(make_rational(q * q - 1, q)));
      } else {
        const CycNum f = chi(n2, q * q);
        m(i, i) = f * CycNum(Rational(q + 1));
        if (trivial) {
          put(i, rho.moved(q, 1),
              (chi(level / q, q) * CycNum(rpow(q, k - 1)) + f) * CycNum(make_rational(q - 1, q)));
          put(i, rho.moved(q, 2), f * CycNum(make_rational(q * q - 1, q * q)));
        } else if (real) {
          put(i, rho.moved(q, 2), f * CycNum(make_rational(legendre_epsilon(q) * (q * q - 1), q * q)));
        }
      }
    }
  }
  return m;
}

struct HeckeMatrix {
  std::shared_ptr<const EisSpace> space;
  HeckeOp op;
  CycMatrix m;
};

/// A space together with a cache of its Hecke matrices. Concurrent readers
/// are safe; each matrix is built once and published under a write lock.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(EisSpace space) : space_(std::make_shared<const EisSpace>(std::move(space))) {}

  const EisSpace& space() const { return *space_; }
  std::shared_ptr<const EisSpace> space_ptr() const { return space_; }

  std::shared_ptr<const HeckeMatrix> matrix(const HeckeOp& op) const {
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(op); it != cache_.end()) return it->second;
    }
    auto built = std::make_shared<const HeckeMatrix>(HeckeMatrix{space_, op, hecke_matrix(*space_, op)});
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.emplace(op, std::move(built));
    return it->second;
  }
  const CycMatrix& operator()(const HeckeOp& op) const { return matrix(op)->m; }

  std::vector<HeckeOp> cached_ops() const {
    std::shared_lock lock(mutex_);
    std::vector<HeckeOp> out;
    for (const auto& [op, m] : cache_) out.push_back(op);
    return out;
  }

 private:
  std::shared_ptr<const EisSpace> space_;
  mutable std::shared_mutex mutex_;
  mutable std::map<HeckeOp, std::shared_ptr<const HeckeMatrix>> cache_;
};

/// T(p), T1(p^2) for every prime p <= prime_max and every prime dividing the level.
inline std::vector<HeckeOp> default_ops(const EisSpace& space, long prime_max) {
  std::vector<long> primes;
  for (long p = 2; p <= prime_max; ++p)
    if (is_prime(p)) primes.push_back(p);
  for (long q : space.primes())
    if (q > prime_max) primes.push_back(q);
  std::vector<HeckeOp> ops;
  for (long p : primes) {
    ops.push_back(HeckeOp::T(p));
    ops.push_back(HeckeOp::T1(p));
  }
  return ops;
}

/// Eigenvalue as tabulated in the closed-form theorem. For p | N1 the T1
/// entry is reproduced as printed (exponent 2k-3); the matrices carry 2k-2.
inline CycNum eigenvalue_closed_form(const EisSpace& space, const Partition& rho, const HeckeOp& op) {
  using detail::rpow;
  const long k = space.weight(), p = op.p;
  auto chi = [&space](long modulus, long x) { return space.chi_at(modulus, x); };
  const long n0 = rho.n0, n1 = rho.n1, n2 = rho.n2;
  if (op.kind == HeckeKind::T) {
    if (space.level() % p != 0)
      return (chi(n0 * n1, p) * CycNum(rpow(p, k - 1)) + chi(n2, p)) *
             (chi(n0, p) * CycNum(rpow(p, k - 2)) + chi(n1 * n2, p));
    switch (rho.rank_at(p)) {
      case 2: return chi(n0, p * p) * chi(n1, p) * CycNum(rpow(p, 2 * k - 3));
      case 1: return chi(n0 * n2, p) * CycNum(rpow(p, k - 1));
      default: return chi(n1, p) * chi(n2, p * p);
    }
  }
  if (space.level() % p != 0)
    return CycNum(Rational(p + 1)) * (chi(n0, p * p) * CycNum(rpow(p, 2 * k - 3)) +
                                      chi(space.level(), p) * CycNum(rpow(p, k - 3) * (p - 1)) + chi(n2, p * p));
  switch (rho.rank_at(p)) {
    case 2: return chi(n0, p * p) * CycNum(rpow(p, 2 * k - 3) * (p + 1));
    case 1: return chi(n0, p * p) * CycNum(rpow(p, 2 * k - 3)) + chi(n2, p * p) * CycNum(Rational(p));
    default: return chi(n2, p * p) * CycNum(Rational(p + 1));
  }
}

/// Coefficients of the eigenform combination at a single prime q | N.
/// Character values chi_M(q) with q | M are read with the q-component removed.
struct EigenCoefficients {
  CycNum a;  // q | N0: weight of the partition with q moved to N1
  CycNum b;  // q | N0: weight of the partition with q moved to N2
  CycNum c;  // q | N1: weight of the partition with q moved to N2
};

inline EigenCoefficients eigen_coefficients(const EisSpace& space, const Partition& rho, long q) {
  using detail::rpow;
  const long k = space.weight();
  auto chi = [&space, q](long modulus, long x) {
    return space.chi_at(modulus % q == 0 ? modulus / q : modulus, x);
  };
  const auto& local = space.character().local(q);
  EigenCoefficients out{CycNum(0), CycNum(0), CycNum(0)};
  const Rational qr(q);
  const int r = rho.rank_at(q);
  if (r == 0) {
    const CycNum a_den = chi(rho.n0, q) * CycNum(rpow(q, k - 1)) - chi(rho.n1 * rho.n2, q);
    const CycNum b_den2 = chi(rho.n0, q * q) * CycNum(rpow(q, 2 * k - 3)) - chi(rho.n2, q * q);
    if (local.is_trivial()) {
      out.a = -(chi(rho.n1 * rho.n2, q) * CycNum(make_rational(q - 1, q))) / a_den;
      const CycNum num = chi(rho.n2, q * q) * CycNum(make_rational(q - 1, q)) *
                         (chi(rho.n0, q) * CycNum(rpow(q, k - 3)) - chi(rho.n1 * rho.n2, q));
      out.b = -num / (a_den * b_den2);
    } else if (local.is_real()) {
      out.b = -(CycNum(make_rational(legendre_epsilon(q) * (q - 1), q * q)) * chi(rho.n2, q * q)) / b_den2;
    }
  } else if (r == 1 && local.is_trivial()) {
    const CycNum den = chi(rho.n0 * rho.n1, q) * CycNum(rpow(q, k - 2)) - chi(rho.n2, q);
    out.c = -(chi(rho.n2, q) * CycNum(make_rational(q * q - 1, q * q))) / den;
  }
  return out;
}

struct EigenVector {
  Partition label;
  CycVector coeffs;  // in the ordered E basis
  std::map<HeckeOp, CycNum> eigenvalues;
};

struct EigenSystem {
  std::shared_ptr<const EisSpace> space;
  std::vector<HeckeOp> ops;
  std::vector<EigenVector> vectors;
};

/// The combination E~_rho = sum a(Q0) b(Q0') c(Q1) E_sigma over disjoint
/// Q0, Q0' | N0 and Q1 | N1, where sigma moves Q0 into N1, Q0' into N2 and
/// Q1 into N2.
inline CycVector eigenform_coefficients(const EisSpace& space, const Partition& rho) {
  CycVector v(space.dimension(), CycNum(0));
  struct Term {
    Partition target;
    CycNum coeff;
  };
  std::vector<Term> terms{{rho, CycNum(1)}};
  for (long q : space.primes()) {
    const int r = rho.rank_at(q);
    if (r == 2) continue;
    const auto co = eigen_coefficients(space, rho, q);
    std::vector<Term> next;
    for (const auto& t : terms) {
      next.push_back(t);
      if (r == 0) {
        if (!co.a.is_zero()) next.push_back({t.target.moved(q, 1), t.coeff * co.a});
        if (!co.b.is_zero()) next.push_back({t.target.moved(q, 2), t.coeff * co.b});
      } else if (!co.c.is_zero()) {
        next.push_back({t.target.moved(q, 2), t.coeff * co.c});
      }
    }
    terms = std::move(next);
  }
  for (const auto& t : terms) v[space.require_index(t.target)] += t.coeff;
  return v;
}

/// Builds every E~_rho and checks v*M == lambda*v against each operator.
inline EigenSystem eigenbasis(const HeckeAlgebra& alg, const std::vector<HeckeOp>& ops) {
  const EisSpace& space = alg.space();
  EigenSystem sys{alg.space_ptr(), ops, {}};
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    EigenVector ev{space[i], eigenform_coefficients(space, space[i]), {}};
    for (const auto& op : ops) {
      const CycMatrix& m = alg(op);
      const CycNum lambda = m(i, i);
      if (vec_mat(ev.coeffs, m) != scale(ev.coeffs, lambda))
        throw std::logic_error("eigenbasis: E~" + space[i].to_string() + " is not an eigenvector of " + op.name());
      ev.eigenvalues.emplace(op, lambda);
    }
    sys.vectors.push_back(std::move(ev));
  }
  return sys;
}

inline EigenSystem eigenbasis(const HeckeAlgebra& alg, long prime_max = 13) {
  return eigenbasis(alg, default_ops(alg.space(), prime_max));
}

struct EigenvalueComparison {
  Partition partition;
  HeckeOp op;
  CycNum matrix_value;
  CycNum closed_form;
  bool match = false;
};

inline std::vector<EigenvalueComparison> compare_eigenvalues(const EigenSystem& sys) {
  std::vector<EigenvalueComparison> out;
  for (const auto& ev : sys.vectors)
    for (const auto& op : sys.ops) {
      const CycNum& mv = ev.eigenvalues.at(op);
      CycNum cf = eigenvalue_closed_form(*sys.space, ev.label, op);
      out.push_back({ev.label, op, mv, cf, mv == cf});
    }
  return out;
}

enum class SKind { S1, S2 };

/// S1(q) or S2(q) as a matrix polynomial in T(q), T1(q^2).
inline CycMatrix s_operator(const HeckeAlgebra& alg, long q, SKind which) {
  using detail::rpow;
  const EisSpace& space = alg.space();
  if (!is_prime(q) || space.level() % q != 0)
    throw std::invalid_argument("S operator: " + std::to_string(q) + " is not a prime dividing the level");
  const long k = space.weight();
  const auto& local = space.character().local(q);
  const std::size_t n = space.dimension();
  const CycMatrix id = CycMatrix::identity(n);
  const CycMatrix& t = alg(HeckeOp::T(q));
  const CycNum chi_rest = space.chi_at(space.level() / q, q);

  if (local.is_trivial()) {
    const CycNum c = CycNum(Rational(q * q)) / (CycNum(Rational(q - 1)) * (chi_rest * CycNum(rpow(q, k)) - CycNum(1)));
    const CycMatrix& t1 = alg(HeckeOp::T1(q));
    if (which == SKind::S1)
      return (t1 - t * CycNum(make_rational(q + 1, q)) - id * CycNum(make_rational(q * q - 1, q))) * c;
    return (t * (chi_rest * CycNum(rpow(q, k - 1)) + CycNum(1)) - t1 -
            id * (CycNum(Rational(q)) * (chi_rest * CycNum(rpow(q, k - 2)) - CycNum(1)))) *
           c;
  }
  if (which == SKind::S1) throw std::invalid_argument("S1(" + std::to_string(q) + ") requires chi_q = 1");
  if (!local.is_real()) throw std::invalid_argument("S2(" + std::to_string(q) + ") requires chi_q^2 = 1");
  return (t - id) * CycNum(make_rational(legendre_epsilon(q) * q * q, q - 1));
}

/// S1(N1) S2(N2): primes ascending, S1 factors first.
inline CycMatrix s_word(const HeckeAlgebra& alg, long n1, long n2) {
  const EisSpace& space = alg.space();
  if (n1 < 1 || n2 < 1 || space.level() % (n1 * n2) != 0 || std::gcd(n1, n2) != 1)
    throw std::invalid_argument("s_word: N1, N2 must be coprime with N1*N2 dividing the level");
  for (long q : prime_factors(n1))
    if (!space.character().local(q).is_trivial())
      throw std::invalid_argument("s_word: chi must be trivial on N1 (fails at " + std::to_string(q) + ")");
  for (long q : prime_factors(n2))
    if (!space.character().local(q).is_real())
      throw std::invalid_argument("s_word: chi^2 must be trivial on N2 (fails at " + std::to_string(q) + ")");
  CycMatrix w = CycMatrix::identity(space.dimension());
  for (long q : prime_factors(n1)) w = w * s_operator(alg, q, SKind::S1);
  for (long q : prime_factors(n2)) w = w * s_operator(alg, q, SKind::S2);
  return w;
}

inline CycVector unit_vector(std::size_t n, std::size_t i) {
  CycVector v(n, CycNum(0));
  v[i] = CycNum(1);
  return v;
}

}  // namespace siegel
