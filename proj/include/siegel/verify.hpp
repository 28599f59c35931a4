#pragma once

// Oracle suite: brute-force counts, matrix identities and cross-checks over a
// configurable range of levels, weights and characters.

#include "eisspace.hpp"
#include "hecke.hpp"
#include "lattices.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

enum class CheckStatus { pass, fail, documented_mismatch };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "documented-mismatch";
  }
}

struct CheckRecord {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  CheckStatus status = CheckStatus::pass;
  std::string details;
};

struct VerifyConfig {
  long N_max = 30;
  std::vector<long> k_set{4, 5, 6, 7};
  long prime_max = 13;
  std::vector<long> char_orders{1, 2, 4};
  long trials = 1000;
  std::uint64_t seed = 7;
};

inline VerifyConfig preset(const std::string& name) {
  if (name == "desk") return {30, {4, 5, 6, 7}, 13, {1, 2, 4}, 1000, 7};
  if (name == "quick") return {6, {4, 5}, 5, {1, 2}, 100, 7};
  if (name == "tiny") return {2, {4}, 3, {1}, 10, 7};
  throw std::invalid_argument("unknown preset '" + name + "' (desk, quick, tiny)");
}

struct VerificationReport {
  VerifyConfig config;
  std::vector<CheckRecord> checks;

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const CheckRecord& c) { return c.status == s; }));
  }
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

/// Index-q subgroups of Z^2, as kernels of surjections Z^2 -> Z/q, by explicit
/// element sets.
inline long subgroup_count_oracle(long q) {
  std::set<std::vector<std::pair<long, long>>> kernels;
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      std::vector<std::pair<long, long>> k;
      for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y)
          if ((a * x + b * y) % q == 0) k.emplace_back(x, y);
      kernels.insert(std::move(k));
    }
  return static_cast<long>(kernels.size());
}

namespace detail {

struct Mat2 {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
};

/// G^t T G
inline GramForm congruence(const GramForm& t, const Mat2& g) {
  // T G
  const std::int64_t m11 = t.a * g.a + t.b * g.c, m12 = t.a * g.b + t.b * g.d;
  const std::int64_t m21 = t.b * g.a + t.c * g.c, m22 = t.b * g.b + t.c * g.d;
  return {g.a * m11 + g.c * m21, g.a * m12 + g.c * m22, g.b * m12 + g.d * m22};
}

inline bool is_reduced(const CanonicalForm& f, Group group) {
  const auto& t = f.form;
  if (t.is_zero()) return true;
  if (t.det() == 0) return t.b == 0 && t.c == 0 && t.a > 0;
  if (!(0 <= 2 * t.b && 2 * t.b <= t.a && t.a <= t.c)) return false;
  if (group == Group::GL2 && f.orient != 1) return false;
  if (f.orient == -1 && (2 * t.b == t.a || t.a == t.c || t.b == 0)) return false;
  return true;
}

inline std::string join(const std::vector<std::string>& items, std::size_t limit = 8) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) os << (i ? "; " : "") << items[i];
  if (items.size() > limit) os << "; ... (" << items.size() << " total)";
  return os.str();
}

inline CheckRecord record(std::string name, std::vector<std::pair<std::string, std::string>> params,
                          const std::vector<std::string>& failures, std::string ok_details = "") {
  CheckRecord r{std::move(name), std::move(params), CheckStatus::pass, std::move(ok_details)};
  if (!failures.empty()) {
    r.status = CheckStatus::fail;
    r.details = join(failures);
  }
  return r;
}

inline std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  for (long p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline std::string list_string(const std::vector<long>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace detail

inline CheckRecord check_sublattice_counts(long q_max) {
  std::vector<std::string> bad;
  for (long q : detail::primes_up_to(q_max)) {
    const auto subs = sublattices(q);
    const long oracle = subgroup_count_oracle(q);
    std::set<SublatticeBasis> uniq(subs.begin(), subs.end());
    if (static_cast<long>(subs.size()) != q + 1 || oracle != q + 1 || uniq.size() != subs.size())
      bad.push_back("q=" + std::to_string(q) + ": listed " + std::to_string(subs.size()) + ", oracle " + std::to_string(oracle));
    for (const auto& h : subs)
      if (h.index() != q) bad.push_back("q=" + std::to_string(q) + ": basis of wrong index");
  }
  // square-free composites: product of (q + 1)
  for (long n = 1; n <= 30; ++n) {
    if (!is_squarefree(n)) continue;
    long expect = 1;
    for (long q : prime_factors(n)) expect *= q + 1;
    if (static_cast<long>(sublattices(n).size()) != expect) bad.push_back("Q=" + std::to_string(n) + ": wrong count");
  }
  return detail::record("lattices.sublattice_count", {{"q_max", std::to_string(q_max)}}, bad);
}

inline CheckRecord check_reduction(long trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(-50, 50), pos(1, 50), ent(-10, 10);
  auto random_form = [&] {
    for (;;) {
      GramForm t{pos(rng), coef(rng), pos(rng)};
      if (t.det() > 0) return t;
    }
  };
  auto random_unimodular = [&](bool proper) {
    for (;;) {
      detail::Mat2 g{ent(rng), ent(rng), ent(rng), ent(rng)};
      const auto d = g.det();
      if (d == 1 || (!proper && d == -1)) return g;
    }
  };
  std::vector<std::string> bad;
  for (long i = 0; i < trials; ++i) {
    const GramForm t = random_form();
    for (Group group : {Group::GL2, Group::SL2}) {
      const auto g = random_unimodular(group == Group::SL2);
      const GramForm u = detail::congruence(t, g);
      const auto r1 = reduce(t, group), r2 = reduce(u, group);
      if (r1 != r2) bad.push_back("class of " + t.to_string() + " moved under G: " + r1.form.to_string() + " vs " + r2.form.to_string());
      if (!detail::is_reduced(r1, group)) bad.push_back(r1.form.to_string() + " is not reduced");
      if (reduce(r1.oriented(), group) != r1) bad.push_back("reduce not idempotent at " + t.to_string());
      if (r1.det() != t.det()) bad.push_back("determinant changed for " + t.to_string());
    }
    if (reduce(reduce(t, Group::SL2).oriented(), Group::GL2) != reduce(t, Group::GL2))
      bad.push_back("SL2 and GL2 classes disagree for " + t.to_string());
  }
  // rank-1 and zero forms
  for (std::int64_t m = 1; m <= 6; ++m)
    for (std::int64_t u = -4; u <= 4; ++u)
      for (std::int64_t v = -4; v <= 4; ++v) {
        if (std::gcd(u, v) != 1) continue;
        GramForm t{m * u * u, m * u * v, m * v * v};
        if (reduce(t).form != GramForm{m, 0, 0}) bad.push_back("rank-1 form " + t.to_string() + " misreduced");
      }
  if (!reduce({0, 0, 0}).form.is_zero()) bad.push_back("zero form moved");
  return detail::record("lattices.reduction_invariance", {{"trials", std::to_string(trials)}, {"seed", std::to_string(seed)}}, bad);
}

inline CheckRecord check_restrict_det(long trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::int64_t> coef(-20, 20), pos(0, 20), pp(1, 7);
  const std::vector<std::int64_t> qs{1, 2, 3, 5, 6, 7, 10};
  std::vector<std::string> bad;
  for (long i = 0; i < trials; ++i) {
    GramForm t{pos(rng), coef(rng), pos(rng)};
    const std::int64_t q = qs[static_cast<std::size_t>(i) % qs.size()], p = pp(rng);
    for (const auto& h : sublattices(q)) {
      const GramForm s = restrict_and_scale(t, h, p);
      if (s.det() != p * p * q * q * t.det()) bad.push_back("det identity fails at " + t.to_string());
    }
  }
  return detail::record("lattices.restrict_det", {{"trials", std::to_string(trials)}, {"seed", std::to_string(seed)}}, bad);
}

inline CheckRecord check_isotropy(long p_max) {
  std::vector<std::string> bad;
  for (long p : detail::primes_up_to(p_max)) {
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        for (long c = 0; c < p; ++c) {
          long zeros = 0;
          for (long x = 0; x < p; ++x)
            for (long y = 0; y < p; ++y)
              if ((x || y) && (a * x * x + 2 * b * x * y + c * y * y) % p == 0) ++zeros;
          const long brute = zeros / (p - 1);
          const auto r = isotropic_lines({a, b, c}, p);
          const std::string at = "p=" + std::to_string(p) + " " + GramForm{a, b, c}.to_string();
          if (r.count != brute) bad.push_back(at + ": count " + std::to_string(r.count) + " vs " + std::to_string(brute));
          const long det = ((a * c - b * b) % p + p) % p;
          if (det == 0) {
            if (r.cls != IsotropyClass::rank_deficient) bad.push_back(at + ": expected rank_deficient");
            continue;
          }
          if (p == 2) {
            const bool one = (a % 2 == 1 || c % 2 == 1);
            if ((one && (r.cls != IsotropyClass::I_type || brute != 1)) || (!one && (r.cls != IsotropyClass::split_type || brute != 3)))
              bad.push_back(at + ": p=2 classification");
            continue;
          }
          // -det a square mod p <=> hyperbolic plane
          const bool square = mod_pow(p - det, (p - 1) / 2, p) == 1;
          if (square && (r.cls != IsotropyClass::hyperbolic || brute != 2)) bad.push_back(at + ": expected hyperbolic");
          if (!square && (r.cls != IsotropyClass::anisotropic || brute != 0)) bad.push_back(at + ": expected anisotropic");
        }
  }
  return detail::record("lattices.isotropy", {{"p_max", std::to_string(p_max)}}, bad);
}

/// T(p) at level 1 against (p^{k-1}+1)(p^{k-2}+1): as polynomials in p (compared
/// at 2k-2 points, above the degree) and on the matrices for p <= prime_max.
inline CheckRecord check_level_one(long k, long prime_max) {
  std::vector<std::string> bad;
  for (long x = 0; x <= 2 * k - 2; ++x) {
    const Integer X = x;
    Integer lhs = 1, pk1 = 1, pk2 = 1, p2k3 = 1;
    for (long i = 0; i < k - 1; ++i) pk1 *= X;
    for (long i = 0; i < k - 2; ++i) pk2 *= X;
    for (long i = 0; i < 2 * k - 3; ++i) p2k3 *= X;
    lhs = p2k3 + pk2 * (X + 1) + 1;
    const Integer rhs = (pk1 + 1) * (pk2 + 1);
    if (lhs != rhs) bad.push_back("polynomial identity fails at p=" + std::to_string(x));
  }
  // odd k: the series vanish but the matrices are still defined
  EisSpace space(1, k, DirichletCharacter::trivial(1), k % 2 != 0);
  HeckeAlgebra alg(space);
  for (long p : detail::primes_up_to(prime_max)) {
    const CycNum m = alg(HeckeOp::T(p))(0, 0);
    Integer pk1 = 1, pk2 = 1;
    for (long i = 0; i < k - 1; ++i) pk1 *= p;
    for (long i = 0; i < k - 2; ++i) pk2 *= p;
    if (m != CycNum(Rational((pk1 + 1) * (pk2 + 1)))) bad.push_back("T(" + std::to_string(p) + ") = " + m.to_string());
    if (m != eigenvalue_closed_form(space, space[0], HeckeOp::T(p))) bad.push_back("closed form differs at p=" + std::to_string(p));
  }
  return detail::record("hecke.level_one_identity", {{"k", std::to_string(k)}, {"prime_max", std::to_string(prime_max)}}, bad);
}

/// All checks on one Eisenstein space.
inline std::vector<CheckRecord> check_space(const EisSpace& space, long prime_max) {
  std::vector<CheckRecord> out;
  const std::vector<std::pair<std::string, std::string>> params{{"N", std::to_string(space.level())},
                                                                {"k", std::to_string(space.weight())},
                                                                {"chi", space.character().spec_string()}};
  const std::size_t n = space.dimension();

  {  // dimension and order
    std::vector<std::string> bad;
    std::size_t expect = 1;
    for (long q : space.primes()) expect *= space.character().local(q).is_real() ? 3 : 2;
    if (n != expect) bad.push_back("dimension " + std::to_string(n) + ", expected " + std::to_string(expect));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = space[i];
      if (r.level() != space.level()) bad.push_back(r.to_string() + " is not a partition of N");
      for (long q : prime_factors(r.n1))
        if (!space.character().local(q).is_real()) bad.push_back(r.to_string() + " has chi_q^2 != 1 on N1");
      if (i + 1 < n) {
        const auto& s = space[i + 1];
        const auto key = [](const Partition& p) { return std::make_tuple(p.total_rank(), -p.n2, -p.n1); };
        if (!(key(r) < key(s))) bad.push_back("order broken at " + r.to_string() + ", " + s.to_string());
      }
    }
    out.push_back(detail::record("eisspace.basis", params, bad));
  }

  HeckeAlgebra alg(space);
  const auto ops = default_ops(space, prime_max);
  std::vector<CycMatrix> mats;
  for (const auto& op : ops) mats.push_back(alg(op));

  {  // triangularity
    std::vector<std::string> bad;
    for (std::size_t t = 0; t < ops.size(); ++t)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (mats[t](i, j).is_zero()) continue;
          for (long q : space.primes())
            if (space[j].rank_at(q) < space[i].rank_at(q)) {
              bad.push_back(ops[t].name() + " entry " + space[i].to_string() + " -> " + space[j].to_string());
              break;
            }
        }
    out.push_back(detail::record("hecke.triangularity", params, bad));
  }

  {  // commutativity
    std::vector<std::string> bad;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b, ++pairs)
        if (!commutator_is_zero(mats[a], mats[b])) bad.push_back(ops[a].name() + " x " + ops[b].name());
    out.push_back(detail::record("hecke.commutativity", params, bad, std::to_string(pairs) + " pairs"));
  }

  std::optional<EigenSystem> sys;
  {  // eigenvectors
    std::vector<std::string> bad;
    try {
      sys = eigenbasis(alg, ops);
    } catch (const std::exception& e) {
      bad.push_back(e.what());
    }
    out.push_back(detail::record("hecke.eigen_exactness", params, bad, std::to_string(n * ops.size()) + " products"));
  }

  if (sys) {
    {  // independent decomposition of the commuting family
      std::vector<std::string> bad;
      try {
        const auto joint = joint_eigenspaces(mats);
        std::vector<std::vector<CycNum>> systems;
        bool distinct = true;
        for (const auto& v : sys->vectors) {
          std::vector<CycNum> ev;
          for (const auto& op : ops) ev.push_back(v.eigenvalues.at(op));
          if (std::find(systems.begin(), systems.end(), ev) != systems.end()) distinct = false;
          systems.push_back(std::move(ev));
        }
        std::size_t total = 0;
        for (const auto& j : joint) total += j.basis.size();
        if (total != n) bad.push_back("joint eigenspaces span " + std::to_string(total) + " of " + std::to_string(n));
        if (distinct && joint.size() != n) bad.push_back("expected " + std::to_string(n) + " one-dimensional joint eigenspaces");
        for (const auto& v : sys->vectors) {
          std::vector<CycNum> ev;
          for (const auto& op : ops) ev.push_back(v.eigenvalues.at(op));
          auto it = std::find_if(joint.begin(), joint.end(), [&ev](const JointEigenSpace& j) { return j.eigenvalues == ev; });
          if (it == joint.end()) {
            bad.push_back("no joint eigenspace for E~" + v.label.to_string());
            continue;
          }
          if (distinct && it->basis.size() != 1) bad.push_back("joint eigenspace of E~" + v.label.to_string() + " not one-dimensional");
          if (!coordinates(it->basis, v.coeffs)) bad.push_back("E~" + v.label.to_string() + " outside its joint eigenspace");
        }
        out.push_back(detail::record("hecke.eigen_oracle", params, bad, distinct ? "distinct systems" : "repeated systems"));
      } catch (const std::exception& e) {
        out.push_back(detail::record("hecke.eigen_oracle", params, {e.what()}));
      }
    }

    {  // closed forms
      std::vector<std::string> bad, documented;
      const long k = space.weight();
      for (const auto& c : compare_eigenvalues(*sys)) {
        if (c.match) continue;
        const long q = c.op.p;
        bool doc = false;
        if (c.op.kind == HeckeKind::T1 && c.partition.n1 % q == 0) {
          const CycNum x0 = space.chi_at(c.partition.n0, q * q), x2 = space.chi_at(c.partition.n2, q * q);
          const CycNum qq{Rational(q)};
          const CycNum mat = x0 * CycNum(detail::rpow(q, 2 * k - 2)) + x2 * qq;
          const CycNum tab = x0 * CycNum(detail::rpow(q, 2 * k - 3)) + x2 * qq;
          doc = c.matrix_value == mat && c.closed_form == tab;
        }
        const std::string what = c.partition.to_string() + " " + c.op.name() + ": matrix " + c.matrix_value.to_string() +
                                 ", table " + c.closed_form.to_string();
        (doc ? documented : bad).push_back(what);
      }
      CheckRecord r = detail::record("hecke.closed_form", params, bad);
      if (bad.empty() && !documented.empty()) {
        r.status = CheckStatus::documented_mismatch;
        r.details = "lambda1(q^2), q | N1: table exponent 2k-3, matrices 2k-2: " + detail::join(documented);
      }
      out.push_back(std::move(r));
    }
  }

  if (space.character().is_trivial()) {  // S-word identities
    std::vector<std::string> bad;
    const std::size_t corner = space.require_index({space.level(), 1, 1});
    const CycVector e = unit_vector(n, corner);
    try {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = space[i];
        if (vec_mat(e, s_word(alg, r.n1, r.n2)) != unit_vector(n, i)) bad.push_back("e_(N,1,1) S1(N1) S2(N2) != e" + r.to_string());
      }
    } catch (const std::exception& ex) {
      bad.push_back(ex.what());
    }
    out.push_back(detail::record("hecke.s_word_identity", params, bad, std::to_string(n) + " partitions"));
  }
  return out;
}

inline VerificationReport run_suite(const VerifyConfig& config) {
  VerificationReport rep{config, {}};
  if (config.N_max < 1 || config.prime_max < 2 || config.trials < 0 || config.k_set.empty())
    throw std::invalid_argument("run_suite: config bounds out of range");
  rep.checks.push_back(check_sublattice_counts(50));
  rep.checks.push_back(check_reduction(config.trials, config.seed));
  rep.checks.push_back(check_restrict_det(config.trials, config.seed));
  rep.checks.push_back(check_isotropy(std::max(config.prime_max, 2L)));
  std::vector<long> ks = config.k_set;
  std::sort(ks.begin(), ks.end());
  for (long k : ks) rep.checks.push_back(check_level_one(k, config.prime_max));
  for (long n = 1; n <= config.N_max; ++n) {
    if (!is_squarefree(n)) continue;
    for (long k : ks)
      for (const auto& chi : enumerate_characters(n, config.char_orders)) {
        if (!chi.valid_for_weight(k)) continue;
        EisSpace space(n, k, chi);
        auto recs = check_space(space, config.prime_max);
        rep.checks.insert(rep.checks.end(), recs.begin(), recs.end());
      }
  }
  return rep;
}

}  // namespace siegel
