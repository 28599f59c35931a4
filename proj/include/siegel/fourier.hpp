#pragma once

// Formal Fourier expansions as class functions on reduced Gram forms, the
// sublattice-sum operators U(Q, P), a level-1 coefficient provider and the
// spectral projection that splits a level-1 series into the E_rho of level N.
//
// Coverage of an expansion is described by two bounds: every positive-definite
// class with det <= det_bound and every rank-1 class m x^2 with m <= rank1_bound
// is present, together with the zero form.

#include "hecke.hpp"
#include "lattices.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

/// Raised when an operator needs a coefficient outside the known domain.
class CoverageError : public std::domain_error {
 public:
  CoverageError(const std::string& what, std::int64_t det, std::int64_t rank1_min = 0)
      : std::domain_error(what), missing_det_(det), missing_rank1_(rank1_min) {}
  /// Determinant of the first missing class (0 for a rank-1 class).
  std::int64_t missing_det() const { return missing_det_; }
  /// For a rank-1 class, its minimum m; otherwise 0.
  std::int64_t missing_rank1() const { return missing_rank1_; }

 private:
  std::int64_t missing_det_;
  std::int64_t missing_rank1_;
};

/// Zero form, rank-1 classes m <= rank1_bound, positive-definite classes det <= det_bound.
inline std::vector<CanonicalForm> domain_forms(Group group, std::int64_t det_bound, std::int64_t rank1_bound) {
  std::vector<CanonicalForm> out{{{0, 0, 0}, 1}};
  for (std::int64_t m = 1; m <= rank1_bound; ++m) out.push_back({{m, 0, 0}, 1});
  auto pd = reduced_forms(det_bound, group);
  out.insert(out.end(), pd.begin(), pd.end());
  return out;
}

class FourierExpansion {
 public:
  FourierExpansion() = default;
  FourierExpansion(Group group, std::int64_t det_bound, std::int64_t rank1_bound)
      : group_(group), det_bound_(det_bound), rank1_bound_(rank1_bound) {
    if (det_bound < 0 || rank1_bound < 0) throw std::invalid_argument("expansion bounds must be non-negative");
  }

  /// Expansion whose coefficient at each class of the domain is fn(class).
  static FourierExpansion tabulate(Group group, std::int64_t det_bound, std::int64_t rank1_bound,
                                   const std::function<CycNum(const CanonicalForm&)>& fn) {
    FourierExpansion f(group, det_bound, rank1_bound);
    for (const auto& t : domain_forms(group, det_bound, rank1_bound)) f.coeffs_.emplace(t, fn(t));
    return f;
  }

  Group group() const { return group_; }
  std::int64_t det_bound() const { return det_bound_; }
  std::int64_t rank1_bound() const { return rank1_bound_; }
  const std::map<CanonicalForm, CycNum>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  bool covers(const CanonicalForm& t) const {
    if (t.form.is_zero()) return true;
    const std::int64_t d = t.det();
    if (d == 0) return t.form.a <= rank1_bound_;
    return d <= det_bound_;
  }

  /// Coefficient at an already canonical key.
  const CycNum& at_canonical(const CanonicalForm& t) const {
    if (!covers(t)) {
      const bool r1 = t.det() == 0;
      throw CoverageError("coefficient of " + t.oriented().to_string() + " (det " + std::to_string(t.det()) +
                              ") lies outside the known domain",
                          t.det(), r1 ? t.form.a : 0);
    }
    auto it = coeffs_.find(t);
    if (it == coeffs_.end()) throw std::logic_error("expansion is missing " + t.oriented().to_string() + " inside its bounds");
    return it->second;
  }

  /// Coefficient at any positive semi-definite Gram form (reduced first).
  const CycNum& operator()(const GramForm& t) const { return at_canonical(reduce(t, group_)); }

  void set(const CanonicalForm& t, CycNum v) { coeffs_[t] = std::move(v); }

  /// Checks that every class of the domain has a coefficient.
  void validate() const {
    for (const auto& t : domain_forms(group_, det_bound_, rank1_bound_))
      if (!coeffs_.count(t)) throw std::logic_error("expansion is missing " + t.oriented().to_string() + " inside its bounds");
  }

  /// The same function on a smaller domain.
  FourierExpansion truncated(std::int64_t det_bound, std::int64_t rank1_bound) const {
    det_bound = std::min(det_bound, det_bound_);
    rank1_bound = std::min(rank1_bound, rank1_bound_);
    return tabulate(group_, det_bound, rank1_bound, [this](const CanonicalForm& t) { return at_canonical(t); });
  }

  /// Coefficients on the given forms, in order.
  CycVector sample(const std::vector<CanonicalForm>& forms) const {
    CycVector v;
    v.reserve(forms.size());
    for (const auto& t : forms) v.push_back(at_canonical(t));
    return v;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  /// Equality of the two functions on the common domain.
  bool agrees_with(const FourierExpansion& o) const {
    if (group_ != o.group_) return false;
    const std::int64_t d = std::min(det_bound_, o.det_bound_), r = std::min(rank1_bound_, o.rank1_bound_);
    for (const auto& t : domain_forms(group_, d, r))
      if (at_canonical(t) != o.at_canonical(t)) return false;
    return true;
  }

 private:
  Group group_ = Group::GL2;
  std::int64_t det_bound_ = 0;
  std::int64_t rank1_bound_ = 0;
  std::map<CanonicalForm, CycNum> coeffs_;
};

/// sum_i c_i f_i on the common domain of the f_i.
inline FourierExpansion linear_combination(const std::vector<CycNum>& c, const std::vector<const FourierExpansion*>& f) {
  if (c.size() != f.size() || f.empty()) throw std::invalid_argument("linear_combination: size mismatch");
  std::int64_t d = f[0]->det_bound(), r = f[0]->rank1_bound();
  for (const auto* x : f) {
    if (x->group() != f[0]->group()) throw std::invalid_argument("linear_combination: mixed group modes");
    d = std::min(d, x->det_bound());
    r = std::min(r, x->rank1_bound());
  }
  return FourierExpansion::tabulate(f[0]->group(), d, r, [&](const CanonicalForm& t) {
    CycNum s(0);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!c[i].is_zero()) s += c[i] * f[i]->at_canonical(t);
    return s;
  });
}

inline FourierExpansion operator+(const FourierExpansion& a, const FourierExpansion& b) {
  return linear_combination({CycNum(1), CycNum(1)}, {&a, &b});
}
inline FourierExpansion operator*(const CycNum& s, const FourierExpansion& a) { return linear_combination({s}, {&a}); }

struct UOperator {
  std::int64_t Q = 1;
  std::int64_t P = 1;

  UOperator() = default;
  UOperator(std::int64_t q, std::int64_t p) : Q(q), P(p) {
    if (q < 1 || p < 1 || !is_squarefree(q * p))
      throw std::invalid_argument("U(" + std::to_string(q) + "," + std::to_string(p) + "): Q*P must be square-free");
  }
  std::string name() const { return "U(" + std::to_string(Q) + "," + std::to_string(P) + ")"; }
  friend bool operator==(const UOperator& a, const UOperator& b) { return a.Q == b.Q && a.P == b.P; }
  friend bool operator<(const UOperator& a, const UOperator& b) { return std::tie(a.Q, a.P) < std::tie(b.Q, b.P); }
};

/// (f|U)(T) = sum over index-Q sublattices H of f(P * H T H^t), evaluated on
/// the requested output domain. Throws CoverageError naming the first missing
/// class when f is too short.
inline FourierExpansion apply_U(const FourierExpansion& f, const UOperator& u, std::int64_t det_bound,
                                std::int64_t rank1_bound) {
  const auto subs = sublattices(u.Q);
  return FourierExpansion::tabulate(f.group(), det_bound, rank1_bound, [&](const CanonicalForm& t) {
    const GramForm g = t.oriented();
    CycNum s(0);
    for (const auto& h : subs) s += f(restrict_and_scale(g, h, u.P));
    return s;
  });
}

/// apply_U on the largest domain f determines: det shrinks by Q^2 P^2, rank-1 minima by Q^2 P.
inline FourierExpansion apply_U(const FourierExpansion& f, const UOperator& u) {
  const std::int64_t qq = u.Q * u.Q;
  return apply_U(f, u, f.det_bound() / (qq * u.P * u.P), f.rank1_bound() / (qq * u.P));
}

/// Composition of U operators applied left to right.
inline FourierExpansion apply_word(FourierExpansion f, const std::vector<UOperator>& word) {
  for (const auto& u : word) f = apply_U(f, u);
  return f;
}

struct CoefficientProvider {
  std::string source;
  long weight = 0;
  long level = 1;
  std::vector<std::string> provenance;  // header comment lines
  FourierExpansion expansion;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses the line format
///   !weight k level 1 group GL2|SL2
///   # comment
///   a b c num/den
inline CoefficientProvider provider_parse(std::istream& in, const std::string& source = "<stream>") {
  CoefficientProvider p;
  p.source = source;
  std::optional<Group> group;
  std::map<CanonicalForm, CycNum> entries;
  std::string line;
  long lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (entries.empty()) p.provenance.push_back(detail::trim(t.substr(1)));
      continue;
    }
    if (t[0] == '!') {
      if (group) fail("duplicate header");
      std::istringstream hs(t.substr(1));
      std::string kw1, kw2, kw3, g;
      long k = 0, n = 0;
      if (!(hs >> kw1 >> k >> kw2 >> n >> kw3 >> g) || kw1 != "weight" || kw2 != "level" || kw3 != "group")
        fail("malformed header, expected '!weight k level 1 group GL2|SL2'");
      std::string extra;
      if (hs >> extra) fail("trailing text in header");
      if (n != 1) fail("only level-1 providers are supported");
      if (k < 1) fail("weight must be positive");
      if (g == "GL2") group = Group::GL2;
      else if (g == "SL2") group = Group::SL2;
      else fail("group must be GL2 or SL2");
      p.weight = k;
      p.level = n;
      continue;
    }
    if (!group) fail("entry before header");
    std::istringstream ls(t);
    std::int64_t a, b, c;
    std::string val, extra;
    if (!(ls >> a >> b >> c >> val) || (ls >> extra)) fail("malformed entry '" + t + "'");
    Rational v;
    try {
      v = parse_rational(val);
    } catch (const std::exception&) {
      fail("malformed coefficient '" + val + "'");
    }
    GramForm g{a, b, c};
    if (!g.is_psd()) fail("form " + g.to_string() + " is not positive semi-definite");
    const CanonicalForm key = reduce(g, *group);
    auto [it, fresh] = entries.emplace(key, CycNum(v));
    if (!fresh && it->second != CycNum(v))
      fail("inconsistent duplicate entries for the class of " + key.oriented().to_string());
  }
  if (!group) throw std::invalid_argument(source + ": missing header");
  if (!entries.count(CanonicalForm{{0, 0, 0}, 1})) throw std::invalid_argument(source + ": zero form coefficient missing");

  std::int64_t max_det = 0, rank1 = 0;
  for (const auto& [k, v] : entries) max_det = std::max(max_det, k.det());
  while (entries.count(CanonicalForm{{rank1 + 1, 0, 0}, 1})) ++rank1;
  std::int64_t det_bound = max_det;
  for (const auto& t : reduced_forms(max_det, *group))
    if (!entries.count(t)) {
      det_bound = t.det() - 1;
      break;
    }
  p.expansion = FourierExpansion(*group, det_bound, rank1);
  for (auto& [k, v] : entries) p.expansion.set(k, std::move(v));
  return p;
}

inline CoefficientProvider provider_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open provider file " + path);
  return provider_parse(in, path);
}

/// Writes the domain of f in provider format; entries must be rational.
inline void write_provider(std::ostream& out, const FourierExpansion& f, long weight) {
  out << "!weight " << weight << " level 1 group " << (f.group() == Group::GL2 ? "GL2" : "SL2") << "\n";
  auto forms = domain_forms(f.group(), f.det_bound(), f.rank1_bound());
  std::sort(forms.begin(), forms.end(), sample_order);
  for (const auto& t : forms) {
    const CycNum& v = f.at_canonical(t);
    if (!v.is_rational()) throw std::domain_error("write_provider: coefficient is not rational");
    const GramForm g = t.oriented();
    out << g.a << " " << g.b << " " << g.c << " " << rational_to_string(v.rational()) << "\n";
  }
}

struct KrylovComponent {
  std::vector<CycNum> eigenvalues;  // one per operator
  FourierExpansion expansion;
};

struct KrylovResult {
  std::vector<UOperator> ops;
  std::size_t rank = 0;                   // dimension of the Krylov space
  std::vector<CycMatrix> matrices;        // operator action on the Krylov basis (row convention)
  std::vector<CycPoly> minimal_polynomials;
  std::vector<KrylovComponent> components;
};

/// Splits f into joint eigencomponents of the given commuting U operators.
/// The Krylov space is spanned by words in the operators applied to f. Every
/// Krylov vector must be known on all classes with det and rank-1 minimum up
/// to sample_bound; linear dependence is decided on all shared coefficients.
inline KrylovResult krylov_spectral(const FourierExpansion& f, const std::vector<UOperator>& ops, std::int64_t sample_bound) {
  if (sample_bound < 1) throw std::invalid_argument("krylov_spectral: sample_bound must be positive");
  if (ops.empty()) throw std::invalid_argument("krylov_spectral: no operators");
  auto covered = [&](const FourierExpansion& g) { return g.det_bound() >= sample_bound && g.rank1_bound() >= sample_bound; };
  if (!covered(f))
    throw CoverageError("krylov_spectral: input does not cover the sample domain", f.det_bound() + 1);

  KrylovResult res;
  res.ops = ops;
  std::vector<FourierExpansion> basis{f};
  // images[i][j]: coordinates of basis[i] | ops[j]
  std::vector<std::vector<CycVector>> images;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    images.emplace_back();
    for (const auto& u : ops) {
      FourierExpansion w = apply_U(basis[i], u);
      if (!covered(w))
        throw CoverageError("Krylov rank not yet stabilized: " + u.name() + " image of Krylov vector " + std::to_string(i) +
                                " is known only up to det " + std::to_string(w.det_bound()) + "; raise det coverage",
                            sample_bound * u.Q * u.Q * u.P * u.P);
      // dependence is decided on every coefficient the vectors share, not just the sample
      std::int64_t d = w.det_bound(), r1 = w.rank1_bound();
      for (const auto& b : basis) {
        d = std::min(d, b.det_bound());
        r1 = std::min(r1, b.rank1_bound());
      }
      const auto forms = domain_forms(f.group(), d, r1);
      std::vector<CycVector> samples;
      for (const auto& b : basis) samples.push_back(b.sample(forms));
      auto c = coordinates(samples, w.sample(forms));
      if (c && rank(CycMatrix::from_rows(samples)) < basis.size())
        throw CoverageError("Krylov rank not yet stabilized: Krylov vectors are not separated on the classes with det <= " +
                                std::to_string(d) + "; raise det coverage",
                            d + 1);
      if (c) {
        c->resize(basis.size() + 1, CycNum(0));
        images[i].push_back(std::move(*c));
      } else {
        basis.push_back(std::move(w));
        images[i].push_back(unit_vector(basis.size(), basis.size() - 1));
      }
    }
  }
  const std::size_t r = basis.size();
  res.rank = r;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    CycMatrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < r && c < images[i][j].size(); ++c) m(i, c) = images[i][j][c];
    res.matrices.push_back(std::move(m));
  }
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b)
      if (!commutator_is_zero(res.matrices[a], res.matrices[b]))
        throw std::domain_error("krylov_spectral: sampled matrices of " + ops[a].name() + " and " + ops[b].name() +
                                " do not commute");
  for (const auto& m : res.matrices) {
    auto dec = eigen(m);
    if (!dec.splits())
      throw std::domain_error("krylov_spectral: minimal polynomial factor " + dec.unsplit.to_string() + " does not split");
    for (const auto& sp : dec.spaces)
      if (sp.multiplicity > 1)
        throw std::domain_error("krylov_spectral: minimal polynomial has a repeated root " + sp.eigenvalue.to_string());
    res.minimal_polynomials.push_back(dec.minimal_polynomial);
  }
  auto joint = joint_eigenspaces(res.matrices);
  std::vector<CycVector> all;
  for (const auto& j : joint) all.insert(all.end(), j.basis.begin(), j.basis.end());
  if (all.size() != r) throw std::domain_error("krylov_spectral: operators are not simultaneously diagonalizable");
  auto coords = coordinates(all, unit_vector(r, 0));
  if (!coords) throw std::logic_error("krylov_spectral: eigenvectors do not span the Krylov space");

  std::vector<const FourierExpansion*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  std::size_t pos = 0;
  for (const auto& j : joint) {
    CycVector u(r, CycNum(0));
    for (const auto& v : j.basis) {
      const CycNum& c = (*coords)[pos++];
      if (c.is_zero()) continue;
      for (std::size_t t = 0; t < r; ++t) u[t] += c * v[t];
    }
    if (is_zero_vector(u)) continue;
    res.components.push_back({j.eigenvalues, linear_combination(u, ptrs)});
  }
  return res;
}

/// Ops used for level N: U(1, q) then U(q, 1) for each prime q | N, ascending.
inline std::vector<UOperator> level_ops(long level) {
  std::vector<UOperator> ops;
  for (long q : prime_factors(level)) {
    ops.emplace_back(1, q);
    ops.emplace_back(q, 1);
  }
  return ops;
}

struct LabeledComponent {
  Partition label;
  std::vector<CycNum> eigenvalues;  // per level_ops entry
  FourierExpansion component;       // multiple of E~_label
};

struct Projection {
  long level = 1;
  long weight = 0;
  std::vector<UOperator> ops;
  std::vector<LabeledComponent> components;          // in basis order
  std::map<Partition, FourierExpansion> eisenstein;  // E_rho
  bool sums_to_input = false;
};

namespace detail {

inline void require_pipeline(const CoefficientProvider& p, long level, long weight) {
  if (!is_squarefree(level)) throw std::invalid_argument("level " + std::to_string(level) + " is not square-free");
  if (p.level != 1) throw std::invalid_argument("provider is not of level 1");
  if (p.weight != weight)
    throw std::invalid_argument("provider weight " + std::to_string(p.weight) + " differs from " + std::to_string(weight));
}

inline bool rational_less(const CycNum& a, const CycNum& b) { return a.rational() < b.rational(); }

}  // namespace detail

/// Joint components of the level_ops operators, refined one prime at a time:
/// each component found so far is split by U(1, q), U(q, 1). Eigenvalues are
/// listed in level_ops order.
inline std::vector<KrylovComponent> split_by_level(const FourierExpansion& f, long level, std::int64_t sample_bound) {
  std::vector<KrylovComponent> parts{{{}, f}};
  for (long q : prime_factors(level)) {
    std::vector<KrylovComponent> next;
    for (const auto& part : parts) {
      auto kr = krylov_spectral(part.expansion, {UOperator(1, q), UOperator(q, 1)}, sample_bound);
      for (auto& c : kr.components) {
        std::vector<CycNum> ev = part.eigenvalues;
        ev.insert(ev.end(), c.eigenvalues.begin(), c.eigenvalues.end());
        next.push_back({std::move(ev), std::move(c.expansion)});
      }
    }
    parts = std::move(next);
  }
  return parts;
}

/// Labels the joint components of the level-N operators. At each q | N the
/// three U(1, q) eigenvalues, sorted ascending, give r_q = 0, 1, 2.
inline std::vector<LabeledComponent> label_components(const std::vector<KrylovComponent>& comps, long level) {
  const auto primes = prime_factors(level);
  std::size_t expected = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) expected *= 3;
  if (comps.size() != expected)
    throw std::domain_error("ambiguous labeling: found " + std::to_string(comps.size()) + " joint components, expected " +
                            std::to_string(expected));
  std::vector<LabeledComponent> out;
  for (const auto& c : comps) out.push_back({Partition{1, 1, 1}, c.eigenvalues, c.expansion});
  for (std::size_t qi = 0; qi < primes.size(); ++qi) {
    const long q = primes[qi];
    const std::size_t idx = 2 * qi;  // U(1, q)
    std::vector<CycNum> values;
    for (const auto& c : out) {
      const CycNum& v = c.eigenvalues[idx];
      if (!v.is_rational()) throw std::domain_error("ambiguous labeling: irrational U eigenvalue " + v.to_string());
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    if (values.size() != 3)
      throw std::domain_error("ambiguous labeling: U(1," + std::to_string(q) + ") has " + std::to_string(values.size()) +
                              " distinct eigenvalues, expected 3");
    std::sort(values.begin(), values.end(), detail::rational_less);
    for (auto& c : out) {
      const auto r = std::find(values.begin(), values.end(), c.eigenvalues[idx]) - values.begin();
      (r == 0 ? c.label.n0 : r == 1 ? c.label.n1 : c.label.n2) *= q;
    }
  }
  std::set<Partition> seen;
  for (const auto& c : out)
    if (!seen.insert(c.label).second) throw std::domain_error("ambiguous labeling: label " + c.label.to_string() + " repeats");
  const CanonicalForm zero{{0, 0, 0}, 1};
  for (const auto& c : out) {
    const bool corner = c.label == Partition{level, 1, 1};
    if (corner == c.component.at_canonical(zero).is_zero())
      throw std::domain_error("ambiguous labeling: zero-form coefficient pattern contradicts label " + c.label.to_string());
  }
  return out;
}

/// E(tau) = sum_rho E_rho for the trivial character: splits the level-1 series
/// into the E_rho of level N.
inline Projection project_eisenstein(const CoefficientProvider& provider, long level, long weight, std::int64_t sample_bound) {
  detail::require_pipeline(provider, level, weight);
  Projection pr;
  pr.level = level;
  pr.weight = weight;
  if (level == 1) {
    pr.components.push_back({Partition{1, 1, 1}, {}, provider.expansion});
    pr.eisenstein.emplace(Partition{1, 1, 1}, provider.expansion);
    pr.sums_to_input = true;
    return pr;
  }
  pr.ops = level_ops(level);
  auto labeled = label_components(split_by_level(provider.expansion, level, sample_bound), level);

  EisSpace space(level, weight, DirichletCharacter::trivial(level));
  const std::size_t n = space.dimension();
  // rows of C: E~_sigma in the E basis; E_rho = sum_sigma Cinv[rho][sigma] E~_sigma
  std::vector<CycVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(eigenform_coefficients(space, space[i]));
  const CycMatrix cinv = inverse(CycMatrix::from_rows(rows));
  // component_sigma = alpha_sigma E~_sigma with alpha = (1, ..., 1) Cinv
  std::vector<const FourierExpansion*> tilde(n, nullptr);
  std::vector<FourierExpansion> scaled(n);
  for (const auto& c : labeled) {
    const std::size_t s = space.require_index(c.label);
    CycNum alpha(0);
    for (std::size_t r = 0; r < n; ++r) alpha += cinv(r, s);
    if (alpha.is_zero()) throw std::domain_error("projection: E~" + c.label.to_string() + " does not occur in E");
    scaled[s] = alpha.inverse() * c.component;
    tilde[s] = &scaled[s];
  }
  for (std::size_t r = 0; r < n; ++r) pr.eisenstein.emplace(space[r], linear_combination(cinv.row(r), tilde));
  std::sort(labeled.begin(), labeled.end(), [&space](const LabeledComponent& a, const LabeledComponent& b) {
    return space.require_index(a.label) < space.require_index(b.label);
  });
  pr.components = std::move(labeled);

  std::vector<const FourierExpansion*> parts;
  for (const auto& [rho, e] : pr.eisenstein) parts.push_back(&e);
  pr.sums_to_input = linear_combination(std::vector<CycNum>(parts.size(), CycNum(1)), parts).agrees_with(provider.expansion);
  return pr;
}

struct Fit {
  std::string kind;  // "scalar", "affine" or "none"
  std::optional<Rational> scale;
  std::optional<Rational> shift;
};

/// measured = scale * reference (+ shift), solved over the rationals.
inline Fit fit_relation(const std::vector<Rational>& reference, const std::vector<Rational>& measured) {
  Fit f{"none", std::nullopt, std::nullopt};
  if (reference.empty() || reference.size() != measured.size()) return f;
  std::optional<Rational> s;
  bool scalar = true;
  for (std::size_t i = 0; i < reference.size() && scalar; ++i) {
    if (reference[i] == 0) {
      scalar = measured[i] == 0;
      continue;
    }
    Rational r = measured[i] / reference[i];
    if (!s) s = r;
    else if (*s != r) scalar = false;
  }
  if (scalar && s) return {"scalar", s, Rational(0)};
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (std::size_t j = i + 1; j < reference.size(); ++j) {
      if (reference[i] == reference[j]) continue;
      Rational a = (measured[i] - measured[j]) / (reference[i] - reference[j]);
      Rational b = measured[i] - a * reference[i];
      for (std::size_t t = 0; t < reference.size(); ++t)
        if (a * reference[t] + b != measured[t]) return f;
      return {"affine", a, b};
    }
  return f;
}

struct CalibrationEntry {
  long q = 0;
  UOperator op;
  HeckeOp reference_op = HeckeOp::T(2);
  std::vector<Partition> labels;
  std::vector<CycNum> measured;
  std::vector<CycNum> closed_form;  // tabulated lambda values
  std::vector<CycNum> matrix;       // diagonal of the Hecke matrix
  std::size_t distinct_measured = 0;
  Fit fit_closed_form;
  Fit fit_matrix;
};

struct CalibrationReport {
  long level = 1;
  long weight = 0;
  std::vector<CalibrationEntry> entries;
  std::vector<CycNum> level_one;  // N = 1: measured U(q,1) values on E, q = 2
};

/// Measured U eigenvalues on the labeled components next to the Hecke
/// eigenvalues for U(1, q) ~ T(q) and U(q, 1) ~ T1(q^2).
inline CalibrationReport calibrate_normalization(const CoefficientProvider& provider, long level, long weight,
                                                 std::int64_t sample_bound) {
  detail::require_pipeline(provider, level, weight);
  CalibrationReport rep;
  rep.level = level;
  rep.weight = weight;
  if (level == 1) {
    auto kr = krylov_spectral(provider.expansion, {UOperator(2, 1)}, sample_bound);
    for (const auto& c : kr.components) rep.level_one.push_back(c.eigenvalues[0]);
    return rep;
  }
  auto pr = project_eisenstein(provider, level, weight, sample_bound);
  EisSpace space(level, weight, DirichletCharacter::trivial(level));
  HeckeAlgebra alg(space);
  const auto primes = prime_factors(level);
  for (std::size_t qi = 0; qi < primes.size(); ++qi) {
    const long q = primes[qi];
    for (int which = 0; which < 2; ++which) {
      CalibrationEntry e;
      e.q = q;
      e.op = pr.ops[2 * qi + which];
      e.reference_op = which == 0 ? HeckeOp::T(q) : HeckeOp::T1(q);
      const CycMatrix& m = alg(e.reference_op);
      std::vector<Rational> ref_cf, ref_m, meas;
      std::vector<CycNum> distinct;
      for (const auto& c : pr.components) {
        e.labels.push_back(c.label);
        e.measured.push_back(c.eigenvalues[2 * qi + which]);
        e.closed_form.push_back(eigenvalue_closed_form(space, c.label, e.reference_op));
        const std::size_t i = space.require_index(c.label);
        e.matrix.push_back(m(i, i));
        if (std::find(distinct.begin(), distinct.end(), e.measured.back()) == distinct.end()) distinct.push_back(e.measured.back());
        meas.push_back(e.measured.back().rational());
        ref_cf.push_back(e.closed_form.back().rational());
        ref_m.push_back(e.matrix.back().rational());
      }
      e.distinct_measured = distinct.size();
      e.fit_closed_form = fit_relation(ref_cf, meas);
      e.fit_matrix = fit_relation(ref_m, meas);
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

}  // namespace siegel
