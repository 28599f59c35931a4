#pragma once

// Dense matrices over cyclotomic fields: products, row reduction, kernels,
// minimal polynomials and an exact eigen-decomposition that only splits
// the minimal polynomial over the working field.
//
// Vectors multiply matrices from the left throughout (v * A).

#include "cyclotomic.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using CycVector = std::vector<CycNum>;

class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, CycNum(0)) {}
  CycMatrix(std::size_t rows, std::size_t cols, std::vector<CycNum> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw std::invalid_argument("CycMatrix: entry count mismatch");
  }

  static CycMatrix identity(std::size_t n) {
    CycMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = CycNum(1);
    return m;
  }
  static CycMatrix diagonal(const std::vector<CycNum>& d) {
    CycMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static CycMatrix from_rows(const std::vector<CycVector>& rows) {
    if (rows.empty()) return {};
    CycMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  CycNum& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const CycNum& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  CycVector row(std::size_t i) const { return CycVector(e_.begin() + static_cast<long>(i * cols_), e_.begin() + static_cast<long>((i + 1) * cols_)); }
  std::vector<CycVector> row_list() const {
    std::vector<CycVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  CycMatrix transposed() const {
    CycMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const CycNum& x) { return x.is_zero(); });
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    CycMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const CycNum& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const CycNum& y = b(k, j);
          if (!y.is_zero()) out(i, j) += x * y;
        }
      }
    return out;
  }
  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    CycMatrix out = a;
    for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] += b.e_[i];
    return out;
  }
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return a + b * CycNum(-1); }
  friend CycMatrix operator*(const CycMatrix& a, const CycNum& s) {
    CycMatrix out = a;
    for (auto& x : out.e_)
      if (!x.is_zero()) x = x * s;
    return out;
  }
  friend CycMatrix operator*(const CycNum& s, const CycMatrix& a) { return a * s; }
  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycNum> e_;
};

inline CycVector vec_mat(const CycVector& v, const CycMatrix& a) {
  if (v.size() != a.rows()) throw std::invalid_argument("vector-matrix product: dimension mismatch");
  CycVector out(a.cols(), CycNum(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out[j] += v[i] * a(i, j);
  }
  return out;
}

inline CycVector scale(const CycVector& v, const CycNum& s) {
  CycVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x * s);
  return out;
}

inline bool is_zero_vector(const CycVector& v) {
  return std::all_of(v.begin(), v.end(), [](const CycNum& x) { return x.is_zero(); });
}

inline bool commutator_is_zero(const CycMatrix& a, const CycMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b == b * a;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(CycMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    CycNum inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a(r, j).is_zero()) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      CycNum f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(CycMatrix a) { return rref(a).size(); }

/// Basis (as rows) of the right null space {x : A x = 0}.
inline std::vector<CycVector> kernel(const CycMatrix& a) {
  CycMatrix r = a;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<CycVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    CycVector v(a.cols(), CycNum(0));
    v[free] = CycNum(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the left null space {v : v A = 0}.
inline std::vector<CycVector> left_kernel(const CycMatrix& a) { return kernel(a.transposed()); }

/// Echelon basis of the row space.
inline std::vector<CycVector> row_space(const std::vector<CycVector>& rows) {
  if (rows.empty()) return {};
  CycMatrix m = CycMatrix::from_rows(rows);
  auto pivots = rref(m);
  std::vector<CycVector> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

/// Coordinates c with sum_i c_i basis[i] = v, or nullopt when v is outside the span.
inline std::optional<CycVector> coordinates(const std::vector<CycVector>& basis, const CycVector& v) {
  if (basis.empty()) {
    if (is_zero_vector(v)) return CycVector{};
    return std::nullopt;
  }
  const std::size_t n = basis.size(), len = v.size();
  CycMatrix aug(len, n + 1);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = basis[j][i];
    aug(i, n) = v[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  CycVector c(n, CycNum(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = aug(i, n);
  return c;
}

/// Intersection of two row spaces.
inline std::vector<CycVector> intersect(const std::vector<CycVector>& u, const std::vector<CycVector>& w) {
  if (u.empty() || w.empty()) return {};
  // x U = y W  <=>  [x y] [U; -W] = 0
  std::vector<CycVector> stacked = u;
  for (const auto& r : w) stacked.push_back(scale(r, CycNum(-1)));
  auto rel = left_kernel(CycMatrix::from_rows(stacked));
  std::vector<CycVector> out;
  for (const auto& k : rel) {
    CycVector v(u[0].size(), CycNum(0));
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!k[i].is_zero())
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += k[i] * u[i][j];
    out.push_back(std::move(v));
  }
  return row_space(out);
}

inline CycMatrix inverse(const CycMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = a.rows();
  CycMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = CycNum(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  CycMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Monic minimal polynomial, from the first linear dependency among I, A, A^2, ...
inline CycPoly min_poly(const CycMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("min_poly: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return CycPoly({CycNum(1)});
  auto flatten = [n](const CycMatrix& m) {
    CycVector v;
    v.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(m(i, j));
    return v;
  };
  std::vector<CycVector> powers{flatten(CycMatrix::identity(n))};
  CycMatrix cur = CycMatrix::identity(n);
  for (std::size_t d = 1; d <= n; ++d) {
    cur = cur * a;
    CycVector v = flatten(cur);
    if (auto c = coordinates(powers, v)) {
      std::vector<CycNum> coeffs;
      for (const auto& x : *c) coeffs.push_back(-x);
      coeffs.push_back(CycNum(1));
      return CycPoly(std::move(coeffs));
    }
    powers.push_back(std::move(v));
  }
  throw std::logic_error("min_poly: no dependency found up to degree n");
}

struct EigenSpace {
  CycNum eigenvalue;
  std::size_t multiplicity = 1;  // as a root of the minimal polynomial
  std::vector<CycVector> basis;  // left eigenvectors: v A = lambda v
};

struct EigenDecomposition {
  std::vector<EigenSpace> spaces;
  CycPoly minimal_polynomial;
  CycPoly unsplit;  // product of factors with no root in the candidate set; 1 when fully split
  bool splits() const { return unsplit.degree() == 0; }
};

/// Exact eigen-decomposition. Roots of the minimal polynomial are found by
/// trial against the distinct matrix entries plus any extra candidates, then
/// (for rational factors) against numerically located rational roots; the
/// remaining factor is reported, never guessed.
inline EigenDecomposition eigen(const CycMatrix& a, const std::vector<CycNum>& extra_candidates = {}) {
  if (!a.is_square()) throw std::invalid_argument("eigen: matrix not square");
  EigenDecomposition out;
  out.minimal_polynomial = min_poly(a);
  std::vector<CycNum> candidates{CycNum(0)};
  auto add = [&candidates](const CycNum& x) {
    if (std::find(candidates.begin(), candidates.end(), x) == candidates.end()) candidates.push_back(x);
  };
  for (std::size_t i = 0; i < a.rows(); ++i) add(a(i, i));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) add(a(i, j));
  for (const auto& x : extra_candidates) add(x);

  CycPoly rest = out.minimal_polynomial;
  for (const auto& c : candidates) {
    std::size_t mult = 0;
    while (rest.degree() >= 1 && rest(c).is_zero()) {
      rest = rest.deflate(c);
      ++mult;
    }
    if (mult == 0) continue;
    CycMatrix shifted = a - CycMatrix::identity(a.rows()) * c;
    out.spaces.push_back({c, mult, left_kernel(shifted)});
  }
  if (rest.degree() >= 1) {
    for (const auto& r : approximate_rational_roots(rest)) {
      const CycNum c(r);
      if (std::find(candidates.begin(), candidates.end(), c) != candidates.end()) continue;
      std::size_t mult = 0;
      while (rest.degree() >= 1 && rest(c).is_zero()) {
        rest = rest.deflate(c);
        ++mult;
      }
      if (mult == 0) continue;
      CycMatrix shifted = a - CycMatrix::identity(a.rows()) * c;
      out.spaces.push_back({c, mult, left_kernel(shifted)});
    }
  }
  out.unsplit = rest.monic();
  return out;
}

struct JointEigenSpace {
  std::vector<CycNum> eigenvalues;  // one per matrix of the family
  std::vector<CycVector> basis;
};

/// Simultaneous eigenspaces of a commuting family, by successive refinement
/// with each member's eigenspaces. Throws if some member does not split.
inline std::vector<JointEigenSpace> joint_eigenspaces(const std::vector<CycMatrix>& family) {
  if (family.empty()) return {};
  const std::size_t n = family[0].rows();
  std::vector<JointEigenSpace> pieces{{{}, {}}};
  for (std::size_t i = 0; i < n; ++i) {
    CycVector e(n, CycNum(0));
    e[i] = CycNum(1);
    pieces[0].basis.push_back(std::move(e));
  }
  for (const auto& m : family) {
    auto dec = eigen(m);
    if (!dec.splits())
      throw std::domain_error("joint_eigenspaces: minimal polynomial factor " + dec.unsplit.to_string() +
                              " has no root in the working field");
    std::vector<JointEigenSpace> next;
    for (const auto& piece : pieces)
      for (const auto& sp : dec.spaces) {
        auto cap = intersect(piece.basis, sp.basis);
        if (cap.empty()) continue;
        JointEigenSpace j{piece.eigenvalues, std::move(cap)};
        j.eigenvalues.push_back(sp.eigenvalue);
        next.push_back(std::move(j));
      }
    pieces = std::move(next);
  }
  return pieces;
}

}  // namespace siegel
