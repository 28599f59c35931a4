#include "siegel/eisspace.hpp"
#include "siegel/hecke.hpp"

#include <gtest/gtest.h>

using namespace siegel;

namespace {

CycNum r(long n, long d = 1) { return CycNum(make_rational(n, d)); }

Rational pw(long b, long e) {
  Rational x(1);
  for (long i = 0; i < e; ++i) x *= b;
  return x;
}

// Prime level q, trivial character, basis (q,1,1), (1,q,1), (1,1,q): the
// entries written out by hand from the explicit Hecke action.
CycMatrix oracle_T(long q, long k) {
  const Rational Q(q);
  return CycMatrix::from_rows({{r(1), CycNum(Rational(q - 1) / Q), CycNum(Rational(q - 1) / Q)},
                               {r(0), CycNum(pw(q, k - 1)), CycNum(pw(q, k - 3) * (q * q - 1))},
                               {r(0), r(0), CycNum(pw(q, 2 * k - 3))}});
}

CycMatrix oracle_T1(long q, long k) {
  const Rational Q(q);
  return CycMatrix::from_rows(
      {{r(q + 1), CycNum((pw(q, k - 1) + 1) * (q - 1) / Q), CycNum(Rational(q * q - 1) / (Q * Q))},
       {r(0), CycNum(pw(q, 2 * k - 2) + q), CycNum((pw(q, k - 2) + 1) * (q * q - 1) / Q)},
       {r(0), r(0), CycNum(pw(q, 2 * k - 3) * (q + 1))}});
}

// odd k: the series vanish but the matrices are still defined
EisSpace trivial_space(long n, long k) { return EisSpace(n, k, DirichletCharacter::trivial(n), k % 2 != 0); }

}  // namespace

TEST(EisSpace, Partitions) {
  EXPECT_EQ(trivial_space(1, 4).dimension(), 1u);
  EXPECT_EQ(trivial_space(6, 4).dimension(), 9u);
  EXPECT_EQ(trivial_space(30, 4).dimension(), 27u);

  const EisSpace five(5, 4, DirichletCharacter(5, {{5, 2}}));
  EXPECT_EQ(five.dimension(), 3u);

  const EisSpace quart(5, 4, DirichletCharacter(5, {{5, 1}}), true);
  ASSERT_EQ(quart.dimension(), 2u);
  EXPECT_EQ(quart[0], (Partition{5, 1, 1}));
  EXPECT_EQ(quart[1], (Partition{1, 1, 5}));
}

TEST(EisSpace, Errors) {
  EXPECT_THROW(trivial_space(4, 4), std::invalid_argument);
  EXPECT_THROW(trivial_space(2, 3), std::invalid_argument);
  EXPECT_THROW(EisSpace(5, 4, DirichletCharacter(5, {{5, 1}})), std::domain_error);
  EXPECT_THROW(EisSpace(3, 4, DirichletCharacter(3, {{3, 1}})), std::domain_error);
  EXPECT_NO_THROW(EisSpace(3, 5, DirichletCharacter(3, {{3, 1}})));
}

TEST(EisSpace, RankVector) {
  EXPECT_EQ(rank_vector({6, 1, 1}), (std::map<long, int>{{2, 0}, {3, 0}}));
  EXPECT_EQ(rank_vector({2, 3, 1}), (std::map<long, int>{{2, 0}, {3, 1}}));
  EXPECT_EQ(rank_vector({1, 2, 3}), (std::map<long, int>{{2, 1}, {3, 2}}));
}

TEST(EisSpace, BasisOrder) {
  const auto s = trivial_space(6, 4);
  EXPECT_EQ(s[0], (Partition{6, 1, 1}));
  EXPECT_EQ(s[8], (Partition{1, 1, 6}));
  for (std::size_t i = 1; i < s.dimension(); ++i) EXPECT_LE(s[i - 1].total_rank(), s[i].total_rank());
}

TEST(Hecke, WorkedFixtureLevelTwo) {
  HeckeAlgebra alg(trivial_space(2, 4));
  const auto t2 = CycMatrix::from_rows({{r(1), r(1, 2), r(1, 2)}, {r(0), r(8), r(6)}, {r(0), r(0), r(32)}});
  const auto t14 = CycMatrix::from_rows({{r(3), r(9, 2), r(3, 4)}, {r(0), r(66), r(15, 2)}, {r(0), r(0), r(96)}});
  EXPECT_EQ(alg(HeckeOp::T(2)), t2);
  EXPECT_EQ(alg(HeckeOp::T1(2)), t14);
  EXPECT_EQ(alg(HeckeOp::T(3)), CycMatrix::diagonal({r(280), r(280), r(280)}));
}

TEST(Hecke, PrimeLevelMatchesFormulaOracle) {
  for (long q : {2L, 3L, 5L, 7L})
    for (long k = 4; k <= 8; ++k) {
      HeckeAlgebra alg(trivial_space(q, k));
      EXPECT_EQ(alg(HeckeOp::T(q)), oracle_T(q, k)) << "q=" << q << " k=" << k;
      EXPECT_EQ(alg(HeckeOp::T1(q)), oracle_T1(q, k)) << "q=" << q << " k=" << k;
    }
}

TEST(Hecke, LevelOneEigenvalue) {
  for (long k = 4; k <= 10; k += 2) {
    HeckeAlgebra alg(trivial_space(1, k));
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
      const CycNum expected((pw(p, k - 1) + 1) * (pw(p, k - 2) + 1));
      EXPECT_EQ(alg(HeckeOp::T(p))(0, 0), expected);
    }
  }
  EXPECT_EQ(eigenvalue_closed_form(trivial_space(1, 4), {1, 1, 1}, HeckeOp::T(2)), r(45));
}

TEST(Hecke, ClosedFormExamples) {
  const auto s = trivial_space(2, 4);
  EXPECT_EQ(eigenvalue_closed_form(s, {1, 2, 1}, HeckeOp::T(2)), r(8));
  EXPECT_EQ(eigenvalue_closed_form(s, {2, 1, 1}, HeckeOp::T1(2)), r(3));
  EXPECT_EQ(eigenvalue_closed_form(s, {1, 2, 1}, HeckeOp::T1(2)), r(34));
}

TEST(Hecke, TensorStructureAtTrivialCharacter) {
  // With chi = 1 the action of T(q), T1(q^2) only moves q; entries are those of level q.
  for (long n : {6L, 10L, 15L, 30L}) {
    const auto s = trivial_space(n, 4);
    HeckeAlgebra alg(s);
    for (long q : s.primes()) {
      HeckeAlgebra local(trivial_space(q, 4));
      for (const auto& op : {HeckeOp::T(q), HeckeOp::T1(q)}) {
        const CycMatrix& m = alg(op);
        const CycMatrix& ml = local(op);
        for (std::size_t i = 0; i < s.dimension(); ++i)
          for (std::size_t j = 0; j < s.dimension(); ++j) {
            const Partition a = s[i], b = s[j];
            CycNum expected(0);
            if (a.moved(q, 0) == b.moved(q, 0)) {
              const auto li = local.space().require_index(Partition{q, 1, 1}.moved(q, a.rank_at(q)));
              const auto lj = local.space().require_index(Partition{q, 1, 1}.moved(q, b.rank_at(q)));
              expected = ml(li, lj);
            }
            ASSERT_EQ(m(i, j), expected) << "N=" << n << " " << op.name() << " " << a.to_string() << " " << b.to_string();
          }
      }
    }
  }
}

TEST(Hecke, EigenbasisFixture) {
  HeckeAlgebra alg(trivial_space(2, 4));
  const auto sys = eigenbasis(alg, 5);
  ASSERT_EQ(sys.vectors.size(), 3u);
  EXPECT_EQ(sys.vectors[0].coeffs, (CycVector{r(1), r(-1, 14), r(-1, 434)}));
  EXPECT_EQ(sys.vectors[1].coeffs, (CycVector{r(0), r(1), r(-1, 4)}));
  EXPECT_EQ(sys.vectors[2].coeffs, (CycVector{r(0), r(0), r(1)}));
  const std::vector<long> t2{1, 8, 32}, t4{3, 66, 96};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sys.vectors[i].eigenvalues.at(HeckeOp::T(2)), r(t2[i]));
    EXPECT_EQ(sys.vectors[i].eigenvalues.at(HeckeOp::T1(2)), r(t4[i]));
  }
}

TEST(Hecke, EigenCoefficientFormulasPrimeLevel) {
  for (long q : {2L, 3L, 5L})
    for (long k = 4; k <= 7; ++k) {
      const auto s = trivial_space(q, k);
      const auto co = eigen_coefficients(s, {q, 1, 1}, q);
      EXPECT_EQ(co.a, CycNum(-Rational(q - 1) / (Rational(q) * (pw(q, k - 1) - 1))));
      EXPECT_EQ(co.b, CycNum(-Rational(q - 1) * (pw(q, k - 3) - 1) / (Rational(q) * (pw(q, k - 1) - 1) * (pw(q, 2 * k - 3) - 1))));
      EXPECT_EQ(eigen_coefficients(s, {1, q, 1}, q).c, CycNum(-Rational(q * q - 1) / (Rational(q * q) * (pw(q, k - 2) - 1))));
    }
}

TEST(Hecke, EigenvectorsAreExactForTwistedSpaces) {
  for (long n : {5L, 7L, 13L, 15L, 21L}) {
    for (long k : {4L, 5L}) {
      for (const auto& chi : enumerate_characters(n, {1, 2, 4})) {
        if (!chi.valid_for_weight(k)) continue;
        HeckeAlgebra alg(EisSpace(n, k, chi));
        const auto ops = default_ops(alg.space(), 7);
        for (const auto& rho : alg.space().basis()) {
          const CycVector v = eigenform_coefficients(alg.space(), rho);
          for (const auto& op : ops) {
            const CycVector img = vec_mat(v, alg(op));
            const CycNum lambda = img[alg.space().require_index(rho)];
            ASSERT_EQ(img, scale(v, lambda)) << "N=" << n << " chi=" << chi.spec_string() << " " << rho.to_string() << " " << op.name();
          }
        }
      }
    }
  }
}

TEST(Hecke, CompareReportsOnlyTheKnownMismatch) {
  HeckeAlgebra alg(trivial_space(2, 4));
  const auto cmp = compare_eigenvalues(eigenbasis(alg, 3));
  int mismatches = 0;
  for (const auto& c : cmp) {
    if (c.match) continue;
    ++mismatches;
    EXPECT_EQ(c.partition, (Partition{1, 2, 1}));
    EXPECT_EQ(c.op, HeckeOp::T1(2));
    EXPECT_EQ(c.matrix_value, r(66));
    EXPECT_EQ(c.closed_form, r(34));
  }
  EXPECT_EQ(mismatches, 1);
  HeckeAlgebra one(trivial_space(1, 4));
  for (const auto& c : compare_eigenvalues(eigenbasis(one, 13))) EXPECT_TRUE(c.match);
}

TEST(Hecke, SOperatorsLevelTwo) {
  HeckeAlgebra alg(trivial_space(2, 4));
  const CycVector e0 = unit_vector(3, 0);
  EXPECT_EQ(vec_mat(e0, s_operator(alg, 2, SKind::S1)), unit_vector(3, 1));
  EXPECT_EQ(vec_mat(e0, s_operator(alg, 2, SKind::S2)), unit_vector(3, 2));
  EXPECT_EQ(s_word(alg, 1, 1), CycMatrix::identity(3));
  // c(2) = 4/15 scales T1 inside S1
  const CycMatrix s1 = s_operator(alg, 2, SKind::S1);
  EXPECT_EQ(s1(0, 1), r(4, 15) * (r(9, 2) - r(3, 2) * r(1, 2)));
}

TEST(Hecke, SWordIdentitiesAllLevels) {
  for (long n = 1; n <= 30; ++n) {
    if (!is_squarefree(n)) continue;
    HeckeAlgebra alg(trivial_space(n, 4));
    const auto& s = alg.space();
    const CycVector corner = unit_vector(s.dimension(), s.require_index({n, 1, 1}));
    for (std::size_t i = 0; i < s.dimension(); ++i)
      ASSERT_EQ(vec_mat(corner, s_word(alg, s[i].n1, s[i].n2)), unit_vector(s.dimension(), i)) << "N=" << n << " " << s[i].to_string();
  }
}

TEST(Hecke, SOperatorCharacterConditions) {
  HeckeAlgebra alg(EisSpace(5, 4, DirichletCharacter(5, {{5, 2}})));
  EXPECT_THROW(s_operator(alg, 5, SKind::S1), std::invalid_argument);
  EXPECT_NO_THROW(s_operator(alg, 5, SKind::S2));
  HeckeAlgebra quart(EisSpace(5, 4, DirichletCharacter(5, {{5, 1}}), true));
  EXPECT_THROW(s_operator(quart, 5, SKind::S2), std::invalid_argument);
  EXPECT_THROW(s_operator(alg, 3, SKind::S2), std::invalid_argument);
}
