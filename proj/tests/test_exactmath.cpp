#include "siegel/cyclotomic.hpp"
#include "siegel/matrix.hpp"
#include "siegel/polynomial.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using namespace siegel;

namespace {

CycNum z(long m, long j = 1) { return CycNum::zeta(m, j); }
CycNum q(long n, long d = 1) { return CycNum(make_rational(n, d)); }

// Complex value of sum c_i zeta_m^i computed from scratch.
std::complex<double> embed(const CycNum& x) {
  const double pi = 3.14159265358979323846;
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i)
    acc += x.coeffs()[i].get_d() * std::polar(1.0, 2 * pi * static_cast<double>(i) / x.conductor());
  return acc;
}

CycNum random_element(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  std::vector<Rational> c(static_cast<std::size_t>(detail::euler_phi(m)));
  for (auto& x : c) x = make_rational(num(rng), den(rng));
  return CycNum(m, std::move(c));
}

}  // namespace

TEST(CycNum, RootOfUnityRelations) {
  EXPECT_EQ(z(3) + z(3, 2), q(-1));
  EXPECT_EQ(z(4) * z(4), q(-1));
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(z(6), -z(3, 2));
  EXPECT_EQ(z(12, 3), z(4));
  EXPECT_EQ(z(10, 5), q(-1));
}

TEST(CycNum, Inverse) {
  EXPECT_EQ(z(8).inverse(), z(8, 7));
  EXPECT_EQ(q(2, 3).inverse(), q(3, 2));
  EXPECT_EQ((q(1) + z(4)).inverse(), (q(1) - z(4)) * q(1, 2));
  EXPECT_EQ((q(1) + z(4)) * (q(1) - z(4)) * q(1, 2), q(1));
  EXPECT_THROW(q(0).inverse(), std::domain_error);
}

TEST(CycNum, ConductorIsCanonical) {
  EXPECT_EQ(z(6).simplified().conductor(), 3);
  EXPECT_EQ((z(5) * z(5, 4)).simplified().conductor(), 1);
  EXPECT_EQ((z(3) * z(4)).simplified().conductor(), 12);
  EXPECT_EQ((z(12) - z(12) + q(7)).simplified(), q(7));
}

TEST(CycNum, ConductorCap) {
  const int saved = conductor_cap();
  set_conductor_cap(12);
  EXPECT_THROW(z(5) * z(3), std::overflow_error);
  EXPECT_NO_THROW(z(3) * z(4));
  set_conductor_cap(saved);
}

TEST(CycNum, FieldAxiomsRandom) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(1, 24);
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = pick(rng);
    const CycNum a = random_element(rng, m), b = random_element(rng, m), c = random_element(rng, m);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, q(0));
    ASSERT_EQ(a * q(1), a);
    if (trial % 10 == 0 && !a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), q(1));
    }
  }
}

TEST(CycNum, MixedConductors) {
  std::mt19937_64 rng(11);
  const int ms[] = {1, 3, 4, 5, 8, 12, 15, 20, 24};
  for (int trial = 0; trial < 500; ++trial) {
    const int m1 = ms[rng() % 9], m2 = ms[rng() % 9];
    if (std::lcm(m1, m2) > 120) continue;
    const CycNum a = random_element(rng, m1), b = random_element(rng, m2);
    ASSERT_EQ(a * b - b * a, q(0));
    ASSERT_EQ((a + b) - b, a);
    if (!b.is_zero()) {
      ASSERT_EQ((a / b) * b, a);
    }
  }
}

TEST(CycNum, ComplexEmbeddingIsHomomorphism) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(1, 24);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = pick(rng);
    const CycNum a = random_element(rng, m), b = random_element(rng, m);
    EXPECT_LT(std::abs(embed(a * b) - embed(a) * embed(b)), 1e-8 * (1 + std::abs(embed(a) * embed(b))));
    EXPECT_LT(std::abs(embed(a + b) - embed(a) - embed(b)), 1e-9 * (1 + std::abs(embed(a)) + std::abs(embed(b))));
    EXPECT_LT(std::abs((a * b).to_complex() - embed(a * b)), 1e-9 * (1 + std::abs(embed(a * b))));
  }
}

TEST(CycNum, Powers) {
  EXPECT_EQ(z(5).pow(5), q(1));
  EXPECT_EQ(z(5).pow(-1), z(5, 4));
  EXPECT_EQ(q(2).pow(10), q(1024));
  EXPECT_EQ(q(2).pow(-3), q(1, 8));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), make_rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), make_rational(7));
  EXPECT_EQ(rational_to_string(make_rational(9, 2)), "9/2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Matrix, KernelOfAllOnes) {
  const auto m = CycMatrix::from_rows({{q(1), q(1)}, {q(1), q(1)}});
  const auto k = kernel(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_FALSE(k[0][0].is_zero());
}

TEST(Matrix, MinimalPolynomialOfDistinctDiagonal) {
  const auto d = CycMatrix::diagonal({q(1), q(8), q(32)});
  const CycPoly expected = CycPoly::linear(q(1)) * CycPoly::linear(q(8)) * CycPoly::linear(q(32));
  EXPECT_EQ(min_poly(d), expected);
  EXPECT_EQ(min_poly(CycMatrix::diagonal({q(2), q(2)})), CycPoly::linear(q(2)));
}

TEST(Matrix, Commutator) {
  const auto d = CycMatrix::diagonal({q(1), q(2)});
  const auto n = CycMatrix::from_rows({{q(0), q(1)}, {q(0), q(0)}});
  EXPECT_FALSE(commutator_is_zero(d, n));
  EXPECT_TRUE(commutator_is_zero(d, d * d));
}

TEST(Matrix, EigenFindsNonEntryRoots) {
  // Companion matrix of (x-8)(x-32): roots are not entries.
  const auto c = CycMatrix::from_rows({{q(0), q(1)}, {q(-256), q(40)}});
  const auto e = eigen(c);
  ASSERT_TRUE(e.splits());
  ASSERT_EQ(e.spaces.size(), 2u);
  for (const auto& s : e.spaces) {
    ASSERT_EQ(s.basis.size(), 1u);
    EXPECT_EQ(vec_mat(s.basis[0], c), scale(s.basis[0], s.eigenvalue));
  }
}

TEST(Matrix, EigenReportsUnsplitFactor) {
  // x^2 + 1 over Q has no rational root.
  const auto r = CycMatrix::from_rows({{q(0), q(1)}, {q(-1), q(0)}});
  EXPECT_FALSE(eigen(r).splits());
  EXPECT_TRUE(eigen(r, {z(4), -z(4)}).splits());
}

TEST(Matrix, InverseAndRank) {
  const auto a = CycMatrix::from_rows({{q(2), z(3)}, {q(0), q(1) + z(4)}});
  EXPECT_EQ(a * inverse(a), CycMatrix::identity(2));
  EXPECT_EQ(rank(CycMatrix::from_rows({{q(1), q(2)}, {q(2), q(4)}})), 1u);
}

TEST(Matrix, JointEigenspacesOfCommutingFamily) {
  const auto a = CycMatrix::diagonal({q(1), q(1), q(5)});
  const auto b = CycMatrix::diagonal({q(2), q(3), q(3)});
  const auto joint = joint_eigenspaces({a, b});
  ASSERT_EQ(joint.size(), 3u);
  for (const auto& j : joint) EXPECT_EQ(j.basis.size(), 1u);
}
