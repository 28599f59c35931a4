#include "siegel/characters.hpp"

#include <gtest/gtest.h>

using namespace siegel;

namespace {

CycNum z(long m, long j = 1) { return CycNum::zeta(m, j); }

// Euler's criterion, independent of the discrete-log tables.
int euler_symbol(long a, long p) { return mod_pow(((a % p) + p) % p, (p - 1) / 2, p) == 1 ? 1 : -1; }

}  // namespace

TEST(Characters, Construction) {
  const DirichletCharacter one(1);
  EXPECT_TRUE(one.is_trivial());
  EXPECT_EQ(one(5), CycNum(1));

  const DirichletCharacter quad(3, {{3, 1}});
  EXPECT_EQ(quad.order(), 2);
  EXPECT_TRUE(quad.is_real());

  const DirichletCharacter quart(5, {{5, 1}});
  EXPECT_EQ(quart.order(), 4);
  EXPECT_EQ(quart(2), z(4));
}

TEST(Characters, Evaluation) {
  EXPECT_EQ(DirichletCharacter(3, {{3, 1}})(2), CycNum(-1));
  EXPECT_EQ(DirichletCharacter(6, {{3, 1}})(3), CycNum(0));
  EXPECT_EQ(DirichletCharacter::trivial(6)(3), CycNum(0));
  EXPECT_EQ(DirichletCharacter(5, {{5, 1}})(4), CycNum(-1));
}

TEST(Characters, QuadraticMatchesEulerCriterion) {
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
    const DirichletCharacter chi(p, {{p, (p - 1) / 2}});
    for (long a = 1; a < p; ++a) EXPECT_EQ(chi(a), CycNum(euler_symbol(a, p))) << "p=" << p << " a=" << a;
  }
}

TEST(Characters, Multiplicativity) {
  for (long n : {5L, 7L, 15L, 21L, 30L}) {
    for (const auto& chi : enumerate_characters(n, {1, 2, 3, 4, 6})) {
      for (long a = 0; a < 2 * n; ++a)
        for (long b = 0; b < n; ++b) ASSERT_EQ(chi(a * b), chi(a) * chi(b)) << chi.spec_string() << " mod " << n;
      ASSERT_EQ(chi(1), CycNum(1));
      ASSERT_EQ(chi(n + 2), chi(2));
    }
  }
}

TEST(Characters, Restriction) {
  const DirichletCharacter chi(15, {{3, 1}, {5, 2}});
  EXPECT_EQ(chi.restrict_to(3), DirichletCharacter(3, {{3, 1}}));
  EXPECT_TRUE(chi.restrict_to(1).is_trivial());
  EXPECT_EQ(chi.restrict_to(15), chi);
  for (long n = 1; n < 15; ++n) EXPECT_EQ(chi(n), chi.restrict_to(3)(n) * chi.restrict_to(5)(n));
  EXPECT_THROW(chi.restrict_to(7), std::invalid_argument);
}

TEST(Characters, Properties) {
  const auto triv = char_props(DirichletCharacter::trivial(2), 4);
  EXPECT_EQ(triv.parity, CycNum(1));
  EXPECT_TRUE(triv.valid_space);

  const DirichletCharacter quad(3, {{3, 1}});
  EXPECT_EQ(char_props(quad, 4).parity, CycNum(-1));
  EXPECT_FALSE(char_props(quad, 4).valid_space);
  EXPECT_TRUE(char_props(quad, 5).valid_space);

  EXPECT_FALSE(char_props(DirichletCharacter(5, {{5, 1}}), 4).is_real_at.at(5));
}

TEST(Characters, LegendreEpsilon) {
  EXPECT_EQ(legendre_epsilon(5), 1);
  EXPECT_EQ(legendre_epsilon(3), -1);
  EXPECT_EQ(legendre_epsilon(13), 1);
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) EXPECT_EQ(legendre_epsilon(p), euler_symbol(-1, p));
}

TEST(Characters, SpecStringRoundTrip) {
  for (const auto& chi : enumerate_characters(30, {1, 2, 4})) EXPECT_EQ(parse_character(30, chi.spec_string()), chi);
  EXPECT_THROW(parse_character(5, "5:x"), std::invalid_argument);
  EXPECT_THROW(parse_character(5, "7:1"), std::invalid_argument);
  EXPECT_THROW(parse_character(5, "5:4"), std::invalid_argument);
  EXPECT_THROW(DirichletCharacter(12), std::invalid_argument);
}

TEST(Characters, EnumerationCounts) {
  // mod 5, orders {1,2,4}: j = 0, 1, 2, 3
  EXPECT_EQ(enumerate_characters(5, {1, 2, 4}).size(), 4u);
  // mod 7, orders {1,2}: j = 0, 3
  EXPECT_EQ(enumerate_characters(7, {1, 2}).size(), 2u);
  EXPECT_EQ(enumerate_characters(1, {1}).size(), 1u);
}
