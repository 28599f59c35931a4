#include "siegel/fourier.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace siegel;

namespace {

CycNum r(long n, long d = 1) { return CycNum(make_rational(n, d)); }

// c0 + c1 det + c2 det^2 on the whole domain (the zero and rank-1 forms get c0).
FourierExpansion det_polynomial(std::int64_t D, std::int64_t R, long c0, long c1, long c2, Group g = Group::GL2) {
  return FourierExpansion::tabulate(g, D, R, [=](const CanonicalForm& t) {
    const long d = t.det();
    return r(c0 + c1 * d + c2 * d * d);
  });
}

FourierExpansion random_expansion(std::mt19937_64& rng, std::int64_t D, std::int64_t R, Group g = Group::GL2) {
  std::uniform_int_distribution<long> v(-50, 50);
  return FourierExpansion::tabulate(g, D, R, [&](const CanonicalForm&) { return r(v(rng), 1 + (v(rng) & 3)); });
}

CoefficientProvider parse(const std::string& text) {
  std::istringstream in(text);
  return provider_parse(in, "test");
}

std::string data_file() { return SIEGEL_TEST_DATA; }

}  // namespace

TEST(Expansion, DomainAndCoverage) {
  const auto f = det_polynomial(10, 6, 1, 0, 0);
  EXPECT_EQ(f(GramForm{2, 3, 6}), r(1));
  EXPECT_THROW(f(GramForm{3, 0, 4}), CoverageError);
  EXPECT_THROW(f(GramForm{7, 0, 0}), CoverageError);
  EXPECT_NO_THROW(f(GramForm{6, 0, 0}));
  EXPECT_NO_THROW(f(GramForm{0, 0, 0}));
  try {
    f(GramForm{3, 0, 4});
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.missing_det(), 12);
  }
  EXPECT_NO_THROW(f.validate());
}

TEST(ApplyU, ConstantFunction) {
  const auto one = det_polynomial(200, 200, 1, 0, 0);
  for (std::int64_t Q : {2, 3, 5, 6, 30}) {
    std::int64_t count = 1;
    for (long q : prime_factors(Q)) count *= q + 1;
    const auto g = apply_U(one, UOperator(Q, 1));
    EXPECT_EQ(g.det_bound(), 200 / (Q * Q));
    for (const auto& [t, v] : g.coeffs()) ASSERT_EQ(v, r(count)) << "Q=" << Q;
  }
}

TEST(ApplyU, ZeroAndIdentity) {
  std::mt19937_64 rng(1);
  const auto zero = det_polynomial(60, 60, 0, 0, 0);
  EXPECT_TRUE(apply_U(zero, UOperator(2, 3)).is_zero());
  const auto f = random_expansion(rng, 60, 60);
  const auto id = apply_U(f, UOperator(1, 1));
  EXPECT_EQ(id.det_bound(), 60);
  EXPECT_TRUE(id.agrees_with(f));
  EXPECT_EQ(id.coeffs(), f.coeffs());
}

TEST(ApplyU, PureScaling) {
  std::mt19937_64 rng(2);
  const auto f = random_expansion(rng, 120, 120);
  for (std::int64_t p : {2, 3, 5}) {
    const auto g = apply_U(f, UOperator(1, p));
    EXPECT_EQ(g.det_bound(), 120 / (p * p));
    EXPECT_EQ(g.rank1_bound(), 120 / p);
    for (const auto& [t, v] : g.coeffs()) {
      const GramForm x = t.oriented();
      ASSERT_EQ(v, f(GramForm{p * x.a, p * x.b, p * x.c}));
    }
  }
}

TEST(ApplyU, Linearity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_expansion(rng, 90, 90), g = random_expansion(rng, 90, 90);
    const CycNum a = r(static_cast<long>(rng() % 7) - 3, 2), b = CycNum::zeta(3, 1);
    for (const UOperator u : {UOperator(2, 1), UOperator(1, 3), UOperator(3, 2)}) {
      const auto lhs = apply_U(linear_combination({a, b}, {&f, &g}), u);
      const auto fu = apply_U(f, u), gu = apply_U(g, u);
      EXPECT_TRUE(lhs.agrees_with(linear_combination({a, b}, {&fu, &gu}))) << u.name();
    }
  }
}

TEST(ApplyU, CompositionOfCoprimeIndices) {
  std::mt19937_64 rng(4);
  const auto f = random_expansion(rng, 400, 400);
  const auto a = apply_word(f, {UOperator(2, 1), UOperator(3, 1)});
  const auto b = apply_U(f, UOperator(6, 1));
  EXPECT_TRUE(a.agrees_with(b));
  const auto c = apply_word(f, {UOperator(1, 2), UOperator(3, 1)});
  const auto d = apply_word(f, {UOperator(3, 1), UOperator(1, 2)});
  EXPECT_TRUE(c.agrees_with(d));
}

TEST(ApplyU, DeterminantPowersAreEigenfunctions) {
  // det(P H T H^t) = P^2 Q^2 det T, so det^s has eigenvalue (#sublattices) (QP)^(2s).
  for (int s = 1; s <= 2; ++s) {
    const auto f = det_polynomial(300, 300, 0, s == 1 ? 1 : 0, s == 2 ? 1 : 0);
    for (const UOperator u : {UOperator(2, 1), UOperator(1, 2), UOperator(3, 1), UOperator(2, 3)}) {
      long count = 1;
      for (long q : prime_factors(u.Q)) count *= q + 1;
      long scale = 1;
      for (int i = 0; i < 2 * s; ++i) scale *= u.Q * u.P;
      const auto g = apply_U(f, u);
      EXPECT_TRUE(g.agrees_with(r(count * scale) * f)) << u.name() << " s=" << s;
    }
  }
}

TEST(ApplyU, SL2Mode) {
  std::mt19937_64 rng(5);
  const auto f = random_expansion(rng, 80, 80, Group::SL2);
  const auto one = det_polynomial(80, 80, 1, 0, 0, Group::SL2);
  const auto four = apply_U(one, UOperator(3, 1));
  for (const auto& [t, v] : four.coeffs()) ASSERT_EQ(v, r(4));
  const auto g = apply_U(f, UOperator(1, 2));
  for (const auto& [t, v] : g.coeffs()) {
    const GramForm x = t.oriented();
    ASSERT_EQ(v, f(GramForm{2 * x.a, 2 * x.b, 2 * x.c}));
  }
}

TEST(UOperator, Validation) {
  EXPECT_THROW(UOperator(2, 2), std::invalid_argument);
  EXPECT_THROW(UOperator(4, 1), std::invalid_argument);
  EXPECT_THROW(UOperator(0, 1), std::invalid_argument);
  EXPECT_EQ(UOperator(2, 3).name(), "U(2,3)");
}

TEST(Provider, Parsing) {
  const auto z = parse("!weight 4 level 1 group GL2\n# origin: test\n0 0 0 1\n");
  EXPECT_EQ(z.expansion.det_bound(), 0);
  EXPECT_EQ(z.expansion.rank1_bound(), 0);
  EXPECT_EQ(z.weight, 4);
  ASSERT_EQ(z.provenance.size(), 1u);
  EXPECT_EQ(z.provenance[0], "origin: test");

  const auto dup = parse("!weight 4 level 1 group GL2\n0 0 0 1\n2 3 6 5/2\n2 1 2 5/2\n");
  EXPECT_EQ(dup.expansion.size(), 2u);
  EXPECT_EQ(dup.expansion.coeffs().at(reduce({2, 1, 2})), r(5, 2));

  EXPECT_THROW(parse("!weight 4 level 1 group GL2\n0 0 0 1\n2 3 6 5/2\n2 1 2 7\n"), std::invalid_argument);
  EXPECT_THROW(parse("0 0 0 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 1 group GL2\n1 0 1 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 1 group GL2\n0 0 0 1\n1 2 1 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 1 group GL2\n0 0 0 1\n1 0 x 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 1 group GL2\n0 0 0 1\n1 0 1 1/0\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 2 group GL2\n0 0 0 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("!weight 4 level 1 group GL3\n0 0 0 1\n"), std::invalid_argument);
}

TEST(Provider, InfersBounds) {
  // det 1 and 2 present, det 3 has two classes and one is missing.
  const auto p = parse("!weight 4 level 1 group GL2\n0 0 0 1\n1 0 0 2\n2 0 0 3\n4 0 0 5\n1 0 1 1\n1 0 2 1\n1 0 3 1\n");
  EXPECT_EQ(p.expansion.det_bound(), 2);
  EXPECT_EQ(p.expansion.rank1_bound(), 2);
}

TEST(Provider, WriteParseRoundTrip) {
  std::mt19937_64 rng(6);
  const auto f = random_expansion(rng, 30, 12);
  std::ostringstream out;
  write_provider(out, f, 6);
  const auto p = parse(out.str());
  EXPECT_EQ(p.weight, 6);
  EXPECT_EQ(p.expansion.det_bound(), 30);
  EXPECT_EQ(p.expansion.rank1_bound(), 12);
  EXPECT_TRUE(p.expansion.agrees_with(f));
}

TEST(Krylov, SingleEigenvector) {
  const auto f = det_polynomial(200, 200, 0, 1, 0);
  const auto kr = krylov_spectral(f, {UOperator(2, 1)}, 4);
  EXPECT_EQ(kr.rank, 1u);
  ASSERT_EQ(kr.components.size(), 1u);
  EXPECT_EQ(kr.components[0].eigenvalues[0], r(12));
  EXPECT_EQ(kr.minimal_polynomials[0].degree(), 1);
  EXPECT_TRUE(kr.components[0].expansion.agrees_with(f));
}

TEST(Krylov, RecoversMixtureComponents) {
  const auto f = det_polynomial(500, 500, 2, 3, 5);
  const auto kr = krylov_spectral(f, {UOperator(2, 1), UOperator(1, 3)}, 4);
  ASSERT_EQ(kr.components.size(), 3u);
  std::vector<const FourierExpansion*> parts;
  for (const auto& c : kr.components) parts.push_back(&c.expansion);
  EXPECT_TRUE(linear_combination(std::vector<CycNum>(3, r(1)), parts).agrees_with(f));
  const std::vector<std::pair<CycNum, FourierExpansion>> expected{
      {r(3), det_polynomial(500, 500, 2, 0, 0)}, {r(12), det_polynomial(500, 500, 0, 3, 0)}, {r(48), det_polynomial(500, 500, 0, 0, 5)}};
  for (const auto& [ev, g] : expected) {
    bool found = false;
    for (const auto& c : kr.components)
      if (c.eigenvalues[0] == ev) {
        found = true;
        EXPECT_TRUE(c.expansion.agrees_with(g));
        EXPECT_EQ(c.eigenvalues[1], ev == r(3) ? r(1) : ev == r(12) ? r(9) : r(81));
      }
    EXPECT_TRUE(found);
  }
}

TEST(Krylov, ShortExpansionIsReported) {
  const auto f = det_polynomial(20, 20, 2, 3, 5);
  EXPECT_THROW(krylov_spectral(f, {UOperator(2, 1)}, 4), CoverageError);
}

TEST(Projection, LevelOneIsIdentity) {
  const auto p = parse("!weight 4 level 1 group GL2\n0 0 0 1\n1 0 0 240\n");
  const auto pr = project_eisenstein(p, 1, 4, 0);
  ASSERT_EQ(pr.components.size(), 1u);
  EXPECT_TRUE(pr.eisenstein.at(Partition{1, 1, 1}).agrees_with(p.expansion));
  EXPECT_TRUE(pr.sums_to_input);
  EXPECT_THROW(project_eisenstein(p, 1, 6, 0), std::invalid_argument);
  EXPECT_THROW(project_eisenstein(p, 4, 4, 0), std::invalid_argument);
}

TEST(Calibration, LevelOneSingleValue) {
  CoefficientProvider p;
  p.weight = 4;
  p.expansion = det_polynomial(100, 100, 1, 0, 0);
  const auto rep = calibrate_normalization(p, 1, 4, 4);
  ASSERT_EQ(rep.level_one.size(), 1u);
  EXPECT_EQ(rep.level_one[0], r(3));
}

TEST(Calibration, FitRelation) {
  const std::vector<Rational> ref{1, 8, 32};
  EXPECT_EQ(fit_relation(ref, {2, 16, 64}).kind, "scalar");
  EXPECT_EQ(*fit_relation(ref, {2, 16, 64}).scale, 2);
  const auto aff = fit_relation(ref, {3, 17, 65});
  EXPECT_EQ(aff.kind, "affine");
  EXPECT_EQ(*aff.scale, 2);
  EXPECT_EQ(*aff.shift, 1);
  EXPECT_EQ(fit_relation(ref, {1, 2, 5}).kind, "none");
}

TEST(Pipeline, LevelTwoFromShippedTable) {
  if (!std::ifstream(data_file())) GTEST_SKIP() << "no coefficient table at " << data_file();
  const auto p = provider_load(data_file());
  EXPECT_EQ(p.expansion(GramForm{1, 0, 0}), r(240));
  EXPECT_EQ(p.expansion(GramForm{1, 0, 1}), r(30240));
  const auto pr = project_eisenstein(p, 2, 4, 4);
  ASSERT_EQ(pr.components.size(), 3u);
  EXPECT_TRUE(pr.sums_to_input);
  const CanonicalForm zero{{0, 0, 0}, 1};
  EXPECT_EQ(pr.eisenstein.at(Partition{2, 1, 1}).at_canonical(zero), r(1));
  EXPECT_EQ(pr.eisenstein.at(Partition{1, 2, 1}).at_canonical(zero), r(0));
  EXPECT_EQ(pr.eisenstein.at(Partition{1, 1, 2}).at_canonical(zero), r(0));
  EXPECT_EQ(pr.components[0].label, (Partition{2, 1, 1}));
  // rank-1 part of E_(2,1,1) is (16 E4(2 tau) - E4(tau)) / 15, with E4 = 1 + 240 sum sigma3(n) q^n
  auto sigma3 = [](long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += d * d * d;
    return s;
  };
  for (long m = 1; m <= 12; ++m) {
    const long a = (m % 2 == 0 ? 16 * 240 * sigma3(m / 2) : 0) - 240 * sigma3(m);
    EXPECT_EQ(pr.eisenstein.at(Partition{2, 1, 1})(GramForm{m, 0, 0}), r(a, 15)) << "m=" << m;
  }

  const auto rep = calibrate_normalization(p, 2, 4, 4);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_EQ(rep.entries[0].distinct_measured, 3u);
  std::vector<CycNum> lambda = rep.entries[0].closed_form;
  EXPECT_EQ(lambda, (std::vector<CycNum>{r(1), r(8), r(32)}));
}
