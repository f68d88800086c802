#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dispersion/certificate.hpp"
#include "dispersion/constructions.hpp"
#include "dispersion/engine.hpp"
#include "dispersion/errors.hpp"
#include "oracle.hpp"

namespace dispersion {
namespace {

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Reference check: materialise every box and test membership literally.
std::optional<GridPattern> literal_first_violation(const PointSet& x, std::uint64_t q) {
  for (const auto& pat : enumerate_patterns(q, x.dim())) {
    const Box box = pattern_to_box(pat, q, x.dim());
    bool hit = false;
    for (const auto& p : x) {
      if (contains(box, p)) {
        hit = true;
        break;
      }
    }
    if (!hit) return pat;
  }
  return std::nullopt;
}

// Frozen from an independent 60-digit evaluation of ln r / ln(1-r).
TEST(ExponentM, Values) {
  EXPECT_EQ(exponent_M(Scalar(1, 4)), 4U);
  EXPECT_EQ(exponent_M(Scalar(1, 2)), 1U);
  EXPECT_EQ(exponent_M(Scalar(1, 8)), 15U);
  EXPECT_EQ(exponent_M(Scalar(1, 3)), 2U);
  EXPECT_EQ(exponent_M(Scalar(1, 5)), 7U);
  EXPECT_EQ(exponent_M(Scalar(1, 6)), 9U);
  EXPECT_EQ(exponent_M(Scalar(2, 9)), 5U);
  EXPECT_EQ(exponent_M(Scalar(1, 100)), 458U);
  EXPECT_EQ(exponent_M(Scalar(3, 4)), 0U);
  EXPECT_THROW((void)exponent_M(Scalar(0)), DomainError);
  EXPECT_THROW((void)exponent_M(Scalar(1)), DomainError);
}

TEST(ExponentM, DefiningInequality) {
  for (long den = 2; den <= 40; ++den) {
    for (long num = 1; num < den; ++num) {
      const Scalar r(num, den);
      const auto m = static_cast<long>(exponent_M(r));
      EXPECT_GE(pow(Scalar(1) - r, m), r);
      EXPECT_LT(pow(Scalar(1) - r, m + 1), r);
    }
  }
}

TEST(EffectiveM, Examples) {
  EXPECT_EQ(effective_M(Scalar(1, 4), 100), 4U);
  EXPECT_EQ(effective_M(Scalar(1, 4), 2), 2U);
  EXPECT_EQ(effective_M(Scalar(1, 2), 5), 1U);
}

TEST(FamilySize, Examples) {
  EXPECT_EQ(covering_family_size(4, 2), 9);
  EXPECT_EQ(covering_family_size(4, 5), 405);
  EXPECT_EQ(covering_family_size(2, 7), 7);
}

TEST(FamilySize, FormulaAndCardinalityBound) {
  for (std::uint64_t q = 2; q <= 6; ++q) {
    for (std::uint64_t d = 1; d <= 20; ++d) {
      const std::uint64_t m = effective_M(Scalar(1, static_cast<long>(q)), d);
      mpz_class formula;
      mpz_class qm1 = q - 1;
      mpz_pow_ui(formula.get_mpz_t(), qm1.get_mpz_t(), m);
      formula *= binomial(d, m);
      EXPECT_EQ(covering_family_size(q, d), formula);
      mpz_class cap;
      mpz_class dq = d * q;
      mpz_pow_ui(cap.get_mpz_t(), dq.get_mpz_t(), m);
      EXPECT_LE(formula, cap);
    }
  }
}

TEST(EnumeratePatterns, FourTwo) {
  const auto pats = enumerate_patterns(4, 2);
  ASSERT_EQ(pats.size(), 9U);
  std::uint32_t k = 0;
  for (std::uint32_t a = 1; a <= 3; ++a) {
    for (std::uint32_t b = 1; b <= 3; ++b) {
      EXPECT_EQ(pats[k].fixed_indices, (std::vector<std::uint32_t>{1, 2}));
      EXPECT_EQ(pats[k].fixed_values, (std::vector<std::uint32_t>{a, b}));
      ++k;
    }
  }
  EXPECT_EQ(pats[4].str(), "(1,2):(2,2)");
}

TEST(EnumeratePatterns, TwoThree) {
  const auto pats = enumerate_patterns(2, 3);
  ASSERT_EQ(pats.size(), 3U);
  for (std::uint32_t i = 0; i < 3; ++i) {
    EXPECT_EQ(pats[i].fixed_indices, std::vector<std::uint32_t>{i + 1});
    EXPECT_EQ(pats[i].fixed_values, std::vector<std::uint32_t>{1});
  }
}

TEST(EnumeratePatterns, OrderedWithoutDuplicates) {
  for (std::uint64_t q = 2; q <= 5; ++q) {
    for (std::uint64_t d = 1; d <= 7; ++d) {
      const auto pats = enumerate_patterns(q, d);
      EXPECT_EQ(mpz_class(pats.size()), covering_family_size(q, d));
      EXPECT_TRUE(std::is_sorted(pats.begin(), pats.end()));
      EXPECT_EQ(std::set<GridPattern>(pats.begin(), pats.end()).size(), pats.size());
    }
  }
  PatternEnumerator e(4, 5);
  EXPECT_EQ(e.current().str(), "(1,2,3,4):(1,1,1,1)");
}

TEST(PatternToBox, Examples) {
  const Scalar q1(1, 4);
  const Scalar q2(1, 2);
  const Scalar q3(3, 4);
  GridPattern a{{1, 2}, {2, 1}};
  EXPECT_EQ(pattern_to_box(a, 4, 2), Box({Interval::singleton(q2), Interval::singleton(q1)}));
  GridPattern b{{2}, {3}};
  EXPECT_EQ(pattern_to_box(b, 4, 3),
            Box({Interval::closed(q1, q3), Interval::singleton(q3), Interval::closed(q1, q3)}));
  for (const auto& pat : enumerate_patterns(5, 4)) EXPECT_EQ(volume(pattern_to_box(pat, 5, 4)), Scalar(0));
}

TEST(PatternToBox, Validation) {
  EXPECT_THROW((void)pattern_to_box(GridPattern{{2, 1}, {1, 1}}, 4, 2), DomainError);
  EXPECT_THROW((void)pattern_to_box(GridPattern{{1, 3}, {1, 1}}, 4, 2), DomainError);
  EXPECT_THROW((void)pattern_to_box(GridPattern{{1, 2}, {1, 4}}, 4, 2), DomainError);
  EXPECT_THROW((void)pattern_to_box(GridPattern{{1, 2}, {1}}, 4, 2), DomainError);
}

TEST(Certificate, FullGridHolds) {
  const auto rep = certificate_check(testing::grid_set(4, 2), 4);
  EXPECT_TRUE(rep.holds);
  EXPECT_FALSE(rep.first_violation.has_value());
  EXPECT_EQ(rep.patterns_checked, 9);
  EXPECT_EQ(rep.M, 4U);
  EXPECT_EQ(rep.M_eff, 2U);
}

TEST(Certificate, MissingCenterFails) {
  PointSet x(2);
  for (const auto& p : testing::grid_set(4, 2)) {
    if (p != Point::diagonal(Scalar(1, 2), 2)) x.add(p);
  }
  const auto rep = certificate_check(x, 4);
  EXPECT_FALSE(rep.holds);
  ASSERT_TRUE(rep.first_violation.has_value());
  EXPECT_EQ(rep.first_violation->str(), "(1,2):(2,2)");
  EXPECT_EQ(rep.patterns_checked, 5);
}

TEST(Certificate, EmptyFailsAtFirst) {
  const auto rep = certificate_check(PointSet(3), 3);
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(*rep.first_violation, enumerate_patterns(3, 3).front());
  EXPECT_EQ(rep.patterns_checked, 1);
}

TEST(Certificate, MatchesLiteralMembership) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t q = 2 + trial % 3;
    const std::size_t d = 1 + (trial / 3) % 3;
    // Denominator 2q puts some points on grid lines and some between them.
    const auto x = testing::random_rational_set(rng, 1 + trial % 15, d, static_cast<long>(2 * q));
    const auto rep = certificate_check(x, q);
    const auto lit = literal_first_violation(x, q);
    EXPECT_EQ(rep.holds, !lit.has_value());
    EXPECT_EQ(rep.first_violation, lit);
  }
}

TEST(Certificate, BitmapAndSortKernelsAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t q = 2 + trial % 5;
    const std::size_t d = 1 + (trial / 5) % 5;
    const long den = trial % 2 == 0 ? static_cast<long>(q) : static_cast<long>(2 * q);
    const auto x = testing::random_rational_set(rng, 5 + trial % 60, d, den);
    CertificateOptions sorted;
    sorted.dense_bitmap = false;
    const auto a = certificate_check(x, q);
    const auto b = certificate_check(x, q, sorted);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.first_violation, b.first_violation);
    EXPECT_EQ(a.patterns_checked, b.patterns_checked);
  }
}

TEST(Certificate, ThreadInvariant) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = testing::random_rational_set(rng, 30, 4, 8);
    CertificateOptions one;
    CertificateOptions many;
    many.threads = 5;
    const auto a = certificate_check(x, 4, one);
    const auto b = certificate_check(x, 4, many);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.first_violation, b.first_violation);
    EXPECT_EQ(a.patterns_checked, b.patterns_checked);
  }
}

TEST(Certificate, BudgetWarning) {
  CertificateOptions opt;
  opt.family_budget = 8;
  const auto rep = certificate_check(testing::grid_set(4, 2), 4, opt);
  EXPECT_TRUE(rep.warning.has_value());
  EXPECT_THROW((void)certificate_check(PointSet(2), 1), DomainError);
}

TEST(Certificate, AddingPointsKeepsItValid) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = testing::random_rational_set(rng, 12, 2, 4);
    bool held = certificate_check(x, 4).holds;
    for (int extra = 0; extra < 10; ++extra) {
      auto more = testing::random_rational_set(rng, 1, 2, 4);
      x.add(more[0]);
      const bool now = certificate_check(x, 4).holds;
      if (held) EXPECT_TRUE(now);
      held = now;
    }
  }
}

// Hitting the whole family forces dispersion <= 1/q.
TEST(Certificate, SoundAgainstExactDispersion) {
  const std::vector<std::pair<std::uint64_t, std::size_t>> cases{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {4, 3}};
  for (const auto& [q, d] : cases) {
    const Scalar bound(1, static_cast<long>(q));
    int certified = 0;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const std::uint64_t n = minimal_certified_n(q, d, seed, 10000);
      GridParams p;
      p.q = q;
      p.d = d;
      p.n = n;
      p.seed = seed;
      const auto x = random_grid_set(p);
      ASSERT_TRUE(certificate_check(x, q).holds);
      EXPECT_LE(dispersion_exact(x).value, bound) << "q=" << q << " d=" << d << " seed=" << seed;
      ++certified;
    }
    EXPECT_EQ(certified, 15);
  }
}

TEST(Certificate, FullGridDispersionIsOneOverQ) {
  EXPECT_EQ(dispersion_exact(testing::grid_set(4, 2)).value, Scalar(1, 4));
  EXPECT_EQ(dispersion_exact(testing::grid_set(4, 3)).value, Scalar(1, 4));
}

TEST(MinimalCertifiedN, Examples) {
  for (std::size_t d = 1; d <= 6; ++d) EXPECT_EQ(minimal_certified_n(2, d, 3, 100), 1U);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) EXPECT_GE(minimal_certified_n(4, 2, seed, 10000), 9U);
  EXPECT_THROW((void)minimal_certified_n(4, 2, 1, 5), BudgetExceeded);
}

TEST(MinimalCertifiedN, AgreesWithPrefixCheck) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::uint64_t n = minimal_certified_n(3, 3, seed, 10000);
    GridParams p;
    p.q = 3;
    p.d = 3;
    p.seed = seed;
    p.n = n;
    EXPECT_TRUE(certificate_check(random_grid_set(p), 3).holds);
    p.n = n - 1;
    EXPECT_FALSE(certificate_check(random_grid_set(p), 3).holds);
  }
}

// Frozen from an independent 80-digit evaluation.
TEST(UnionBound, Examples) {
  const auto ok = union_bound_check(4, 2, paper_sample_size(4, 2));
  EXPECT_TRUE(ok.bound_holds);
  EXPECT_EQ(ok.M, 4U);
  EXPECT_NEAR(ok.log_lhs.to_double(), -1217830262.19395258, 1e-4);
  const auto bad = union_bound_check(4, 2, 1);
  EXPECT_FALSE(bad.bound_holds);
  EXPECT_NEAR(bad.log_lhs.to_double(), 8.31385991671934371, 1e-12);
  EXPECT_TRUE(union_bound_check(4, 1000000, paper_sample_size(4, 1000000)).bound_holds);
  EXPECT_THROW((void)union_bound_check(1, 2, 1), DomainError);
}

}  // namespace
}  // namespace dispersion
