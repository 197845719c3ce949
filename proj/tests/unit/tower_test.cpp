#include <gtest/gtest.h>

#include "gen.hpp"
#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"

using namespace rrlab;
using namespace rrlab::cfrac;

namespace {

// Direct value of base^...^top when small enough to hold.
std::optional<mpz_class> naive_tower(unsigned long base, unsigned long height, unsigned long top) {
  mpz_class v = top;
  for (unsigned long h = 0; h < height; ++h) {
    if (!v.fits_ulong_p() || v.get_ui() > 200000) return std::nullopt;
    mpz_class next;
    mpz_ui_pow_ui(next.get_mpz_t(), base, v.get_ui());
    v = next;
  }
  return v;
}

}  // namespace

TEST(TowerMod, Examples) {
  EXPECT_EQ(tower_mod(2, 1, 1, 5), 2u);
  EXPECT_EQ(tower_mod(2, 3, 3, 5), 1u);
  EXPECT_EQ(tower_mod(16, 2, 2, 5), 1u);
  EXPECT_EQ(tower_mod(7, 0, 12, 5), 2u);
  EXPECT_EQ(tower_mod(3, 4, 2, 1), 0u);
  EXPECT_THROW(tower_mod(2, 2, 2, 0), PreconditionViolation);
}

TEST(TowerMod, ExamplesAgainstBigIntegers) {
  mpz_class v = *naive_tower(2, 3, 3);
  EXPECT_EQ(v, mpz_class(1) << 256);
  EXPECT_EQ(mpz_class(v % 5), 1);
  EXPECT_EQ(mpz_class(*naive_tower(16, 2, 2) % 5), 1);
}

TEST(TowerMod, AgreesWithDirectReductionOnSmallTowers) {
  gen::for_all(400, 37, [](gen::Rng& rng) {
    unsigned long base = rng.integer(2, 12), height = rng.integer(0, 3), top = rng.integer(1, 5);
    auto v = naive_tower(base, height, top);
    if (!v) return;
    auto m = static_cast<std::uint64_t>(rng.integer(1, 5000));
    mpz_class r = *v % m;
    EXPECT_EQ(tower_mod(base, height, top, m), r.get_ui())
        << base << "^^" << height << " top " << top << " mod " << m;
  });
}

TEST(TowerMod, HeightBeyondStableDoesNotMatter) {
  gen::for_all(200, 41, [](gen::Rng& rng) {
    unsigned long base = rng.integer(2, 20);
    auto m = static_cast<std::uint64_t>(rng.integer(2, 100000));
    std::uint64_t h = tower_stable_height(m);
    std::uint64_t a = tower_mod(base, h, 1, m);
    EXPECT_EQ(a, tower_mod(base, h + 1, 7, m));
    EXPECT_EQ(a, tower_mod(base, h + 5, 3, m));
  });
}

TEST(TowerValue, MaterializesWithinCap) {
  EXPECT_EQ(*tower_value(Tower{2, 1, 1}, 64), 2);
  EXPECT_EQ(*tower_value(Tower{2, 2, 2}, 64), 16);
  EXPECT_EQ(*tower_value(Tower{2, 3, 3}, 1024), mpz_class(1) << 256);
  EXPECT_FALSE(tower_value(Tower{2, 3, 3}, 200).has_value());
  EXPECT_FALSE(tower_value(Tower{2, 4, 4}, 1ULL << 30).has_value());
}

TEST(Quotient, SymbolicTowerKeepsResidues) {
  Limits lim;
  Quotient q(Tower{2, 4, 4}, 1, lim);
  EXPECT_FALSE(q.materialized());
  EXPECT_THROW(q.value(), CapExceeded);
  EXPECT_EQ(q.residue(5), (tower_mod(2, 4, 4, 5) + 1) % 5);
  EXPECT_FALSE(q.describe().empty());
}

TEST(Quotient, PowerOfTwoComparisonIsExact) {
  Limits lim;
  Quotient q(mpz_class(16));
  EXPECT_EQ(q.at_least_pow2(4), true);
  EXPECT_EQ(q.at_least_pow2(5), false);
  Quotient big(Tower{2, 3, 3}, 0, lim);  // 2^256
  EXPECT_EQ(big.at_least_pow2(256), true);
  EXPECT_EQ(big.at_least_pow2(257), false);
  Quotient huge(Tower{2, 4, 4}, 0, lim);  // 2^(2^(2^16))
  EXPECT_EQ(huge.at_least_pow2(35315), true);
}

TEST(TowerStream, GivesTheTowerOfTwosPoint) {
  auto s = PartialQuotientStream::tower(2);
  EXPECT_EQ(s.term(1).value(), 2);
  EXPECT_EQ(s.term(2).value(), 16);
  EXPECT_EQ(s.term(3).value(), mpz_class(1) << 256);
  EXPECT_FALSE(s.term(4).materialized());
  for (std::size_t i = 1; i <= 30; ++i) EXPECT_EQ(*s.term_residue(i, 5), tower_mod(2, i, i, 5));
}

TEST(TowerStream, SixteensWithOffsets) {
  auto s = PartialQuotientStream::tower(16, sixteen_offset_prefix(), sixteen_offset_period());
  EXPECT_EQ(s.term(1).value(), 16);
  EXPECT_EQ(s.term(2).value(), *tower_value(Tower{16, 2, 2}, 4096) + 2);
  auto alpha = alpha_residues();
  // 16 is 1 mod 5, so a tower of sixteens plus the offset lands on alpha's residues.
  for (std::size_t i = 1; i <= 40; ++i) EXPECT_EQ(static_cast<int>(*s.term_residue(i, 5)), alpha.at(i)) << i;
}
