#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "oracles.hpp"
#include "rrlab/bigarith.hpp"
#include "rrlab/errors.hpp"

using namespace rrlab;

namespace {

const PrecisionContext kCtx(256, 32);

double dist_to_oracle(const BigComplex& z, const std::pair<oracle::Mpfr, oracle::Mpfr>& ref) {
  return oracle::abs_diff(ref.first, ref.second, z.re().to_string(), z.im().to_string(), 512);
}

ExtendedComplex ext(long re, long im = 0) { return BigComplex(BigReal(re, kCtx), BigReal(im, kCtx)); }

}  // namespace

TEST(PrecisionContext, RejectsBadSettings) {
  EXPECT_THROW(PrecisionContext(32, 8), PreconditionViolation);
  EXPECT_THROW(PrecisionContext(128, 128), PreconditionViolation);
  EXPECT_THROW(PrecisionContext(128, 0), PreconditionViolation);
  EXPECT_NO_THROW(PrecisionContext(64, 1));
  EXPECT_EQ(PrecisionContext(256, 32).trusted_bits(), 224);
  EXPECT_EQ(PrecisionContext(256, 32).doubled().bits, 512);
}

TEST(BigReal, ParsesDecimalAndRational) {
  auto a = BigReal::from_string("1/3", kCtx);
  auto b = BigReal(1, kCtx) / 3;
  EXPECT_TRUE(a == b);
  EXPECT_DOUBLE_EQ(BigReal::from_string("-2.5e-3", kCtx).to_double(), -2.5e-3);
  EXPECT_THROW(BigReal::from_string("", kCtx), PreconditionViolation);
  EXPECT_THROW(BigReal::from_string("abc", kCtx), PreconditionViolation);
}

TEST(BigReal, RoundTripsThroughDecimal) {
  gen::for_all(50, 11, [](gen::Rng& rng) {
    BigReal x = BigReal::from_mpq(rng.unit_angle(), kCtx) * rng.integer(-1000, 1000);
    EXPECT_TRUE(BigReal::from_string(x.to_string(), kCtx) == x) << x.to_string();
  });
}

TEST(BigReal, NonFiniteResultsThrow) {
  EXPECT_THROW(BigReal(1, kCtx) / BigReal(kCtx), PreconditionViolation);
  EXPECT_THROW(sqrt(BigReal(-1, kCtx)), PreconditionViolation);
  EXPECT_THROW(log(BigReal(kCtx)), PreconditionViolation);
}

TEST(UnitPoint, QuarterTurnsAreExact) {
  EXPECT_TRUE(unit_point(mpq_class(0), kCtx).value == BigComplex(1, kCtx));
  EXPECT_TRUE(unit_point(mpq_class(1, 2), kCtx).value == BigComplex(-1, kCtx));
  BigComplex i(BigReal(kCtx), BigReal(1, kCtx));
  EXPECT_TRUE(unit_point(mpq_class(1, 4), kCtx).value == i);
}

TEST(UnitPoint, MatchesIndependentSinCos) {
  gen::for_all(40, 3, [](gen::Rng& rng) {
    mpq_class t = rng.unit_angle();
    Point p = unit_point(t, kCtx);
    EXPECT_LT(dist_to_oracle(p.value, oracle::cis(t, 512)), std::ldexp(1.0, -224));
  });
}

TEST(UnitPoint, ModulusIsOneWithinTolerance) {
  gen::for_all(100, 5, [](gen::Rng& rng) {
    Point p = unit_point(rng.unit_angle(), kCtx);
    EXPECT_LE(compare(abs(p.value.abs() - 1), tolerance(kCtx)), 0);
  });
}

TEST(UnitPoint, AcceptsRealAngles) {
  BigReal t = BigReal::from_string("0.3", kCtx);
  Point p = unit_point(t, kCtx);
  EXPECT_LT(dist_to_oracle(p.value, oracle::cis(mpq_class(3, 10), 512)), 1e-60);
}

TEST(ChordalDistance, Examples) {
  EXPECT_TRUE(chordal_distance(ext(3, 4), ext(3, 4), kCtx).is_zero());
  EXPECT_TRUE(chordal_distance(ext(0), ExtendedComplex::infinity(), kCtx) == 1);
  EXPECT_TRUE(chordal_distance(ext(1), ext(-1), kCtx) == 1);
  EXPECT_TRUE(chordal_distance(ExtendedComplex::infinity(), ExtendedComplex::infinity(), kCtx).is_zero());
}

TEST(ChordalDistance, IsAMetricBoundedByOne) {
  auto pick = [](gen::Rng& rng) -> ExtendedComplex {
    if (rng.integer(0, 9) == 0) return ExtendedComplex::infinity();
    double scale = std::pow(10.0, rng.real(-3, 3));
    return BigComplex(BigReal::from_double(rng.real(-1, 1) * scale, kCtx),
                      BigReal::from_double(rng.real(-1, 1) * scale, kCtx));
  };
  BigReal slack = tolerance(kCtx) * 4;
  gen::for_all(300, 7, [&](gen::Rng& rng) {
    ExtendedComplex a = pick(rng), b = pick(rng), c = pick(rng);
    BigReal ab = chordal_distance(a, b, kCtx), ba = chordal_distance(b, a, kCtx);
    BigReal bc = chordal_distance(b, c, kCtx), ac = chordal_distance(a, c, kCtx);
    EXPECT_TRUE(ab == ba);
    EXPECT_GE(ab.sign(), 0);
    EXPECT_LE(compare(ab, BigReal(1, kCtx)), 0);
    EXPECT_LE(compare(ac, ab + bc + slack), 0);
  });
}

TEST(FifthRoot, Examples) {
  EXPECT_TRUE(fifth_root(unit_point(mpq_class(0), kCtx)) == BigComplex(1, kCtx));
  EXPECT_LT(dist_to_oracle(fifth_root(unit_point(mpq_class(1, 2), kCtx)), oracle::cis(mpq_class(1, 10), 512)),
            1e-65);
  EXPECT_LT(dist_to_oracle(fifth_root(unit_point(mpq_class(1, 5), kCtx)), oracle::cis(mpq_class(1, 25), 512)),
            1e-65);
}

TEST(FifthRoot, NeedsTheAngle) {
  EXPECT_THROW(fifth_root(plain_point(BigComplex(1, kCtx))), MissingAngle);
}

TEST(FifthRoot, ChordShrinksForNearbyAngles) {
  // |y^(1/5) - x^(1/5)| <= |x - y| whenever the angles differ by less than 5/6 turn.
  gen::for_all(100, 13, [](gen::Rng& rng) {
    mpq_class s = rng.unit_angle();
    mpq_class t = rng.unit_angle();
    if (abs(s - t) >= mpq_class(5, 6)) return;
    Point x = unit_point(s, kCtx), y = unit_point(t, kCtx);
    BigReal lhs = distance(fifth_root(x), fifth_root(y));
    EXPECT_LE(compare(lhs, distance(x.value, y.value) + tolerance(kCtx)), 0);
  });
}

TEST(GoldenPowers, Examples) {
  auto [p0, q0] = golden_powers(0, kCtx);
  EXPECT_TRUE(p0 == 1);
  EXPECT_TRUE(q0 == 1);
  auto [p1, q1] = golden_powers(1, kCtx);
  EXPECT_NEAR(p1.to_double(), 1.6180339887498949, 1e-15);
  EXPECT_NEAR(q1.to_double(), -0.6180339887498949, 1e-15);
  auto [p10, q10] = golden_powers(10, kCtx);
  BigReal f10 = (p10 - q10) / sqrt(BigReal(5, kCtx));
  EXPECT_LE(compare(abs(f10 - 55), tolerance(kCtx) * 128), 0);
}

TEST(GoldenPowers, BinetMatchesExactFibonacci) {
  gen::for_all(30, 17, [](gen::Rng& rng) {
    long k = rng.integer(0, 300);
    auto [pk, qk] = golden_powers(k, kCtx);
    BigReal fk = (pk - qk) / sqrt(BigReal(5, kCtx));
    BigReal exact = BigReal::from_mpz(oracle::fib(k), kCtx);
    EXPECT_LE(compare(abs(fk - exact), tolerance(kCtx) * pk * 4), 0) << "k = " << k;
  });
}

TEST(GoldenPowers, ConjugateIdentities) {
  auto [p, q] = golden_powers(1, kCtx);
  EXPECT_LE(compare(abs(p * q + 1), tolerance(kCtx)), 0);
  EXPECT_LE(compare(abs(p + q - 1), tolerance(kCtx)), 0);
  oracle::Mpfr ref = oracle::phi(512);
  BigReal r(PrecisionContext(512, 32));
  mpfr_set(r.raw(), ref.get(), MPFR_RNDN);
  EXPECT_LE(compare(abs(p - r.at(kCtx)), tolerance(kCtx)), 0);
}

TEST(GoldenPowers, CapIsEnforced) {
  EXPECT_THROW(golden_powers(1001, kCtx, 1000), CapExceeded);
  EXPECT_THROW(golden_powers(-1001, kCtx, 1000), CapExceeded);
}

TEST(BigComplex, IntegerPowerMatchesRepeatedProduct) {
  gen::for_all(20, 19, [](gen::Rng& rng) {
    Point x = unit_point(rng.unit_angle(), kCtx);
    long e = rng.integer(-40, 40);
    BigComplex direct(1, kCtx);
    for (long i = 0; i < std::labs(e); ++i) direct *= x.value;
    if (e < 0) direct = 1 / direct;
    EXPECT_TRUE(agree(ipow(x.value, e), direct, PrecisionContext(256, 64)));
  });
}
