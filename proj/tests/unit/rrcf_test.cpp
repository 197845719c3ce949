#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>

#include "gen.hpp"
#include "oracles.hpp"
#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"

using namespace rrlab;
using namespace rrlab::rrcf;

namespace {

const PrecisionContext kCtx(256, 32);

Point real_point(long num, long den = 1) { return plain_point(BigComplex(BigReal::from_mpq(mpq_class(num, den), kCtx), BigReal(kCtx))); }

std::complex<long double> to_ld(const BigComplex& z) { return {z.re().to_double(), z.im().to_double()}; }

BigReal big_phi() { return golden_ratio(kCtx); }

// F_1 and F_2 by backward evaluation in long double.
std::complex<long double> f1_ld(std::complex<long double> x, int depth) {
  std::complex<long double> t = 1;
  for (int k = depth; k >= 1; --k) {
    std::complex<long double> a = std::pow(x, k) * (k % 2 ? -1.0L : 1.0L);
    t = 1.0L + a / t;
  }
  return t;
}

std::complex<long double> f2_ld(std::complex<long double> x, int depth) {
  std::complex<long double> t = 1;
  for (int k = depth; k >= 2; --k) t = 1.0L + std::pow(x, 4 * (k - 1)) / t;
  return x / t;
}

}  // namespace

TEST(PqAdvance, AtOneGivesFibonacci) {
  ConvergentPair s(unit_point(mpq_class(0), kCtx));
  for (std::size_t n = 0; n <= 60; ++n) {
    EXPECT_TRUE(s.Q().re() == BigReal::from_mpz(oracle::fib(n + 1), kCtx)) << n;
    EXPECT_TRUE(s.Q().im().is_zero());
    s = pq_advance(s);
  }
  BigReal k = (s.P().re() / s.Q().re());
  EXPECT_LT(std::fabs(k.to_double() - big_phi().to_double()), 1e-15);
}

TEST(PqAdvance, InitialValues) {
  gen::for_all(20, 43, [](gen::Rng& rng) {
    Point x = unit_point(rng.unit_angle(), kCtx);
    ConvergentPair s(x);
    EXPECT_TRUE(s.P() == BigComplex(1, kCtx));
    EXPECT_TRUE(s.Q() == BigComplex(1, kCtx));
    EXPECT_TRUE(s.P_prev() == BigComplex(1, kCtx));
    EXPECT_TRUE(s.Q_prev() == BigComplex(0, kCtx));
    ConvergentPair s1 = pq_advance(s);
    EXPECT_EQ(s.n(), 0u);  // advancing returns a new state
    EXPECT_TRUE(agree(s1.P(), x.value + 1, kCtx));
    EXPECT_TRUE(s1.Q() == BigComplex(1, kCtx));
    ConvergentPair s2 = pq_advance(s1);
    EXPECT_TRUE(agree(s2.Q(), x.value * x.value + 1, kCtx));
  });
}

TEST(PqAdvance, AtMinusOneMatchesIntegerRecurrence) {
  auto ref = oracle::pq_at_integer(-1, 40);
  ConvergentPair s(unit_point(mpq_class(1, 2), kCtx));
  std::vector<long> q_first;
  for (std::size_t n = 0; n <= 40; ++n) {
    if (n <= 4) q_first.push_back(s.Q().re().floor_mpz().get_si());
    EXPECT_TRUE(s.P().re() == BigReal::from_mpz(ref[n].first, kCtx)) << n;
    EXPECT_TRUE(s.Q().re() == BigReal::from_mpz(ref[n].second, kCtx)) << n;
    s.advance();
  }
  EXPECT_EQ(q_first, (std::vector<long>{1, 1, 2, 1, 3}));
}

TEST(PqAdvance, MatchesLowPrecisionRecurrence) {
  gen::for_all(30, 47, [](gen::Rng& rng) {
    mpq_class t = rng.unit_angle();
    Point x = unit_point(t, kCtx);
    auto ref = oracle::pq_lowprec(to_ld(x.value), 60);
    ConvergentPair s(x);
    for (std::size_t n = 0; n <= 60; ++n) {
      long double scale = oracle::fib(n + 2).get_d();
      EXPECT_LT(std::abs(to_ld(s.P()) - ref[n].first), 1e-14L * scale) << n;
      EXPECT_LT(std::abs(to_ld(s.Q()) - ref[n].second), 1e-14L * scale) << n;
      s.advance();
    }
  });
}

TEST(PqAdvance, CannotMoveBackwards) {
  ConvergentPair s(unit_point(mpq_class(1, 3), kCtx));
  s.advance_to(5);
  EXPECT_THROW(s.advance_to(4), PreconditionViolation);
}

TEST(RunChecked, AgreesWithPlainRecurrence) {
  Point x = unit_point(mpq_class(2, 9), kCtx);
  ConvergentPair a = run_checked(x, 300);
  ConvergentPair b(x);
  b.advance_to(300);
  EXPECT_TRUE(a.P() == b.P());
  EXPECT_TRUE(a.Q() == b.Q());
}

TEST(Determinant, HasModulusOneOnTheCircle) {
  gen::for_all(30, 53, [](gen::Rng& rng) {
    Point x = unit_point(rng.unit_angle(), kCtx);
    ConvergentPair s(x);
    for (std::size_t n = 0; n <= 200; ++n) {
      BigReal dev = abs(s.determinant().abs() - 1);
      EXPECT_LT(dev.to_double(), 1e-60) << "n = " << n;
      EXPECT_LE(compare(s.Q().abs(), BigReal::from_mpz(oracle::fib(n + 1), kCtx) * (tolerance(kCtx) + 1)), 0)
          << "n = " << n;
      s.advance();
    }
  });
}

TEST(ClassicalApproximants, FibonacciRatioAtOne) {
  ApproximantTrace tr = classical_approximants(unit_point(mpq_class(0), kCtx), 30);
  ASSERT_EQ(tr.records.size(), 31u);
  BigReal want = BigReal::from_mpq(mpq_class(oracle::fib(32), oracle::fib(31)), kCtx);
  EXPECT_TRUE(agree(tr.records[30].K.value().re(), want, kCtx));
  ASSERT_TRUE(tr.records[30].R.has_value());
  for (std::size_t n = 0; n <= 30; ++n) {
    EXPECT_EQ(tr.records[n].n, n);
    EXPECT_TRUE(tr.records[n].abs_Q == BigReal::from_mpz(oracle::fib(n + 1), kCtx));
  }
}

TEST(ClassicalApproximants, FibonacciQuotientsAtMinusOne) {
  // K_{2k} = F_{k+1}/F_{k+2} and K_{2k+1} = F_k/F_{k+1}, tending to 1/phi
  ApproximantTrace tr = classical_approximants(unit_point(mpq_class(1, 2), kCtx), 60);
  for (std::size_t n = 1; n <= 60; ++n) {
    unsigned long k = n / 2;
    mpq_class want = n % 2 == 0 ? mpq_class(oracle::fib(k + 1), oracle::fib(k + 2))
                                : mpq_class(oracle::fib(k), oracle::fib(k + 1));
    ASSERT_FALSE(tr.records[n].K.is_infinite()) << n;
    EXPECT_TRUE(agree(tr.records[n].K.value().re(), BigReal::from_mpq(want, kCtx), kCtx)) << n;
  }
  BigReal err = tr.records[60].K.value().re() - 1 / big_phi();
  EXPECT_LT(std::fabs(err.to_double()), 1e-12);
}

TEST(ClassicalApproximants, ConstantAtZero) {
  ApproximantTrace tr = classical_approximants(real_point(0), 12);
  EXPECT_TRUE(tr.records[0].h.is_infinite());
  for (const auto& r : tr.records) {
    EXPECT_TRUE(r.K.value() == BigComplex(1, kCtx));
    EXPECT_FALSE(r.R.has_value());
    if (r.n > 0) EXPECT_TRUE(r.h.value() == BigComplex(1, kCtx));
  }
  EXPECT_THROW(classical_approximants(real_point(0), 0), PreconditionViolation);
}

TEST(ClassicalApproximants, FlagsPolesWithoutStopping) {
  // At a primitive fifth root Q_4 vanishes.
  ApproximantTrace tr = classical_approximants(unit_point(mpq_class(1, 5), kCtx), 20);
  bool any = false;
  for (const auto& r : tr.records) any = any || r.blowup;
  EXPECT_TRUE(any);
  EXPECT_EQ(tr.records.size(), 21u);
}

TEST(ApproximantTrace, CsvAndJsonRoundTripExactly) {
  ApproximantTrace tr = classical_approximants(unit_point(mpq_class(1, 7), kCtx), 40);
  std::string csv = tr.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,re_K,im_K,re_R,im_R,abs_Q,re_h,im_h");
  ApproximantTrace back = ApproximantTrace::from_csv(csv, kCtx);
  EXPECT_TRUE(back == tr);
  EXPECT_EQ(back.to_csv(), csv);
  ApproximantTrace j = ApproximantTrace::from_json(nlohmann::json::parse(tr.to_json().dump()));
  EXPECT_TRUE(j == tr);
}

TEST(TailModified, ZeroAndInfinityGiveNeighbouringApproximants) {
  gen::for_all(30, 59, [](gen::Rng& rng) {
    ConvergentPair s(unit_point(rng.unit_angle(), kCtx));
    s.advance_to(rng.integer(1, 80));
    ExtendedComplex w0 = tail_modified(s, BigComplex(0, kCtx));
    ExtendedComplex K = approximant(s);
    if (K.is_infinite()) return;
    EXPECT_TRUE(w0.value() == K.value());
    ExtendedComplex winf = tail_modified(s, ExtendedComplex::infinity());
    ASSERT_FALSE(winf.is_infinite());
    EXPECT_TRUE(winf.value() == s.P_prev() / s.Q_prev());
  });
}

TEST(TailModified, CriticalTailIsAPole) {
  for (long x : {1L, -1L}) {
    ConvergentPair s(unit_point(mpq_class(x == 1 ? 0 : 1, 2), kCtx));
    s.advance_to(7);
    if (s.Q_prev().is_zero()) continue;
    BigComplex w = -(s.Q() / s.Q_prev());
    EXPECT_TRUE(tail_modified(s, w).is_infinite()) << x;
  }
}

TEST(CriticalTail, Examples) {
  ConvergentPair one(unit_point(mpq_class(0), kCtx));
  one.advance_to(4);
  // Q_4/Q_3 = F_5/F_4
  EXPECT_TRUE(agree(critical_tail(one).value().re(), BigReal::from_mpq(mpq_class(5, 3), kCtx), kCtx));
  ConvergentPair zero(real_point(0));
  for (int n = 1; n < 6; ++n) {
    zero.advance();
    EXPECT_TRUE(critical_tail(zero).value() == BigComplex(1, kCtx));
  }
  ConvergentPair m1(unit_point(mpq_class(1, 2), kCtx));
  m1.advance_to(3);
  EXPECT_TRUE(critical_tail(m1).value().re() == BigReal::from_string("1/2", kCtx));
}

TEST(Series, TrivialAtZero) {
  BigComplex z(0, kCtx);
  EXPECT_TRUE(f1_series(z, 10).value == BigComplex(1, kCtx));
  EXPECT_TRUE(f2_series(z, 10).value.is_zero());
  EXPECT_THROW(f1_series(z, 0), PreconditionViolation);
}

TEST(Series, MatchBackwardEvaluation) {
  gen::for_all(40, 61, [](gen::Rng& rng) {
    double r = rng.real(0.01, 0.24), a = rng.real(0, 2 * M_PI);
    std::complex<long double> x = std::polar<long double>(r, a);
    BigComplex bx(BigReal::from_double(static_cast<double>(x.real()), kCtx),
                  BigReal::from_double(static_cast<double>(x.imag()), kCtx));
    x = to_ld(bx);
    SeriesValue f1 = f1_series(bx, 100), f2 = f2_series(bx, 100);
    EXPECT_TRUE(f1.converged);
    EXPECT_TRUE(f2.converged);
    EXPECT_LT(std::abs(to_ld(f1.value) - f1_ld(x, 100)), 1e-15L);
    EXPECT_LT(std::abs(to_ld(f2.value) - f2_ld(x, 100)), 1e-15L);
  });
}

TEST(Series, DifferAtOneFifth) {
  BigComplex x(BigReal::from_string("1/5", kCtx), BigReal(kCtx));
  BigReal gap = distance(f1_series(x, 200).value, f2_series(x, 200).value);
  EXPECT_GT(gap.to_double(), 0.1);
}

TEST(OddEvenLimits, SplitIntoTheTwoSeries) {
  std::vector<BigComplex> xs{
      BigComplex(BigReal::from_string("1/10", kCtx), BigReal(kCtx)),
      BigComplex(BigReal::from_string("-1/10", kCtx), BigReal(kCtx)),
      BigComplex(BigReal::from_string("1/20", kCtx), BigReal(kCtx)),
      BigComplex(BigReal::from_string("-1/20", kCtx), BigReal(kCtx)),
      BigComplex(BigReal(kCtx), BigReal::from_string("1/10", kCtx)),
  };
  for (const auto& x : xs) {
    OddEvenLimits r = odd_even_limits(x, 400);
    EXPECT_LT(r.odd_error.to_double(), 1e-15) << x.to_string(6);
    EXPECT_LT(r.even_error.to_double(), 1e-15) << x.to_string(6);
    EXPECT_GT(r.gap.to_double(), 1e-6);
    // cross-check against long double backward evaluation
    EXPECT_LT(std::abs(to_ld(r.odd) - f1_ld(to_ld(x), 200)), 1e-15L);
    EXPECT_LT(std::abs(to_ld(r.even) - f2_ld(to_ld(x), 200)), 1e-15L);
  }
}

TEST(OddEvenLimits, Preconditions) {
  EXPECT_THROW(odd_even_limits(BigComplex(0, kCtx), 20), PreconditionViolation);
  BigComplex quarter(BigReal::from_string("1/4", kCtx), BigReal(kCtx));
  EXPECT_THROW(odd_even_limits(quarter, 20), PreconditionViolation);
  BigComplex tenth(BigReal::from_string("1/10", kCtx), BigReal(kCtx));
  EXPECT_THROW(odd_even_limits(tenth, 21), PreconditionViolation);
  EXPECT_THROW(odd_even_limits(tenth, 8), PreconditionViolation);
}

TEST(ReciprocalConvergent, IsOneOverThePreviousApproximant) {
  BigComplex z(BigReal(3, kCtx), BigReal(1, kCtx));
  ConvergentPair s(plain_point(z));
  s.advance_to(6);
  ExtendedComplex r = reciprocal_convergent(z, 7);
  EXPECT_TRUE(agree(r.value(), s.Q() / s.P(), kCtx));
  EXPECT_TRUE(reciprocal_convergent(z, 0).value().is_zero());
}

TEST(Normalized, UsesTheFifthRootOfTheAngle) {
  Point x = unit_point(mpq_class(3, 11), kCtx);
  ConvergentPair s(x);
  s.advance_to(25);
  ExtendedComplex R = normalized(s);
  EXPECT_TRUE(agree(R.value(), fifth_root(x) * s.Q() / s.P(), kCtx));
  ConvergentPair plain(plain_point(x.value));
  EXPECT_THROW(normalized(plain), MissingAngle);
}

TEST(QValues, MatchTheRecurrence) {
  Point x = unit_point(mpq_class(1, 9), kCtx);
  auto q = q_values(x, 50);
  ASSERT_EQ(q.size(), 51u);
  ConvergentPair s(x);
  s.advance_to(50);
  EXPECT_TRUE(q.back() == s.Q());
}
