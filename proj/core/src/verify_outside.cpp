#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/verify.hpp"

namespace rrlab::verify {

// C = 1/K(1/x) as 0 + K(a_n/1) with a_1 = 1 and a_n = z^{n-1}, z = 1/x, so
// its denominators are B_n = P_{n-1}(z).
TraceReport ratio_blowup_probe(const BigComplex& x, std::size_t N, const BigReal& min_gap) {
  const PrecisionContext& ctx = x.ctx();
  if (N < 10 || N % 2 != 0) throw PreconditionViolation("ratio_blowup_probe needs an even N >= 10");
  rrcf::OddEvenLimits oe = rrcf::odd_even_limits(x, N);

  TraceReport rep;
  rep.id = "outside";
  BigComplex z = BigComplex(1, ctx) / x;

  std::vector<BigComplex> B;  // B[n] for n = 0..N+1
  B.reserve(N + 2);
  B.emplace_back(1, ctx);
  rrcf::ConvergentPair s(plain_point(z));
  for (std::size_t n = 1; n <= N + 1; ++n) {
    if (n > 1) s.advance();
    B.push_back(s.P());
  }
  auto r = [&](std::size_t n) { return B[n] / B[n - 1]; };
  auto a = [&](std::size_t n) { return n == 1 ? BigComplex(1, ctx) : ipow(z, static_cast<long>(n - 1)); };

  BigReal one(1, ctx);
  BigReal c3 = z.abs();
  BigReal loose = two_pow(-(ctx.trusted_bits() / 2), ctx);
  for (std::size_t n = 1; 2 * n + 1 <= N + 1; ++n) {
    const long ln = static_cast<long>(n);
    BigComplex r_even = r(2 * n), r_odd = r(2 * n + 1), r_prev = r(2 * n - 1);
    BigComplex lhs = r_even / (r_even + (-1));
    BigComplex rhs = a(2 * n + 1) * r_prev / (a(2 * n) * (r_odd + (-1)));
    rep.check("ratio_identity", ln, distance(lhs, rhs) / max(one, lhs.abs()), std::nullopt, loose);
    rep.info("abs_r_even", ln, r_even.abs());
    rep.info("abs_r_odd", ln, r_odd.abs());
    rep.check("con1", ln, one, one, one);
    rep.check("con2", ln, (a(2 * n + 1) / a(2 * n)).abs(), std::nullopt, c3);
  }
  rep.notes.push_back("con2 constant c3 = |1/x| = " + c3.to_string(12));

  long ln = static_cast<long>(N);
  rep.check("odd_even_gap", ln, oe.gap, min_gap, std::nullopt);
  rep.info("odd_vs_F1", ln, oe.odd_error);
  rep.info("even_vs_F2", ln, oe.even_error);
  return rep;
}

}  // namespace rrlab::verify
