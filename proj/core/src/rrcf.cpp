#include "rrlab/rrcf.hpp"

#include "rrlab/errors.hpp"

namespace rrlab::rrcf {

namespace {

// out = a * b; out must not alias a or b.
void cmul(BigComplex& out, const BigComplex& a, const BigComplex& b, BigReal& s1, BigReal& s2) {
  mpfr_mul(s1.raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
  mpfr_mul(s2.raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
  mpfr_mul(out.im().raw(), a.re().raw(), b.im().raw(), MPFR_RNDN);
  mpfr_fma(out.im().raw(), a.im().raw(), b.re().raw(), out.im().raw(), MPFR_RNDN);
  mpfr_sub(out.re().raw(), s1.raw(), s2.raw(), MPFR_RNDN);
}

// dst = base + t
void cadd(BigComplex& dst, const BigComplex& base, const BigComplex& t) {
  mpfr_add(dst.re().raw(), base.re().raw(), t.re().raw(), MPFR_RNDN);
  mpfr_add(dst.im().raw(), base.im().raw(), t.im().raw(), MPFR_RNDN);
}

bool vanishes(const BigComplex& z) { return compare(z.abs(), tolerance(z.ctx())) <= 0; }

ExtendedComplex ratio(const BigComplex& num, const BigComplex& den) {
  if (vanishes(den)) return ExtendedComplex::infinity();
  return num / den;
}

}  // namespace

ConvergentPair::ConvergentPair(Point x)
    : x_(std::move(x)),
      P_(1, x_.ctx()),
      Pp_(1, x_.ctx()),
      Q_(1, x_.ctx()),
      Qp_(0, x_.ctx()),
      xpow_(1, x_.ctx()),
      t_(x_.ctx()),
      s1_(x_.ctx()),
      s2_(x_.ctx()) {}

void ConvergentPair::advance() {
  if (!mpfr_number_p(P_.re().raw()) || !mpfr_number_p(Q_.re().raw()) || !mpfr_number_p(P_.im().raw()) ||
      !mpfr_number_p(Q_.im().raw()))
    throw PreconditionViolation("recurrence left the finite range");
  cmul(t_, xpow_, x_.value, s1_, s2_);
  swap(xpow_, t_);
  cmul(t_, xpow_, Pp_, s1_, s2_);
  cadd(Pp_, P_, t_);
  swap(P_, Pp_);
  cmul(t_, xpow_, Qp_, s1_, s2_);
  cadd(Qp_, Q_, t_);
  swap(Q_, Qp_);
  ++n_;
}

void ConvergentPair::advance_to(std::size_t n) {
  if (n < n_) throw PreconditionViolation("cannot move a convergent pair backwards");
  while (n_ < n) advance();
}

BigComplex ConvergentPair::determinant() const { return P_ * Qp_ - Q_ * Pp_; }

ConvergentPair pq_advance(ConvergentPair state) {
  state.advance();
  return state;
}

ConvergentPair run_checked(const Point& x, std::size_t n) {
  ConvergentPair lo(x);
  lo.advance_to(n);
  ConvergentPair hi(with_precision(x, x.ctx().doubled()));
  hi.advance_to(n);
  const PrecisionContext& ctx = x.ctx();
  // Compared against the size of the whole state, since a single entry may
  // cancel to zero while the others are large.
  BigReal scale = max(BigReal(1, ctx), max(max(lo.P().abs(), lo.Q().abs()), max(lo.P_prev().abs(), lo.Q_prev().abs())));
  BigReal tol = tolerance(ctx) * scale;
  auto off = [&](const BigComplex& a, const BigComplex& b) { return compare(distance(a, b.at(ctx)), tol) > 0; };
  if (off(lo.P(), hi.P()) || off(lo.Q(), hi.Q()) || off(lo.P_prev(), hi.P_prev()) || off(lo.Q_prev(), hi.Q_prev()))
    throw PrecisionTooLow("recurrence to n = " + std::to_string(n) + " loses more than the guard bits at " +
                          std::to_string(ctx.bits) + " bits");
  return lo;
}

std::vector<BigComplex> q_values(const Point& x, std::size_t N) {
  std::vector<BigComplex> out;
  out.reserve(N + 1);
  ConvergentPair s(x);
  out.push_back(s.Q());
  for (std::size_t n = 1; n <= N; ++n) {
    s.advance();
    out.push_back(s.Q());
  }
  return out;
}

ExtendedComplex approximant(const ConvergentPair& s) { return ratio(s.P(), s.Q()); }

ExtendedComplex normalized(const ConvergentPair& s) {
  BigComplex root = fifth_root(s.x());
  if (vanishes(s.Q())) return BigComplex(s.ctx());
  if (vanishes(s.P())) return ExtendedComplex::infinity();
  return root * s.Q() / s.P();
}

ExtendedComplex tail_modified(const ConvergentPair& s, const ExtendedComplex& w) {
  if (w.is_infinite()) return ratio(s.P_prev(), s.Q_prev());
  const BigComplex& v = w.value();
  BigComplex wq = v * s.Q_prev();
  BigComplex den = s.Q() + wq;
  BigReal scale = max(BigReal(1, s.ctx()), max(s.Q().abs(), wq.abs()));
  if (compare(den.abs(), tolerance(s.ctx()) * scale) <= 0) return ExtendedComplex::infinity();
  return (s.P() + v * s.P_prev()) / den;
}

ExtendedComplex critical_tail(const ConvergentPair& s) { return ratio(s.Q(), s.Q_prev()); }

ApproximantTrace classical_approximants(const Point& x, std::size_t N) {
  if (N < 1) throw PreconditionViolation("classical_approximants needs N >= 1");
  const PrecisionContext& ctx = x.ctx();
  ApproximantTrace trace;
  trace.ctx = ctx;
  trace.point = x.angle ? "exp(2 pi i * " + angle_to_string(*x.angle) + ")" : x.value.to_string();
  ConvergentPair lo(x);
  ConvergentPair hi(with_precision(x, ctx.doubled()));
  for (std::size_t n = 0;; ++n) {
    if (!agree(lo.P(), hi.P().at(ctx), ctx) || !agree(lo.Q(), hi.Q().at(ctx), ctx))
      throw PrecisionTooLow("approximant trace loses more than the guard bits at n = " + std::to_string(n));
    ExtendedComplex K = approximant(lo);
    std::optional<ExtendedComplex> R;
    if (x.angle) R = normalized(lo);
    trace.records.push_back({n, K, R, lo.Q().abs(), critical_tail(lo), K.is_infinite()});
    if (n == N) break;
    lo.advance();
    hi.advance();
  }
  return trace;
}

namespace {

template <class Numerator>
SeriesValue eval_cf(const BigComplex& x, long b0, std::size_t depth, Numerator numerator) {
  auto run = [&](std::size_t D) {
    const PrecisionContext& ctx = x.ctx();
    BigComplex A_prev(1, ctx), B_prev(0, ctx), A(b0, ctx), B(1, ctx);
    BigComplex xp(1, ctx);
    for (std::size_t k = 1; k <= D; ++k) {
      BigComplex a = numerator(k, x);
      BigComplex An = A + a * A_prev;
      BigComplex Bn = B + a * B_prev;
      A_prev = std::move(A);
      B_prev = std::move(B);
      A = std::move(An);
      B = std::move(Bn);
    }
    if (vanishes(B)) throw PreconditionViolation("continued fraction denominator vanished");
    return A / B;
  };
  if (depth < 1) throw PreconditionViolation("series depth must be positive");
  BigComplex v = run(depth);
  BigComplex v2 = run(2 * depth);
  return {v, depth, agree(v, v2, x.ctx())};
}

}  // namespace

SeriesValue f1_series(const BigComplex& x, std::size_t depth) {
  return eval_cf(x, 1, depth, [](std::size_t k, const BigComplex& z) {
    BigComplex p = ipow(z, static_cast<long>(k));
    return k % 2 ? -p : p;
  });
}

SeriesValue f2_series(const BigComplex& x, std::size_t depth) {
  return eval_cf(x, 0, depth, [](std::size_t k, const BigComplex& z) {
    return k == 1 ? z : ipow(z, 4 * static_cast<long>(k - 1));
  });
}

ExtendedComplex reciprocal_convergent(const BigComplex& z, std::size_t n) {
  if (n == 0) return BigComplex(z.ctx());
  ConvergentPair s(plain_point(z));
  s.advance_to(n - 1);
  return ratio(s.Q(), s.P());
}

OddEvenLimits odd_even_limits(const BigComplex& x, std::size_t N) {
  if (x.is_zero()) throw PreconditionViolation("odd_even_limits needs x != 0");
  const PrecisionContext& ctx = x.ctx();
  if (compare(x.abs() * 4, BigReal(1, ctx)) >= 0) throw PreconditionViolation("odd_even_limits needs |x| < 1/4");
  if (N < 10 || N % 2 != 0) throw PreconditionViolation("odd_even_limits needs an even N >= 10");

  auto limits_at = [&](const PrecisionContext& c) {
    BigComplex z = BigComplex(1, c) / x.at(c);
    ConvergentPair s(plain_point(z));
    s.advance_to(N);
    return std::pair{ratio(s.Q(), s.P()), ratio(s.Q_prev(), s.P_prev())};
  };
  auto [odd, even] = limits_at(ctx);
  auto [odd2, even2] = limits_at(ctx.doubled());
  if (odd.is_infinite() || even.is_infinite())
    throw PrecisionTooLow("odd/even convergents hit a pole");
  if (!agree(odd.value(), odd2.value().at(ctx), ctx) || !agree(even.value(), even2.value().at(ctx), ctx))
    throw PrecisionTooLow("odd/even convergents lose more than the guard bits");

  SeriesValue f1 = f1_series(x, N);
  SeriesValue f2 = f2_series(x, N);
  BigReal gap = distance(odd.value(), even.value());
  BigReal e1 = distance(odd.value(), f1.value);
  BigReal e2 = distance(even.value(), f2.value);
  return {odd.value(), even.value(), gap, f1, f2, e1, e2};
}

}  // namespace rrlab::rrcf
