#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/verify.hpp"
#include "verify_util.hpp"

namespace rrlab::verify {

using detail::phi_pow;
using rrcf::ConvergentPair;

PrecisionContext recurrence_context(std::size_t n) {
  const double growth = static_cast<double>(n) * std::log2((1 + std::sqrt(5.0)) / 2);
  const double deriv = n > 1 ? 2 * std::log2(static_cast<double>(n)) : 0;
  return PrecisionContext(detail::bits_for_index(static_cast<double>(n)), static_cast<long>(std::ceil(growth + deriv)) + 128);
}

TraceReport check_lipschitz(const Point& x, const Point& y, std::size_t N) {
  const PrecisionContext& ctx = x.ctx();
  if (!(y.ctx() == ctx)) throw PreconditionViolation("check_lipschitz needs both points at one precision");
  TraceReport rep;
  rep.id = "lipschitz";
  BigReal dxy = distance(x.value, y.value);
  BigReal phi = golden_ratio(ctx);

  ConvergentPair sx(x), sy(y);
  ConvergentPair hx(with_precision(x, ctx.doubled())), hy(with_precision(y, ctx.doubled()));
  BigReal phin(1, ctx);
  for (std::size_t n = 0;; ++n) {
    BigComplex dq = sx.Q() - sy.Q();
    BigComplex dp = sx.P() - sy.P();
    detail::require_agree_scaled(dq, hx.Q() - hy.Q(), max(sx.Q().abs(), sy.Q().abs()), ctx, "Q difference");
    detail::require_agree_scaled(dp, hx.P() - hy.P(), max(sx.P().abs(), sy.P().abs()), ctx, "P difference");
    long ln = static_cast<long>(n);
    rep.check("qdif", ln, dq.abs(), std::nullopt, BigReal(ln * ln, ctx) * phin * dxy);
    rep.check("pdif", ln, dp.abs(), std::nullopt, BigReal((ln + 1) * (ln + 1), ctx) * phin * phi * dxy);
    if (n == N) break;
    sx.advance();
    sy.advance();
    hx.advance();
    hy.advance();
    phin *= phi;
  }
  return rep;
}

TraceReport check_growth(const schur::RootOfUnity& x, long q_max, const PrecisionContext& ctx) {
  if (x.m % 5 == 0) throw WrongResidueClass("check_growth needs 5 not dividing m");
  if (q_max < 2) throw PreconditionViolation("check_growth needs q_max >= 2");
  const long m = x.m;
  const bool plus_minus_one = schur::legendre5(m) == 1;
  TraceReport rep;
  rep.id = "growth";
  rep.notes.push_back(std::string("second-last subsequence uses the ") +
                      (plus_minus_one ? "m = +-1 (mod 5)" : "m = +-2 (mod 5)") + " bound");

  Point p = x.point(ctx);
  ConvergentPair lo(p), hi(with_precision(p, ctx.doubled()));
  BigReal inv_phi2 = phi_pow(-2, ctx);
  BigReal phi2 = phi_pow(2, ctx);
  for (long q = 2; q <= q_max; ++q) {
    auto n = static_cast<std::size_t>(q * m + m - 1);
    lo.advance_to(n);
    hi.advance_to(n);
    detail::require_agree(lo.Q(), hi.Q(), ctx, "growth recurrence");
    detail::require_agree(lo.Q_prev(), hi.Q_prev(), ctx, "growth recurrence");
    BigReal last = lo.Q().abs();
    BigReal second = lo.Q_prev().abs();
    rep.check("Q_last", q, last, phi_pow(q - 1, ctx), phi_pow(q, ctx));
    if (plus_minus_one) {
      rep.check("Q_second_pm1", q, second, phi_pow(q - 2, ctx), phi_pow(q - 1, ctx));
    } else {
      rep.check("Q_second_pm2", q, second, phi_pow(q, ctx), phi_pow(q + 1, ctx));
    }
    rep.check("Q_ratio", q, last / second, inv_phi2, phi2);
  }
  return rep;
}

TraceReport check_K_rate(const schur::RootOfUnity& x, long q_max, const PrecisionContext& ctx) {
  if (q_max < 2) throw PreconditionViolation("check_K_rate needs q_max >= 2");
  const long m = x.m;
  schur::SchurValue sv = schur::schur_eval(x, ctx);
  TraceReport rep;
  rep.id = "k-rate";
  Point p = x.point(ctx);
  BigComplex root = fifth_root(p);
  ConvergentPair lo(p), hi(with_precision(p, ctx.doubled()));
  for (long q = 2; q <= q_max; ++q) {
    auto n = static_cast<std::size_t>(q * m + m - 1);
    lo.advance_to(n);
    hi.advance_to(n);
    detail::require_agree(lo.P(), hi.P(), ctx, "rate recurrence");
    detail::require_agree(lo.Q(), hi.Q(), ctx, "rate recurrence");
    BigComplex K_last = lo.P() / lo.Q();
    BigComplex K_second = lo.P_prev() / lo.Q_prev();
    rep.check("K_last", q, distance(K_last, sv.K), phi_pow(-(2 * q + 1), ctx), phi_pow(-2 * q, ctx));
    rep.check("K_second", q, distance(K_second, sv.K), phi_pow(-(2 * q - 1), ctx), phi_pow(-(2 * q - 2), ctx));
    BigReal dr = max(distance(root / K_last, sv.R), distance(root / K_second, sv.R));
    rep.check("R_both", q, dr, std::nullopt, phi_pow(-(2 * q - 6), ctx));
  }
  return rep;
}

TraceReport check_perturbation(const PerturbationCase& c, const PrecisionContext& ctx) {
  const long m = c.x.m;
  const long q = c.q;
  if (q < 2) throw PreconditionViolation("check_perturbation needs q >= 2");
  BigReal half = BigReal(1, ctx) / 2;
  BigReal eps = c.eps.at(ctx);
  if (compare(eps, half) >= 0) throw PreconditionViolation("check_perturbation needs eps < 1/2");

  TraceReport rep;
  rep.id = "perturb";
  auto n = static_cast<std::size_t>(q * m + m - (c.which == Subsequence::Last ? 1 : 2));
  Point px = c.x.point(ctx);
  Point py = std::holds_alternative<mpq_class>(c.y) ? unit_point(std::get<mpq_class>(c.y), ctx)
                                                     : unit_point(std::get<BigReal>(c.y).at(ctx), ctx);
  ConvergentPair sx = rrcf::run_checked(px, n);
  ConvergentPair sy = rrcf::run_checked(py, n);
  BigReal measured_eps = max((sx.P() - sy.P()).abs(), (sx.Q() - sy.Q()).abs());
  if (compare(measured_eps, eps) > 0)
    throw PreconditionViolation("P, Q perturbation " + measured_eps.to_string(12) + " exceeds the claimed eps " +
                                eps.to_string(12));
  rep.info("eps_measured", static_cast<long>(n), measured_eps);

  BigComplex Kx = sx.P() / sx.Q();
  BigComplex Ky = sy.P() / sy.Q();
  rep.check("K_shift", static_cast<long>(n), distance(Ky, Kx), std::nullopt,
            BigReal(10, ctx) * measured_eps * phi_pow(-(q - 2), ctx));

  BigReal turn_gap = abs(angle_value(*py.angle, ctx) - BigReal::from_mpq(c.x.angle(), ctx));
  BigReal limit_eps = BigReal(1, ctx) / (BigReal(20, ctx) * phi_pow(2, ctx));
  if (q < 3 || compare(eps, limit_eps) > 0 || compare(turn_gap * 6, BigReal(5, ctx)) >= 0) {
    rep.notes.push_back("R envelopes need q >= 3, eps <= 1/(20 phi^2) and an angle gap below 5 pi/3; only the K "
                        "envelope applies here");
    return rep;
  }
  BigReal dxy = distance(px.value, py.value);
  BigComplex Rx = fifth_root(px) / Kx;
  BigComplex Ry = fifth_root(py) / Ky;
  BigReal env = BigReal(3, ctx) * golden_ratio(ctx) * dxy + BigReal(60, ctx) * measured_eps * phi_pow(-(q - 4), ctx);
  rep.check("R_shift", static_cast<long>(n), distance(Ry, Rx), std::nullopt, env);
  schur::SchurValue sv = schur::schur_eval(c.x, ctx);
  rep.check("R_to_limit", static_cast<long>(n), distance(Ry, sv.R), std::nullopt, env + phi_pow(-(2 * q - 3), ctx));
  return rep;
}

TraceReport general_convergence_check(const schur::RootOfUnity& x, std::size_t n, const PrecisionContext& ctx) {
  schur::GeneralLimit g = schur::general_limit_class(x, ctx);
  TraceReport rep;
  rep.id = "general-convergence";
  rep.notes.push_back(std::string("classified limit: ") + (g.to_zero ? "0" : "inf"));
  BigReal one(1, ctx);
  if (g.to_zero) {
    rep.check("block_ratio", x.k, g.block_ratio, std::nullopt, one, true);
  } else {
    rep.check("inverse_block_ratio", x.k, one / g.block_ratio, std::nullopt, one, true);
  }
  ConvergentPair s = rrcf::run_checked(x.point(ctx), n);
  ExtendedComplex limit = g.to_zero ? ExtendedComplex(BigComplex(ctx)) : ExtendedComplex::infinity();
  ExtendedComplex sv = rrcf::tail_modified(s, BigComplex(g.v, BigReal(ctx)));
  ExtendedComplex sw = rrcf::tail_modified(s, BigComplex(g.w, BigReal(ctx)));
  BigReal bound = BigReal::from_string("1e-8", ctx);
  rep.check("S_v_to_limit", static_cast<long>(n), chordal_distance(sv, limit, ctx), std::nullopt, bound, true);
  rep.check("S_w_to_limit", static_cast<long>(n), chordal_distance(sw, limit, ctx), std::nullopt, bound, true);
  rep.info("S_v_S_w", static_cast<long>(n), chordal_distance(sv, sw, ctx));
  return rep;
}

}  // namespace rrlab::verify
