#include <array>
#include <set>

#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/verify.hpp"
#include "verify_util.hpp"

namespace rrlab::verify {

using detail::phi_pow;
using rrcf::ConvergentPair;

namespace {

// Longest recurrence the traces will run.
constexpr unsigned long kMaxIndex = 1UL << 22;

unsigned long small_index(const mpz_class& v, const char* what) {
  if (v > kMaxIndex) throw CapExceeded(std::string(what) + " is beyond the recurrence length cap");
  return v.get_ui();
}

struct Nearest {
  int j = 0;
  BigReal dist;
};

Nearest nearest_catalog(const BigComplex& R) {
  Nearest best{0, BigReal(R.ctx())};
  for (int j = 1; j <= 10; ++j) {
    BigReal d = distance(R, schur::r_catalog(j, R.ctx()));
    if (best.j == 0 || compare(d, best.dist) < 0) best = {j, d};
  }
  return best;
}

BigReal mpq_abs(const mpq_class& q, const PrecisionContext& ctx) { return BigReal::from_mpq(abs(q), ctx); }

cfrac::ResiduePair residue_at(const cfrac::ModPattern& p, std::size_t n) {
  if (n < p.residues.size()) return p.residues[n];
  if (!p.preperiod || !p.period) throw PreconditionViolation("residue pattern has no detected period");
  std::size_t k = *p.preperiod + (n - *p.preperiod) % *p.period;
  return p.residues.at(k);
}

}  // namespace

LevelData level_data(const cfrac::PartialQuotientStream& s, std::size_t levels, const cfrac::Limits& limits,
                     cfrac::CapPolicy policy) {
  LevelData out;
  if (s.is_generator()) {
    cfrac::SPoint sp = cfrac::build_S_point(s, levels, limits, policy);
    out.terms = sp.terms;
    out.convergents = sp.convergents;
    out.reachable = sp.certificates.size();
    return out;
  }
  for (std::size_t i = 1; i <= levels + 1; ++i) {
    cfrac::Quotient a = s.term(i, limits);
    if (!a.materialized()) {
      if (policy == cfrac::CapPolicy::Throw)
        throw CapExceeded("a_" + std::to_string(out.terms.size() + 1) + " = " + a.describe() +
                          " is beyond the representability cap");
      break;
    }
    out.terms.push_back(a.value());
  }
  out.convergents = cfrac::convergents(out.terms);
  out.reachable = out.terms.empty() ? 0 : out.terms.size() - 1;
  return out;
}

TraceReport divergence_trace(const cfrac::PartialQuotientStream& s, std::size_t levels,
                             const cfrac::Limits& limits) {
  if (levels < 1) throw PreconditionViolation("divergence_trace needs at least one level");
  LevelData ld = level_data(s, levels, limits, cfrac::CapPolicy::Throw);
  const auto& cv = ld.convergents;
  unsigned long dL = small_index(cv[levels].d, "d_L");
  PrecisionContext ctx = detail::recurrence_context(static_cast<double>(dL));

  TraceReport rep;
  rep.id = "divergence";
  rep.reachable_levels = static_cast<long>(levels);
  rep.notes.push_back("precision " + std::to_string(ctx.bits) + " bits, trace point c_" +
                      std::to_string(levels + 1) + "/d_" + std::to_string(levels + 1));

  const mpq_class t(cv[levels + 1].c, cv[levels + 1].d);
  Point y = unit_point(t, ctx);
  ConvergentPair sy(y), hy(with_precision(y, ctx.doubled()));
  BigReal phi = golden_ratio(ctx);
  BigReal two(2, ctx), four(4, ctx), six(6, ctx);

  for (std::size_t n = 1; n <= levels; ++n) {
    const long ln = static_cast<long>(n);
    const unsigned long d = small_index(cv[n].d, "d_n");
    const mpq_class cn(cv[n].c, cv[n].d);

    BigReal dd = BigReal::from_mpz(cv[n].d, ctx);
    rep.check("l1_radius", ln, mpq_abs(t - cn, ctx), std::nullopt,
              BigReal(1, ctx) / (dd * dd * phi_pow(static_cast<long>(d), ctx)), true);

    sy.advance_to(d - 1);
    hy.advance_to(d - 1);
    detail::require_agree(sy.Q(), hy.Q(), ctx, "trace-point recurrence");
    detail::require_agree(sy.Q_prev(), hy.Q_prev(), ctx, "trace-point recurrence");

    PrecisionContext cx = detail::recurrence_context(static_cast<double>(d));
    Point xn = unit_point(cn, cx);
    ConvergentPair sx = rrcf::run_checked(xn, d - 1);
    BigComplex q1x = sx.Q().at(ctx), q2x = sx.Q_prev().at(ctx);
    BigComplex q1y = sy.Q(), q2y = sy.Q_prev();

    rep.check("ie2", ln, max(q1x.abs(), q2x.abs()), std::nullopt, two);

    BigReal dxy = distance(unit_point(cn, ctx).value, y.value);
    const long i1 = static_cast<long>(d) - 1, i2 = static_cast<long>(d) - 2;
    BigReal diff1 = distance(q1x, q1y), diff2 = distance(q2x, q2y);
    rep.check("in1_lipschitz", ln, diff1, std::nullopt, BigReal(i1 * i1, ctx) * phi_pow(i1, ctx) * dxy);
    rep.check("in1", ln, diff1, std::nullopt, four, true);
    rep.check("in2_lipschitz", ln, diff2, std::nullopt, BigReal(i2 * i2, ctx) * phi_pow(i2, ctx) * dxy);
    rep.check("in2", ln, diff2, std::nullopt, four, true);

    rep.check("Q_d1_y", ln, q1y.abs(), std::nullopt, six, true);
    rep.check("Q_d2_y", ln, q2y.abs(), std::nullopt, six, true);
    rep.check("product", ln, q1y.abs() * q2y.abs(), std::nullopt, BigReal(36, ctx), true);
  }
  return rep;
}

TraceReport tower_growth_certificate(const cfrac::PartialQuotientStream& s, std::size_t levels,
                                     const cfrac::Limits& limits) {
  TraceReport rep;
  rep.id = "tower-growth";
  std::vector<cfrac::Quotient> q;
  for (std::size_t i = 1; i <= levels + 1; ++i) q.push_back(s.term(i, limits));
  std::vector<mpz_class> known;
  PrecisionContext ctx;
  for (std::size_t i = 1; i <= levels; ++i) {
    if (!q[i - 1].materialized()) {
      rep.fail("a_next_ge_2_pow_d", static_cast<long>(i), "d_i needs a_" + std::to_string(i) + " materialized");
      break;
    }
    known.push_back(q[i - 1].value());
    mpz_class d = cfrac::convergents(known).back().d;
    std::optional<bool> ok = q[i].at_least_pow2(d, limits);
    if (!ok) {
      rep.fail("a_next_ge_2_pow_d", static_cast<long>(i), "comparison with " + q[i].describe() + " undecided");
      continue;
    }
    rep.check("a_next_ge_2_pow_d", static_cast<long>(i), BigReal(*ok ? 1 : 0, ctx), BigReal(1, ctx),
              std::nullopt);
    rep.notes.push_back("i = " + std::to_string(i) + ": a_" + std::to_string(i + 1) + " = " + q[i].describe() +
                        ", d_" + std::to_string(i) + " has " +
                        std::to_string(mpz_sizeinbase(d.get_mpz_t(), 2)) + " bits");
  }
  return rep;
}

int ten_limit_target(std::size_t n) {
  static constexpr std::array<int, 12> W = {6, 7, 8, 9, 10, 2, 3, 4, 5, 1, 8, 7};
  if (n == 0) throw PreconditionViolation("ten-limit positions start at 1");
  std::size_t r = n % 12;
  return W[(r == 0 ? 12 : r) - 1];
}

TraceReport ten_limits_trace(const cfrac::PartialQuotientStream& s, std::size_t levels,
                             const cfrac::Limits& limits) {
  TraceReport rep;
  rep.id = "ten-limits";
  PrecisionContext small;

  cfrac::ModPattern pat = cfrac::mod_convergents(s, 5, 4096, limits);
  std::set<int> covered;
  for (std::size_t n = 1; n <= 12; ++n) {
    cfrac::ResiduePair r = residue_at(pat, n);
    int want = ten_limit_target(n);
    try {
      int got = schur::catalog_index_for_residues(static_cast<long>(r.c), static_cast<long>(r.d));
      rep.check("period_target", static_cast<long>(n), BigReal(got, small), BigReal(want, small),
                BigReal(want, small));
      covered.insert(got);
    } catch (const PreconditionViolation&) {
      rep.fail("period_target", static_cast<long>(n), "denominator residue 0 mod 5");
    }
  }
  rep.check("period_coverage", 12, BigReal(static_cast<long>(covered.size()), small), BigReal(10, small),
            BigReal(10, small));

  LevelData ld = level_data(s, levels, limits, cfrac::CapPolicy::Stop);
  const std::size_t reach = ld.reachable;
  rep.reachable_levels = static_cast<long>(reach);
  if (reach < levels)
    rep.notes.push_back("levels above " + std::to_string(reach) + " need partial quotients beyond the cap");
  if (reach == 0) {
    rep.fail("reachable", 0, "no level is materializable");
    return rep;
  }
  const auto& cv = ld.convergents;
  unsigned long dmax = small_index(cv[reach].d, "d_L");
  unsigned long kmax = dmax * dmax + dmax - 1;
  PrecisionContext ctx = detail::recurrence_context(static_cast<double>(kmax));
  rep.notes.push_back("precision " + std::to_string(ctx.bits) + " bits");

  Point y = unit_point(mpq_class(cv[reach + 1].c, cv[reach + 1].d), ctx);
  BigComplex root = fifth_root(y);
  ConvergentPair sy(y), hy(with_precision(y, ctx.doubled()));
  for (std::size_t n = 1; n <= reach; ++n) {
    const long ln = static_cast<long>(n);
    unsigned long d = cv[n].d.get_ui();
    unsigned long k = d * d + d - 1;
    sy.advance_to(k);
    hy.advance_to(k);
    detail::require_agree(sy.P(), hy.P(), ctx, "ten-limit recurrence");
    detail::require_agree(sy.Q(), hy.Q(), ctx, "ten-limit recurrence");
    detail::require_agree(sy.P_prev(), hy.P_prev(), ctx, "ten-limit recurrence");
    detail::require_agree(sy.Q_prev(), hy.Q_prev(), ctx, "ten-limit recurrence");

    int wj = ten_limit_target(n);
    BigComplex W = schur::r_catalog(wj, ctx);
    BigReal env = BigReal(500, ctx) * phi_pow(-2 * static_cast<long>(d), ctx);
    rep.check("R_k1_to_W", ln, distance(root * sy.Q() / sy.P(), W), std::nullopt, env);
    rep.check("R_k2_to_W", ln, distance(root * sy.Q_prev() / sy.P_prev(), W), std::nullopt, env);

    PrecisionContext cx;
    schur::RootOfUnity xr(cv[n].c.get_si(), static_cast<long>(d));
    BigComplex Rx = fifth_root(unit_point(mpq_class(cv[n].c, cv[n].d), cx)) / schur::schur_eval(xr, cx).K;
    rep.check("R_x_n_to_W", ln, distance(Rx, schur::r_catalog(wj, cx)), std::nullopt,
              BigReal::from_string("1e-10", cx));
  }
  return rep;
}

ProbeOutcome general_divergence_probe(const cfrac::PartialQuotientStream& s, const ProbeOptions& opt,
                                      const cfrac::Limits& limits) {
  ProbeOutcome out;
  TraceReport& rep = out.report;
  rep.id = "general-probe";
  LevelData ld = level_data(s, opt.levels, limits, cfrac::CapPolicy::Stop);
  const std::size_t reach = ld.reachable;
  rep.reachable_levels = static_cast<long>(reach);
  if (reach < 2) throw CapExceeded("general_divergence_probe needs two reachable levels");
  const auto& cv = ld.convergents;
  unsigned long dL = small_index(cv[reach].d, "d_L");
  unsigned long kmax = dL * dL + dL - 1;
  PrecisionContext ctx = detail::recurrence_context(static_cast<double>(kmax));
  rep.notes.push_back("precision " + std::to_string(ctx.bits) + " bits");

  Point y = unit_point(mpq_class(cv[reach + 1].c, cv[reach + 1].d), ctx);
  BigComplex root = fifth_root(y);
  BigReal phi2 = phi_pow(2, ctx), inv_phi2 = phi_pow(-2, ctx);

  std::vector<int> level_index(reach + 1, 0);
  ConvergentPair sy = ConvergentPair(y);
  for (std::size_t n = 1; n <= reach; ++n) {
    const long ln = static_cast<long>(n);
    unsigned long d = cv[n].d.get_ui();
    sy.advance_to(d * d + d - 1);
    Nearest r1 = nearest_catalog(root * sy.Q() / sy.P());
    Nearest r2 = nearest_catalog(root * sy.Q_prev() / sy.P_prev());
    level_index[n] = r1.j;
    rep.info("R_index", ln, BigReal(r1.j, ctx));
    rep.info("R_index_prev", ln, BigReal(r2.j, ctx));
    BigReal ratio = (sy.Q() / sy.Q_prev()).abs();
    if (d < 2) {
      rep.info("Q_ratio", ln, ratio);
      continue;
    }
    BigReal eps = phi_pow(-static_cast<long>(d), ctx);
    BigReal delta = eps * (phi2 + 1) / (phi_pow(static_cast<long>(d) - 2, ctx) - eps);
    rep.check("Q_ratio", ln, ratio, inv_phi2 - delta, phi2 + delta);
  }

  out.a = level_index[reach];
  for (std::size_t n = reach; n-- > 1;)
    if (level_index[n] != out.a) {
      out.b = level_index[n];
      break;
    }
  if (out.b == 0) {
    rep.fail("distinct_limits", static_cast<long>(reach), "every reachable level lands on the same catalog value");
    out.verdict = "inconclusive";
    return out;
  }
  rep.check("limit_separation", out.b, distance(schur::r_catalog(out.a, ctx), schur::r_catalog(out.b, ctx)),
            BigReal::from_string("0.1", ctx), std::nullopt);

  // Candidates targeting the other limit g: S_n(w_n) = g and S_n(v_n) = g + 1/q.
  BigComplex g = root / schur::r_catalog(out.b, ctx);
  ConvergentPair ladder(y);
  for (long q = opt.from_q; q <= static_cast<long>(dL); ++q) {
    auto n = static_cast<std::size_t>(q * static_cast<long>(dL) + static_cast<long>(dL) - 1);
    ladder.advance_to(n);
    const BigComplex& P = ladder.P();
    const BigComplex& Q = ladder.Q();
    const BigComplex& Pp = ladder.P_prev();
    const BigComplex& Qp = ladder.Q_prev();
    BigComplex gv = g + BigComplex(BigReal(1, ctx) / BigReal(q, ctx), BigReal(ctx));
    BigComplex w = (g * Q - P) / (Pp - g * Qp);
    BigComplex v = (gv * Q - P) / (Pp - gv * Qp);
    BigComplex h = Q / Qp;
    out.indices.push_back(static_cast<long>(n));
    out.w_sums.push_back((w + h).abs());
    out.v_sums.push_back((v + h).abs());
    out.distances.push_back(chordal_distance(v, w, ctx));
  }
  auto decreasing = [](const std::vector<BigReal>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (compare(xs[i], xs[i - 1]) >= 0) return false;
    return !xs.empty();
  };
  bool mono = decreasing(out.w_sums) && decreasing(out.v_sums) && decreasing(out.distances);
  rep.check("ladder_monotone", static_cast<long>(out.indices.size()), BigReal(mono ? 1 : 0, ctx), BigReal(1, ctx),
            std::nullopt);
  out.verdict = (mono && rep.all_pass()) ? "general-divergence-consistent" : "inconclusive";
  return out;
}

}  // namespace rrlab::verify
