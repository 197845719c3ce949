#include <cmath>

#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"

namespace rrlab::cfrac {

namespace {

constexpr double kLog2Phi = 0.69424191363061730173;

// a >= phi^d, decided with integers only: phi^d = (L_d + F_d sqrt5) / 2.
bool at_least_phi_pow(const mpz_class& a, unsigned long d) {
  mpz_class lhs = 2 * a - lucas(d);
  if (lhs < 0) return false;
  mpz_class f = fibonacci(d);
  return lhs * lhs >= 5 * f * f;
}

void round_up_from_string(mpfr_ptr out, const std::string& s) {
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ConfigInvalid("bad rational '" + s + "'");
    q.canonicalize();
    mpfr_set_q(out, q.get_mpq_t(), MPFR_RNDU);
    return;
  }
  char* end = nullptr;
  mpfr_strtofr(out, s.c_str(), &end, 10, MPFR_RNDU);
  if (s.empty() || end == s.c_str() || *end != '\0' || !mpfr_number_p(out))
    throw ConfigInvalid("bad number '" + s + "'");
}

void phi_up(mpfr_ptr out) {
  mpfr_sqrt_ui(out, 5, MPFR_RNDU);
  mpfr_add_ui(out, out, 1, MPFR_RNDU);
  mpfr_div_2ui(out, out, 1, MPFR_RNDU);
}

}  // namespace

mpz_class threshold_ceiling(const GrowthRule& g, const mpz_class& d, const Limits& limits, std::string* upper_repr) {
  if (d < 1) throw PreconditionViolation("threshold needs d >= 1");
  double est = 0;
  std::size_t dbits = mpz_sizeinbase(d.get_mpz_t(), 2);
  switch (g.kind) {
    case Growth::Golden:
      est = dbits > 40 ? INFINITY : d.get_d() * kLog2Phi;
      break;
    case Growth::Diamond: {
      double dd = d.get_d();
      est = dbits > 24 ? INFINITY : (dd * dd + 2 * dd) * kLog2Phi + 2 * std::log2(dd + 1) + 3;
      break;
    }
    case Growth::Constant:
      break;
  }
  if (est > static_cast<double>(limits.max_bits)) {
    std::string dname = dbits > 64 ? "a " + std::to_string(dbits) + "-bit d" : "d = " + d.get_str();
    throw CapExceeded("threshold for " + dname + " exceeds the representability cap");
  }

  if (g.kind == Growth::Golden && (g.value.empty() || g.value == "1")) {
    unsigned long du = d.get_ui();
    mpz_class c = lucas(du);
    if (du % 2 == 1) c += 1;
    if (upper_repr) *upper_repr = "phi^" + d.get_str();
    return c;
  }

  mpfr_prec_t prec = static_cast<mpfr_prec_t>(est) + 96;
  mpfr_t u, t;
  mpfr_init2(u, prec);
  mpfr_init2(t, prec);
  mpz_class result;
  switch (g.kind) {
    case Growth::Golden:
      phi_up(u);
      mpfr_pow_z(u, u, d.get_mpz_t(), MPFR_RNDU);
      round_up_from_string(t, g.value);
      if (mpfr_sgn(t) <= 0) throw ConfigInvalid("kappa must be positive");
      mpfr_mul(u, u, t, MPFR_RNDU);
      mpfr_get_z(result.get_mpz_t(), u, MPFR_RNDU);
      break;
    case Growth::Diamond: {
      mpz_class e = d * d + 2 * d;
      phi_up(u);
      mpfr_pow_z(u, u, e.get_mpz_t(), MPFR_RNDU);
      mpz_class sq = (d + 1) * (d + 1);
      mpfr_mul_z(u, u, sq.get_mpz_t(), MPFR_RNDU);
      mpfr_const_pi(t, MPFR_RNDU);
      mpfr_mul(u, u, t, MPFR_RNDU);
      mpfr_mul_2ui(u, u, 1, MPFR_RNDU);
      // strict: a_{i+1} must exceed the threshold
      mpfr_get_z(result.get_mpz_t(), u, MPFR_RNDD);
      result += 1;
      break;
    }
    case Growth::Constant:
      round_up_from_string(u, g.value.empty() ? "1" : g.value);
      mpfr_get_z(result.get_mpz_t(), u, MPFR_RNDU);
      if (result < 1) result = 1;
      break;
  }
  if (upper_repr) {
    BigReal r(PrecisionContext(std::max<long>(prec, 64), 32));
    mpfr_set(r.raw(), u, MPFR_RNDU);
    *upper_repr = r.to_string(40);
  }
  mpfr_clear(u);
  mpfr_clear(t);
  return result;
}

SPoint build_S_point(const PartialQuotientStream& rule, std::size_t levels, const Limits& limits, CapPolicy policy) {
  if (!rule.is_generator()) throw PreconditionViolation("build_S_point needs an S-minimal, S-diamond or S-prime rule");
  SPoint out{rule, {}, {}, {}, false};
  const auto& residues = rule.residues();

  mpz_class a1;
  if (rule.first()) {
    a1 = *rule.first();
  } else if (residues) {
    int r = residues->at(1);
    a1 = r == 0 ? 5 : r;
  } else {
    a1 = 1;
  }
  if (residues) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a1.get_mpz_t(), 5);
    if (r != residues->at(1)) throw PreconditionViolation("first partial quotient violates the residue pattern");
  }
  out.terms.push_back(a1);
  out.convergents = convergents(out.terms);

  for (std::size_t level = 1; level <= levels; ++level) {
    const mpz_class& d = out.convergents[level].d;
    SetSCertificate cert;
    cert.level = level;
    cert.d = d;
    cert.kind = rule.growth().kind;
    try {
      cert.threshold_ceiling = threshold_ceiling(rule.growth(), d, limits, &cert.threshold_upper);
    } catch (const CapExceeded&) {
      if (policy == CapPolicy::Throw) throw;
      out.capped = true;
      break;
    }
    mpz_class a = cert.threshold_ceiling;
    if (residues) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), 5);
      long want = residues->at(level + 1);
      long k = (want - static_cast<long>(r.get_si()) + 5) % 5;
      a += k;
    }
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > limits.max_bits) {
      if (policy == CapPolicy::Throw) throw CapExceeded("a_" + std::to_string(level + 1) + " exceeds the representability cap");
      out.capped = true;
      break;
    }
    cert.next_quotient = a;
    cert.verified = a >= cert.threshold_ceiling;
    if (cert.kind == Growth::Golden && (rule.growth().value.empty() || rule.growth().value == "1"))
      cert.verified = cert.verified && at_least_phi_pow(a, d.get_ui());
    out.certificates.push_back(cert);
    out.terms.push_back(a);
    const Convergent& prev = out.convergents[level - 1];
    const Convergent& cur = out.convergents[level];
    out.convergents.push_back({level + 1, a * cur.c + prev.c, a * cur.d + prev.d});
  }
  return out;
}

}  // namespace rrlab::cfrac
