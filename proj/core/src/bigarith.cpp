#include "rrlab/bigarith.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <memory>

#include "rrlab/errors.hpp"

namespace rrlab {

namespace {

constexpr long kInternalGuard = 32;

const PrecisionContext& wider(const PrecisionContext& a, const PrecisionContext& b) {
  return a.bits >= b.bits ? a : b;
}

}  // namespace

PrecisionContext::PrecisionContext(long b, long g) : bits(b), guard_bits(g) { validate(); }

void PrecisionContext::validate() const {
  if (bits < 64) throw PreconditionViolation("precision must be at least 64 bits");
  if (guard_bits <= 0 || guard_bits >= bits)
    throw PreconditionViolation("guard_bits must be positive and below bits");
}

PrecisionContext PrecisionContext::doubled() const { return {2 * bits, guard_bits}; }

PrecisionContext PrecisionContext::widened(long extra_bits) const {
  return {bits + extra_bits, guard_bits};
}

BigReal::BigReal(const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(v_, ctx_.bits);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long v, const PrecisionContext& ctx) : ctx_(ctx) {
  mpfr_init2(v_, ctx_.bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) : ctx_(other.ctx_) {
  mpfr_init2(v_, ctx_.bits);
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : ctx_(other.ctx_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    if (ctx_.bits != other.ctx_.bits) mpfr_set_prec(v_, other.ctx_.bits);
    ctx_ = other.ctx_;
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  std::swap(ctx_, other.ctx_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_double(double v, const PrecisionContext& ctx) {
  BigReal r(ctx);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  r.check("from_double");
  return r;
}

BigReal BigReal::from_mpz(const mpz_class& v, const PrecisionContext& ctx) {
  BigReal r(ctx);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::from_mpq(const mpq_class& v, const PrecisionContext& ctx) {
  BigReal r(ctx);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::from_string(const std::string& s, const PrecisionContext& ctx) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
      throw PreconditionViolation("not a rational number: '" + s + "'");
    q.canonicalize();
    return from_mpq(q, ctx);
  }
  if (s.empty()) throw PreconditionViolation("empty number");
  BigReal r(ctx);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0')
    throw PreconditionViolation("not a decimal number: '" + s + "'");
  r.check("from_string");
  return r;
}

BigReal BigReal::at(const PrecisionContext& ctx) const {
  BigReal r(ctx);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void BigReal::check(const char* op) const {
  if (!mpfr_number_p(v_)) throw PreconditionViolation(std::string("non-finite result in ") + op);
}

#define RRLAB_INPLACE(OP, FN, FNSI)                                   \
  BigReal& BigReal::operator OP(const BigReal& o) {                   \
    if (o.ctx_.bits > ctx_.bits) {                                    \
      mpfr_prec_round(v_, o.ctx_.bits, MPFR_RNDN);                    \
      ctx_ = o.ctx_;                                                  \
    }                                                                 \
    FN(v_, v_, o.v_, MPFR_RNDN);                                      \
    check(#OP);                                                       \
    return *this;                                                     \
  }                                                                   \
  BigReal& BigReal::operator OP(long o) {                             \
    FNSI(v_, v_, o, MPFR_RNDN);                                       \
    check(#OP);                                                       \
    return *this;                                                     \
  }

RRLAB_INPLACE(+=, mpfr_add, mpfr_add_si)
RRLAB_INPLACE(-=, mpfr_sub, mpfr_sub_si)
RRLAB_INPLACE(*=, mpfr_mul, mpfr_mul_si)
#undef RRLAB_INPLACE

BigReal& BigReal::operator/=(const BigReal& o) {
  if (o.is_zero()) throw PreconditionViolation("division by zero");
  if (o.ctx_.bits > ctx_.bits) {
    mpfr_prec_round(v_, o.ctx_.bits, MPFR_RNDN);
    ctx_ = o.ctx_;
  }
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  check("/=");
  return *this;
}

BigReal& BigReal::operator/=(long o) {
  if (o == 0) throw PreconditionViolation("division by zero");
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(ctx_);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

long BigReal::exponent2() const {
  if (is_zero()) return LONG_MIN;
  return mpfr_get_exp(v_);
}

mpz_class BigReal::floor_mpz() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

mpz_class BigReal::ceil_mpz() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
  return z;
}

std::size_t BigReal::roundtrip_digits(long bits) {
  return mpfr_get_str_ndigits(10, static_cast<mpfr_prec_t>(bits));
}

std::string BigReal::to_string(std::size_t digits) const {
  if (is_zero()) return mpfr_signbit(v_) ? "-0" : "0";
  if (digits == 0) digits = roundtrip_digits(ctx_.bits);
  mpfr_exp_t e = 0;
  std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN),
                                             mpfr_free_str);
  std::string m(raw.get());
  std::string out;
  std::size_t i = 0;
  if (m[0] == '-') {
    out.push_back('-');
    i = 1;
  }
  out.push_back(m[i]);
  if (i + 1 < m.size()) {
    out.push_back('.');
    out.append(m, i + 1, std::string::npos);
  }
  out.push_back('e');
  out += std::to_string(static_cast<long>(e) - 1);
  return out;
}

#define RRLAB_BINARY(OP, FN)                                   \
  BigReal operator OP(const BigReal& a, const BigReal& b) {    \
    BigReal r(wider(a.ctx(), b.ctx()));                        \
    FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                  \
    if (!mpfr_number_p(r.raw()))                               \
      throw PreconditionViolation("non-finite result in " #OP); \
    return r;                                                  \
  }

RRLAB_BINARY(+, mpfr_add)
RRLAB_BINARY(-, mpfr_sub)
RRLAB_BINARY(*, mpfr_mul)
#undef RRLAB_BINARY

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r = a.at(wider(a.ctx(), b.ctx()));
  r /= b;
  return r;
}

BigReal operator+(const BigReal& a, long b) { BigReal r(a); r += b; return r; }
BigReal operator-(const BigReal& a, long b) { BigReal r(a); r -= b; return r; }
BigReal operator*(const BigReal& a, long b) { BigReal r(a); r *= b; return r; }
BigReal operator/(const BigReal& a, long b) { BigReal r(a); r /= b; return r; }
BigReal operator*(long a, const BigReal& b) { return b * a; }

BigReal operator/(long a, const BigReal& b) {
  if (b.is_zero()) throw PreconditionViolation("division by zero");
  BigReal r(b.ctx());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x.ctx());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw PreconditionViolation("sqrt of a negative number");
  BigReal r(x.ctx());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.ctx());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  if (!mpfr_number_p(r.raw())) throw PreconditionViolation("exp overflow");
  return r;
}

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw PreconditionViolation("log of a non-positive number");
  BigReal r(x.ctx());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long k) {
  if (x.is_zero() && k < 0) throw PreconditionViolation("negative power of zero");
  BigReal r(x.ctx());
  mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
  if (!mpfr_number_p(r.raw())) throw PreconditionViolation("pow overflow");
  return r;
}

BigReal mul_2exp(const BigReal& x, long k) {
  BigReal r(x.ctx());
  mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0 ? a : b; }
BigReal min(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0 ? a : b; }

BigReal const_pi(const PrecisionContext& ctx) {
  BigReal r(ctx);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal golden_ratio(const PrecisionContext& ctx) {
  BigReal r(ctx.widened(kInternalGuard));
  mpfr_sqrt_ui(r.raw(), 5, MPFR_RNDN);
  r += 1;
  return mul_2exp(r, -1).at(ctx);
}

BigReal two_pow(long k, const PrecisionContext& ctx) {
  BigReal r(1, ctx);
  mpfr_mul_2si(r.raw(), r.raw(), k, MPFR_RNDN);
  return r;
}

BigReal tolerance(const PrecisionContext& ctx) { return two_pow(-ctx.trusted_bits(), ctx); }

bool agree(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
  BigReal scale = max(BigReal(1, ctx), max(abs(a), abs(b)));
  return compare(abs(a - b), tolerance(ctx) * scale) <= 0;
}

BigComplex::BigComplex(const PrecisionContext& ctx) : re_(ctx), im_(ctx) {}
BigComplex::BigComplex(long re, const PrecisionContext& ctx) : re_(re, ctx), im_(ctx) {}

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.ctx().bits != im_.ctx().bits) {
    const PrecisionContext& c = wider(re_.ctx(), im_.ctx());
    re_ = re_.at(c);
    im_ = im_.at(c);
  }
}

BigComplex BigComplex::at(const PrecisionContext& ctx) const { return {re_.at(ctx), im_.at(ctx)}; }

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigReal ac = re_ * o.re_;
  BigReal bd = im_ * o.im_;
  BigReal ad = re_ * o.im_;
  im_ *= o.re_;
  im_ += ad;
  re_ = std::move(ac);
  re_ -= bd;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigReal den = o.norm();
  if (den.is_zero()) throw PreconditionViolation("complex division by zero");
  BigReal nr = re_ * o.re_ + im_ * o.im_;
  BigReal ni = im_ * o.re_ - re_ * o.im_;
  re_ = nr / den;
  im_ = ni / den;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

BigComplex& BigComplex::operator*=(long o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

BigComplex BigComplex::operator-() const { return {-re_, -im_}; }

BigReal BigComplex::abs() const {
  BigReal r(ctx());
  mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
  return r;
}

BigReal BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigComplex BigComplex::conj() const { return {re_, -im_}; }

std::string BigComplex::to_string(std::size_t digits) const {
  return re_.to_string(digits) + (im_.sign() < 0 || mpfr_signbit(im_.raw()) ? " - " : " + ") +
         rrlab::abs(im_).to_string(digits) + "i";
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { BigComplex r(a); r += b; return r; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { BigComplex r(a); r -= b; return r; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) { BigComplex r(a); r *= b; return r; }
BigComplex operator/(const BigComplex& a, const BigComplex& b) { BigComplex r(a); r /= b; return r; }
BigComplex operator*(const BigComplex& a, const BigReal& b) { BigComplex r(a); r *= b; return r; }
BigComplex operator/(const BigComplex& a, const BigReal& b) { return {a.re() / b, a.im() / b}; }
BigComplex operator+(const BigComplex& a, long b) { return {a.re() + b, a.im()}; }
BigComplex operator-(long a, const BigComplex& b) { return {BigReal(a, b.ctx()) - b.re(), -b.im()}; }
BigComplex operator*(const BigComplex& a, long b) { BigComplex r(a); r *= b; return r; }
BigComplex operator/(long a, const BigComplex& b) { return BigComplex(a, b.ctx()) / b; }

BigComplex ipow(const BigComplex& x, long e) {
  BigComplex base = e < 0 ? BigComplex(1, x.ctx()) / x : x;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
  BigComplex result(1, x.ctx());
  while (n) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

BigComplex cis_turns(const BigReal& t) {
  PrecisionContext work = t.ctx().widened(kInternalGuard);
  BigReal frac(work);
  mpfr_frac(frac.raw(), t.raw(), MPFR_RNDN);
  BigReal arg = const_pi(work) * frac;
  arg *= 2;
  BigReal s(work), c(work);
  mpfr_sin_cos(s.raw(), c.raw(), arg.raw(), MPFR_RNDN);
  return {c.at(t.ctx()), s.at(t.ctx())};
}

BigReal distance(const BigComplex& a, const BigComplex& b) { return (a - b).abs(); }

bool agree(const BigComplex& a, const BigComplex& b, const PrecisionContext& ctx) {
  BigReal scale = max(BigReal(1, ctx), max(a.abs(), b.abs()));
  return compare(distance(a, b), tolerance(ctx) * scale) <= 0;
}

const BigComplex& ExtendedComplex::value() const {
  if (is_infinite()) throw PreconditionViolation("value() of the point at infinity");
  return std::get<BigComplex>(v_);
}

std::string ExtendedComplex::to_string(std::size_t digits) const {
  return is_infinite() ? "inf" : value().to_string(digits);
}

BigReal chordal_distance(const ExtendedComplex& w, const ExtendedComplex& z,
                         const PrecisionContext& ctx) {
  if (w.is_infinite() && z.is_infinite()) return BigReal(ctx);
  BigReal one(1, ctx);
  if (w.is_infinite() || z.is_infinite()) {
    const BigComplex& f = w.is_infinite() ? z.value() : w.value();
    return one / sqrt(one + f.at(ctx).norm());
  }
  BigComplex a = w.value().at(ctx), b = z.value().at(ctx);
  BigReal d = distance(a, b) / (sqrt(one + a.norm()) * sqrt(one + b.norm()));
  return compare(d, one) > 0 ? one : d;
}

BigReal angle_value(const Angle& a, const PrecisionContext& ctx) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return BigReal::from_mpq(*q, ctx);
  return std::get<BigReal>(a).at(ctx);
}

std::string angle_to_string(const Angle& a) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return q->get_str();
  return std::get<BigReal>(a).to_string();
}

namespace {

BigComplex exact_quarter(const mpq_class& frac, const PrecisionContext& ctx) {
  mpq_class four = frac * 4;
  long k = four.get_num().get_si();
  switch (k) {
    case 0: return BigComplex(1, ctx);
    case 1: return {BigReal(ctx), BigReal(1, ctx)};
    case 2: return BigComplex(-1, ctx);
    default: return {BigReal(ctx), BigReal(-1, ctx)};
  }
}

BigComplex checked_cis(const BigReal& t_reduced, const PrecisionContext& ctx) {
  BigComplex z = cis_turns(t_reduced.at(ctx));
  BigComplex z2 = cis_turns(t_reduced.at(ctx.doubled()));
  if (!agree(z, z2.at(ctx), ctx))
    throw PrecisionTooLow("unit_point doubling check disagrees beyond guard bits");
  if (compare(abs(z.abs() - 1), tolerance(ctx)) > 0)
    throw PrecisionTooLow("unit_point modulus drifted from 1");
  return z;
}

}  // namespace

Point unit_point(const mpq_class& t, const PrecisionContext& ctx) {
  ctx.validate();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  mpq_class frac = t - mpq_class(fl);
  mpq_class four = frac * 4;
  four.canonicalize();
  if (four.get_den() == 1) return {exact_quarter(frac, ctx), Angle(t)};
  PrecisionContext hi = ctx.doubled().widened(kInternalGuard);
  return {checked_cis(BigReal::from_mpq(frac, hi), ctx), Angle(t)};
}

Point unit_point(const BigReal& t, const PrecisionContext& ctx) {
  ctx.validate();
  BigReal frac(PrecisionContext(std::max(t.ctx().bits, 64L), t.ctx().guard_bits));
  mpfr_frac(frac.raw(), t.raw(), MPFR_RNDN);
  return {checked_cis(frac, ctx), Angle(t)};
}

Point plain_point(BigComplex z) { return {std::move(z), std::nullopt}; }

Point with_precision(const Point& x, const PrecisionContext& ctx) {
  if (!x.angle) return plain_point(x.value.at(ctx));
  if (const auto* q = std::get_if<mpq_class>(&*x.angle)) return unit_point(*q, ctx);
  return unit_point(std::get<BigReal>(*x.angle), ctx);
}

BigComplex fifth_root(const Point& x) {
  if (!x.angle) throw MissingAngle("fifth_root needs the angle the point was built from");
  const PrecisionContext& ctx = x.ctx();
  if (const auto* q = std::get_if<mpq_class>(&*x.angle)) {
    mpq_class t = *q / 5;
    mpq_class four = t * 4;
    four.canonicalize();
    if (four.get_den() == 1) return unit_point(t, ctx).value;
    return cis_turns(BigReal::from_mpq(t, ctx.widened(kInternalGuard))).at(ctx);
  }
  BigReal t = std::get<BigReal>(*x.angle).at(ctx.widened(kInternalGuard));
  t /= 5;
  return cis_turns(t).at(ctx);
}

std::pair<BigReal, BigReal> golden_powers(long k, const PrecisionContext& ctx, long cap) {
  ctx.validate();
  if (k > cap || k < -cap) throw CapExceeded("golden_powers exponent beyond configured cap");
  auto compute = [k](const PrecisionContext& c) {
    BigReal phi = golden_ratio(c.widened(64));
    BigReal pk = pow(phi, k);
    BigReal bar = BigReal(1, pk.ctx()) / pk;
    if (k % 2 != 0) bar = -bar;
    return std::pair{pk.at(c), bar.at(c)};
  };
  auto lo = compute(ctx);
  auto hi = compute(ctx.doubled());
  if (!agree(lo.first, hi.first.at(ctx), ctx) || !agree(lo.second, hi.second.at(ctx), ctx))
    throw PrecisionTooLow("golden_powers doubling check disagrees");
  return lo;
}

}  // namespace rrlab
