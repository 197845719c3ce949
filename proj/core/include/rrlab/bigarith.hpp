#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace rrlab {

// Working precision for a computation. Results are trusted to
// bits - guard_bits bits; the guard is what the doubling re-check may eat.
struct PrecisionContext {
  long bits = 256;
  long guard_bits = 32;

  PrecisionContext() = default;
  PrecisionContext(long b, long g);

  void validate() const;
  long trusted_bits() const { return bits - guard_bits; }
  PrecisionContext doubled() const;
  PrecisionContext widened(long extra_bits) const;

  bool operator==(const PrecisionContext&) const = default;
};

class BigReal {
 public:
  explicit BigReal(const PrecisionContext& ctx = {});
  BigReal(long v, const PrecisionContext& ctx);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal from_double(double v, const PrecisionContext& ctx);
  static BigReal from_mpz(const mpz_class& v, const PrecisionContext& ctx);
  static BigReal from_mpq(const mpq_class& v, const PrecisionContext& ctx);
  // Accepts decimal/scientific notation, or "p/q" rationals.
  static BigReal from_string(const std::string& s, const PrecisionContext& ctx);

  const PrecisionContext& ctx() const { return ctx_; }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // Re-round to another precision (value kept when widening).
  BigReal at(const PrecisionContext& ctx) const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);
  BigReal operator-() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent2() const;  // floor(log2|x|) + 1, or LONG_MIN for zero
  mpz_class floor_mpz() const;
  mpz_class ceil_mpz() const;

  // Scientific decimal. digits == 0 means enough digits to round-trip exactly.
  std::string to_string(std::size_t digits = 0) const;
  static std::size_t roundtrip_digits(long bits);

  friend void swap(BigReal& a, BigReal& b) noexcept {
    mpfr_swap(a.v_, b.v_);
    std::swap(a.ctx_, b.ctx_);
  }

  friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::strong_ordering operator<=>(const BigReal& a, const BigReal& b) {
    return compare(a, b) <=> 0;
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::strong_ordering operator<=>(const BigReal& a, long b) {
    return mpfr_cmp_si(a.v_, b) <=> 0;
  }

 private:
  void check(const char* op) const;

  mpfr_t v_;
  PrecisionContext ctx_;
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator+(const BigReal& a, long b);
BigReal operator-(const BigReal& a, long b);
BigReal operator*(const BigReal& a, long b);
BigReal operator/(const BigReal& a, long b);
BigReal operator*(long a, const BigReal& b);
BigReal operator/(long a, const BigReal& b);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow(const BigReal& x, long k);
BigReal mul_2exp(const BigReal& x, long k);  // x * 2^k, exact
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

BigReal const_pi(const PrecisionContext& ctx);
BigReal golden_ratio(const PrecisionContext& ctx);
BigReal two_pow(long k, const PrecisionContext& ctx);

// 2^-(bits - guard_bits): the agreement threshold of the doubling contract.
BigReal tolerance(const PrecisionContext& ctx);

// |a - b| <= tolerance(ctx) * max(1, |a|, |b|)
bool agree(const BigReal& a, const BigReal& b, const PrecisionContext& ctx);

class BigComplex {
 public:
  explicit BigComplex(const PrecisionContext& ctx = {});
  BigComplex(long re, const PrecisionContext& ctx);
  BigComplex(BigReal re, BigReal im);

  const PrecisionContext& ctx() const { return re_.ctx(); }
  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }

  BigComplex at(const PrecisionContext& ctx) const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigReal& o);
  BigComplex& operator*=(long o);
  BigComplex operator-() const;

  BigReal abs() const;
  BigReal norm() const;  // |z|^2
  BigComplex conj() const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::string to_string(std::size_t digits = 0) const;

  friend void swap(BigComplex& a, BigComplex& b) noexcept {
    swap(a.re_, b.re_);
    swap(a.im_, b.im_);
  }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigReal& b);
BigComplex operator/(const BigComplex& a, const BigReal& b);
BigComplex operator+(const BigComplex& a, long b);
BigComplex operator-(long a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, long b);
BigComplex operator/(long a, const BigComplex& b);

// Integer power by squaring; negative exponents invert.
BigComplex ipow(const BigComplex& x, long e);

// exp(2 pi i t) for real t, no checks.
BigComplex cis_turns(const BigReal& t);

BigReal distance(const BigComplex& a, const BigComplex& b);
bool agree(const BigComplex& a, const BigComplex& b, const PrecisionContext& ctx);

struct Infinity {};

class ExtendedComplex {
 public:
  ExtendedComplex(BigComplex z) : v_(std::move(z)) {}
  static ExtendedComplex infinity() { return ExtendedComplex(Infinity{}); }

  bool is_infinite() const { return std::holds_alternative<Infinity>(v_); }
  const BigComplex& value() const;

  std::string to_string(std::size_t digits = 0) const;

 private:
  explicit ExtendedComplex(Infinity i) : v_(i) {}
  std::variant<BigComplex, Infinity> v_;
};

BigReal chordal_distance(const ExtendedComplex& w, const ExtendedComplex& z,
                         const PrecisionContext& ctx);

// An angle in turns. Exact when it came from a rational.
using Angle = std::variant<mpq_class, BigReal>;

BigReal angle_value(const Angle& a, const PrecisionContext& ctx);
std::string angle_to_string(const Angle& a);

struct Point {
  BigComplex value;
  std::optional<Angle> angle;

  const PrecisionContext& ctx() const { return value.ctx(); }
};

// exp(2 pi i t). The angle is carried as given (not reduced mod 1) because it
// fixes the branch of the fifth root.
Point unit_point(const mpq_class& t, const PrecisionContext& ctx);
Point unit_point(const BigReal& t, const PrecisionContext& ctx);

// A point off the circle, no angle attached.
Point plain_point(BigComplex z);

// The same point at another precision; circle points are re-evaluated from
// their angle, plain points are re-rounded.
Point with_precision(const Point& x, const PrecisionContext& ctx);

// exp(2 pi i theta / 5) for x built as exp(2 pi i theta).
BigComplex fifth_root(const Point& x);

// (phi^k, phibar^k)
std::pair<BigReal, BigReal> golden_powers(long k, const PrecisionContext& ctx,
                                          long cap = 1L << 26);

}  // namespace rrlab
