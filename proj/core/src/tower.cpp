#include <limits>

#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"

namespace rrlab::cfrac {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

constexpr u64 kSaturate = 1ULL << 62;

u64 totient(u64 m) {
  u64 result = m;
  u64 n = m;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

u64 powmod(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
    b = static_cast<u64>(static_cast<u128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

// Exact tower value when it stays below 2^62.
std::optional<u64> small_tower(u64 base, u64 height, u64 top) {
  if (height == 0) return top < kSaturate ? std::optional<u64>(top) : std::nullopt;
  if (base <= 1) return base;
  auto e = small_tower(base, height - 1, top);
  if (!e) return std::nullopt;
  u128 acc = 1;
  for (u64 i = 0; i < *e; ++i) {
    acc *= base;
    if (acc >= kSaturate) return std::nullopt;
  }
  return static_cast<u64>(acc);
}

u64 floor_log2(u64 v) { return 63 - static_cast<u64>(__builtin_clzll(v)); }

}  // namespace

u64 tower_mod(u64 base, u64 height, u64 top, u64 m) {
  if (m < 1) throw PreconditionViolation("tower_mod modulus must be positive");
  if (m == 1) return 0;
  if (height == 0) return top % m;
  if (auto e = small_tower(base, height - 1, top)) return powmod(base, *e, m);
  // The exponent is at least 2^62, far beyond log2(m), so
  // b^E = b^((E mod phi(m)) + phi(m)) (mod m).
  u64 ph = totient(m);
  u64 r = tower_mod(base, height - 1, top, ph);
  return powmod(base, r + ph, m);
}

std::optional<mpz_class> tower_value(const Tower& t, u64 max_bits) {
  if (t.height == 0) return mpz_class(static_cast<unsigned long>(t.top));
  if (t.base <= 1) return mpz_class(static_cast<unsigned long>(t.base));
  auto e = tower_value({t.base, t.height - 1, t.top}, max_bits);
  if (!e || !e->fits_ulong_p()) return std::nullopt;
  unsigned long ev = e->get_ui();
  long double bits = static_cast<long double>(ev) * static_cast<long double>(floor_log2(t.base) + 1);
  if (bits > static_cast<long double>(max_bits)) {
    // floor_log2 + 1 overestimates; recheck with the lower estimate before giving up.
    if (static_cast<long double>(ev) * static_cast<long double>(floor_log2(t.base)) >
        static_cast<long double>(max_bits))
      return std::nullopt;
  }
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(t.base), ev);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > max_bits) return std::nullopt;
  return v;
}

u64 tower_stable_height(u64 m) {
  u64 steps = 0;
  while (m > 1) {
    m = totient(m);
    ++steps;
  }
  return steps + 4;
}

Quotient::Quotient(mpz_class v) : value_(std::move(v)) {
  if (*value_ < 1) throw PreconditionViolation("partial quotients must be positive");
}

Quotient::Quotient(const Tower& t, long offset, const Limits& limits) : tower_(t), offset_(offset) {
  if (auto v = tower_value(t, limits.max_bits)) {
    value_ = *v + offset;
    if (*value_ < 1) throw PreconditionViolation("partial quotients must be positive");
  }
}

const mpz_class& Quotient::value() const {
  if (!value_) throw CapExceeded("partial quotient " + describe() + " is too large to materialize");
  return *value_;
}

std::uint64_t Quotient::residue(u64 m) const {
  if (m == 0) throw PreconditionViolation("modulus must be positive");
  if (value_) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), value_->get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_ui();
  }
  u64 t = tower_mod(tower_->base, tower_->height, tower_->top, m);
  long om = offset_ % static_cast<long>(m);
  if (om < 0) om += static_cast<long>(m);
  return (t + static_cast<u64>(om)) % m;
}

std::optional<bool> Quotient::at_least_pow2(const mpz_class& k, const Limits& limits) const {
  if (k <= 0) return true;
  if (value_) {
    mpz_class bits = static_cast<unsigned long>(mpz_sizeinbase(value_->get_mpz_t(), 2));
    return bits - 1 >= k;
  }
  if (tower_->height == 0 || tower_->base < 2) return std::nullopt;
  auto e = tower_value({tower_->base, tower_->height - 1, tower_->top}, limits.max_bits);
  if (!e) return std::nullopt;
  u64 lg = floor_log2(tower_->base);
  bool exact_pow2 = (tower_->base & (tower_->base - 1)) == 0;
  mpz_class lower_exp = *e * static_cast<unsigned long>(lg);
  if (offset_ >= 0 && lower_exp >= k) return true;
  if (exact_pow2 && offset_ >= 0 && lower_exp <= k - 1 && k - 1 >= 63) {
    // tower <= 2^(k-1) and the offset is below 2^(k-1)
    return false;
  }
  return std::nullopt;
}

std::string Quotient::describe() const {
  if (tower_) {
    std::string s = "tower(" + std::to_string(tower_->base) + ", height " + std::to_string(tower_->height) +
                    ", top " + std::to_string(tower_->top) + ")";
    if (offset_ != 0) s += (offset_ > 0 ? " + " : " - ") + std::to_string(offset_ > 0 ? offset_ : -offset_);
    return s;
  }
  return value_->get_str();
}

}  // namespace rrlab::cfrac
