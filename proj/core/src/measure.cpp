#include <cmath>
#include <random>

#include "rrlab/errors.hpp"
#include "rrlab/verify.hpp"

namespace rrlab::verify {

namespace {

const double kLog2Phi = std::log2((1 + std::sqrt(5.0)) / 2);

// Rough log2 of the threshold, used only to skip hopeless exact comparisons.
double log2_threshold(const cfrac::GrowthRule& g, const mpz_class& d) {
  double dd = mpz_get_d(d.get_mpz_t());
  switch (g.kind) {
    case cfrac::Growth::Golden:
      return std::stod(g.value.empty() ? "1" : g.value) * dd * kLog2Phi;
    case cfrac::Growth::Diamond:
      return (dd * dd + 2 * dd) * kLog2Phi + std::log2(2 * M_PI * (dd + 1) * (dd + 1));
    case cfrac::Growth::Constant:
      return std::log2(std::max(1.0, std::stod(g.value)));
  }
  return 0;
}

bool meets(const cfrac::GrowthRule& g, const mpz_class& a, const mpz_class& d) {
  double bits = static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2));
  if (log2_threshold(g, d) > bits + 2) return false;
  return a >= cfrac::threshold_ceiling(g, d, cfrac::Limits{});
}

}  // namespace

MeasureEstimate measure_sampler(const MeasureOptions& opt) {
  if (opt.samples < 100) throw PreconditionViolation("measure_sampler needs at least 100 samples");
  if (opt.from_index < 1 || opt.depth < opt.from_index)
    throw PreconditionViolation("measure_sampler needs 1 <= from_index <= depth");
  if (opt.bits < 64) throw PreconditionViolation("measure_sampler needs at least 64 bits");

  MeasureEstimate est;
  est.samples = opt.samples;
  est.hits_at.assign(opt.depth, 0);
  std::mt19937_64 rng(opt.seed);
  const auto words = static_cast<std::size_t>((opt.bits + 63) / 64);
  mpz_class den = mpz_class(1) << static_cast<mp_bitcnt_t>(words * 64);

  for (std::size_t s = 0; s < opt.samples; ++s) {
    mpz_class num = 0;
    for (std::size_t w = 0; w < words; ++w) {
      num <<= 64;
      num += mpz_class(static_cast<unsigned long>(rng()));
    }
    if (num == 0) num = 1;

    // t = num/den = [0; a_1, a_2, ...]
    mpz_class p = den, q = num, d_prev = 0, d = 1;
    bool hit = false;
    std::vector<mpz_class> a;
    for (std::size_t i = 1; i <= opt.depth + 1 && q != 0; ++i) {
      mpz_class ai = p / q;
      mpz_class rem = p - ai * q;
      p = q;
      q = rem;
      a.push_back(ai);
    }
    for (std::size_t i = 1; i + 1 <= a.size() && i <= opt.depth; ++i) {
      mpz_class dn = a[i - 1] * d + d_prev;
      d_prev = d;
      d = dn;
      if (i < opt.from_index) continue;
      if (meets(opt.rule, a[i], d)) {
        ++est.hits_at[i - 1];
        hit = true;
      }
    }
    if (hit) ++est.hits;
  }
  return est;
}

}  // namespace rrlab::verify
