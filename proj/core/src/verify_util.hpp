#pragma once

#include <cmath>

#include "rrlab/bigarith.hpp"
#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/verify.hpp"

namespace rrlab::verify::detail {

inline BigReal phi_pow(long k, const PrecisionContext& ctx) {
  return pow(golden_ratio(ctx.widened(64)), k).at(ctx);
}

// Working precision for a recurrence of length n at points within phi^-n of
// each other: twice the bits of phi^n plus a fixed guard.
inline long bits_for_index(double n) { return static_cast<long>(std::ceil(2.0 * n * std::log2((1 + std::sqrt(5.0)) / 2))) + 256; }

inline PrecisionContext recurrence_context(double n) { return verify::recurrence_context(static_cast<std::size_t>(n)); }

inline void require_agree(const BigComplex& lo, const BigComplex& hi, const PrecisionContext& ctx, const char* what) {
  if (!agree(lo, hi.at(ctx), ctx)) throw PrecisionTooLow(std::string(what) + " loses more than the guard bits at " +
                                                         std::to_string(ctx.bits) + " bits");
}

// Agreement of a cancelling difference, judged against the size of its operands.
inline void require_agree_scaled(const BigComplex& lo, const BigComplex& hi, const BigReal& scale,
                                 const PrecisionContext& ctx, const char* what) {
  BigReal s = max(BigReal(1, ctx), scale);
  if (distance(lo, hi.at(ctx)) > tolerance(ctx) * s)
    throw PrecisionTooLow(std::string(what) + " loses more than the guard bits at " + std::to_string(ctx.bits) +
                          " bits");
}

}  // namespace rrlab::verify::detail
