#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrlab/bigarith.hpp"
#include "rrlab/cfrac.hpp"
#include "rrlab/report.hpp"
#include "rrlab/schur.hpp"

namespace rrlab::verify {

// Precision for a length-n recurrence: twice the bits of phi^n plus 256, with
// a guard that absorbs the phi^n growth (and n^2 derivative factor) in the
// doubling check.
PrecisionContext recurrence_context(std::size_t n);

// |Q_n(x)-Q_n(y)| <= n^2 phi^n |x-y| and |P_n(x)-P_n(y)| <= (n+1)^2 phi^(n+1) |x-y|, 0 <= n <= N.
TraceReport check_lipschitz(const Point& x, const Point& y, std::size_t N);

// Growth of |Q| along n = qm+m-1 and qm+m-2 for 2 <= q <= q_max.
TraceReport check_growth(const schur::RootOfUnity& x, long q_max, const PrecisionContext& ctx);

// Rate of K_n -> K along the same two subsequences, and the R-version.
TraceReport check_K_rate(const schur::RootOfUnity& x, long q_max, const PrecisionContext& ctx);

enum class Subsequence { Last, SecondLast };  // n = qm+m-1, n = qm+m-2

struct PerturbationCase {
  schur::RootOfUnity x;
  Angle y;  // angle of the nearby point, in turns
  long q = 3;
  Subsequence which = Subsequence::Last;
  BigReal eps;  // claimed bound on the P, Q perturbation
};

TraceReport check_perturbation(const PerturbationCase& c, const PrecisionContext& ctx);

// Partial quotients and convergents up to index levels+1, from either a
// generator rule or a rule-defined stream.
struct LevelData {
  std::vector<mpz_class> terms;
  std::vector<cfrac::Convergent> convergents;
  std::size_t reachable = 0;
};

LevelData level_data(const cfrac::PartialQuotientStream& s, std::size_t levels, const cfrac::Limits& limits,
                     cfrac::CapPolicy policy);

// Divergence certificate at y = exp(2 pi i c_{L+1}/d_{L+1}) for levels 1..L.
TraceReport divergence_trace(const cfrac::PartialQuotientStream& s, std::size_t levels,
                             const cfrac::Limits& limits = {});

// a_{i+1} >= 2^{d_i} for i = 1..levels, decided exactly.
TraceReport tower_growth_certificate(const cfrac::PartialQuotientStream& s, std::size_t levels,
                                     const cfrac::Limits& limits = {});

// W_j target of position n >= 1.
int ten_limit_target(std::size_t n);

TraceReport ten_limits_trace(const cfrac::PartialQuotientStream& s, std::size_t levels,
                             const cfrac::Limits& limits = {});

struct ProbeOptions {
  std::size_t levels = 2;
  long from_q = 3;  // first ladder step used for the monotonicity verdict
};

struct ProbeOutcome {
  std::vector<long> indices;        // ladder n = qd+d-1 at the deepest level
  std::vector<BigReal> w_sums;      // |w_n + Q_n/Q_{n-1}|
  std::vector<BigReal> v_sums;      // |v_n + Q_n/Q_{n-1}|
  std::vector<BigReal> distances;   // chordal d(v_n, w_n)
  int a = 0, b = 0;                 // catalog indices seen along the two level families
  std::string verdict;
  TraceReport report;
};

ProbeOutcome general_divergence_probe(const cfrac::PartialQuotientStream& s, const ProbeOptions& opt,
                                      const cfrac::Limits& limits = {});

// S_n(M+1), S_n(M+2) at a 5m-th root against the classified limit.
TraceReport general_convergence_check(const schur::RootOfUnity& x, std::size_t n, const PrecisionContext& ctx);

// r_n = B_n/B_{n-1} for 1/K(1/x) with the recurrence identity, con1/con2 and the odd/even gap.
TraceReport ratio_blowup_probe(const BigComplex& x, std::size_t N, const BigReal& min_gap);

struct MeasureOptions {
  cfrac::GrowthRule rule;
  std::size_t from_index = 1;
  std::size_t depth = 10;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  long bits = 256;
};

struct MeasureEstimate {
  std::size_t samples = 0;
  std::size_t hits = 0;
  std::vector<std::size_t> hits_at;  // hits_at[i-1]: samples with an event at index i
  double frequency() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
};

// Fraction of uniform t with a_{i+1} >= threshold(d_i) for some from_index <= i <= depth.
MeasureEstimate measure_sampler(const MeasureOptions& opt);

}  // namespace rrlab::verify
