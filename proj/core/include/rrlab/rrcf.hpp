#pragma once

#include <cstddef>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rrlab/bigarith.hpp"

namespace rrlab::rrcf {

// Numerator and denominator of K_n(x) = 1 + x/(1 + x^2/(1 + ... x^n/1)).
// Starts at n = 0 with P_0 = Q_0 = 1, P_{-1} = 1, Q_{-1} = 0.
class ConvergentPair {
 public:
  explicit ConvergentPair(Point x);

  std::size_t n() const { return n_; }
  const Point& x() const { return x_; }
  const PrecisionContext& ctx() const { return x_.ctx(); }
  const BigComplex& P() const { return P_; }
  const BigComplex& P_prev() const { return Pp_; }
  const BigComplex& Q() const { return Q_; }
  const BigComplex& Q_prev() const { return Qp_; }

  void advance();
  void advance_to(std::size_t n);

  // P_n Q_{n-1} - Q_n P_{n-1}
  BigComplex determinant() const;

 private:
  Point x_;
  std::size_t n_ = 0;
  BigComplex P_, Pp_, Q_, Qp_, xpow_;
  BigComplex t_;
  BigReal s1_, s2_;
};

ConvergentPair pq_advance(ConvergentPair state);

// State at index n, re-run at doubled precision; throws PrecisionTooLow when
// P_n, Q_n, P_{n-1}, Q_{n-1} disagree beyond the guard bits.
ConvergentPair run_checked(const Point& x, std::size_t n);

// Values of Q_n for n = 0..N (|Q_n| only when moduli suffice).
std::vector<BigComplex> q_values(const Point& x, std::size_t N);

// K_n, or infinity when Q_n vanishes to working tolerance.
ExtendedComplex approximant(const ConvergentPair& s);

// R_n = x^{1/5} / K_n.
ExtendedComplex normalized(const ConvergentPair& s);

ExtendedComplex tail_modified(const ConvergentPair& s, const ExtendedComplex& w);
ExtendedComplex critical_tail(const ConvergentPair& s);

struct TraceRecord {
  std::size_t n = 0;
  ExtendedComplex K;
  std::optional<ExtendedComplex> R;
  BigReal abs_Q;
  ExtendedComplex h;
  bool blowup = false;
};

struct ApproximantTrace {
  PrecisionContext ctx;
  std::string point;  // human-readable description of x
  std::vector<TraceRecord> records;

  std::string to_csv() const;
  nlohmann::json to_json() const;
  static ApproximantTrace from_csv(const std::string& csv, const PrecisionContext& ctx);
  static ApproximantTrace from_json(const nlohmann::json& j);

  bool operator==(const ApproximantTrace& o) const;
};

ApproximantTrace classical_approximants(const Point& x, std::size_t N);

struct SeriesValue {
  BigComplex value;
  std::size_t depth = 0;
  bool converged = false;
};

// 1 - x/(1 + x^2/(1 - x^3/(1 + ...))), numerators (-1)^n x^n.
SeriesValue f1_series(const BigComplex& x, std::size_t depth);
// x/(1 + x^4/(1 + x^8/(1 + ...))), numerators x, x^4, x^8, ...
SeriesValue f2_series(const BigComplex& x, std::size_t depth);

// n-th convergent of 1/K(z), i.e. 1/K_{n-1}(z).
ExtendedComplex reciprocal_convergent(const BigComplex& z, std::size_t n);

struct OddEvenLimits {
  BigComplex odd;   // convergent N+1 of 1/K(1/x)
  BigComplex even;  // convergent N of 1/K(1/x)
  BigReal gap;
  SeriesValue f1, f2;
  BigReal odd_error, even_error;  // distances to F_1 and F_2
};

OddEvenLimits odd_even_limits(const BigComplex& x, std::size_t N);

}  // namespace rrlab::rrcf
