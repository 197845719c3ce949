#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rrlab/bigarith.hpp"

namespace rrlab::cfrac {

// Integers wider than max_bits are never materialized.
struct Limits {
  std::uint64_t max_bits = 1ULL << 30;
};

// base^base^...^base^top with `height` copies of base; height 0 is just top.
struct Tower {
  std::uint64_t base = 2;
  std::uint64_t height = 1;
  std::uint64_t top = 1;
};

std::uint64_t tower_mod(std::uint64_t base, std::uint64_t height, std::uint64_t top, std::uint64_t m);
std::optional<mpz_class> tower_value(const Tower& t, std::uint64_t max_bits);

// Heights from which tower_mod(base, h, top, m) no longer depends on h or
// top (for top >= 1).
std::uint64_t tower_stable_height(std::uint64_t m);

class Quotient {
 public:
  explicit Quotient(mpz_class v);
  Quotient(const Tower& t, long offset, const Limits& limits);

  bool materialized() const { return value_.has_value(); }
  const mpz_class& value() const;
  std::uint64_t residue(std::uint64_t m) const;
  // Exact test of a >= 2^k, nullopt when it cannot be decided.
  std::optional<bool> at_least_pow2(const mpz_class& k, const Limits& limits = {}) const;
  std::string describe() const;

 private:
  std::optional<mpz_class> value_;
  std::optional<Tower> tower_;
  long offset_ = 0;
};

// a_i mod 5 (or any modulus the caller means) for i >= 1.
struct ResiduePattern {
  std::vector<int> prefix;
  std::vector<int> period;

  int at(std::size_t i) const;
  bool operator==(const ResiduePattern&) const = default;
};

// Residues mod 5 of the partial quotients of
// [0; 1, 3, (2, 3, 2, 1, 1, 2, 3, 2, 1, 3, 3, 5) repeated].
ResiduePattern alpha_residues();
std::vector<mpz_class> alpha_prefix();
std::vector<mpz_class> alpha_period();

// Offsets added to the sixteens tower: 0, 2, then (1,2,1,0,0,1,2,1,0,2,2,4) repeated.
std::vector<long> sixteen_offset_prefix();
std::vector<long> sixteen_offset_period();

enum class StreamKind { Explicit, Periodic, Tower, SMinimal, SDiamond, SPrime };

const char* stream_kind_name(StreamKind k);

enum class Growth { Golden, Diamond, Constant };

// Threshold that a_{i+1} must reach given d_i.
struct GrowthRule {
  Growth kind = Growth::Golden;
  std::string value = "1";  // kappa for Golden, the constant for Constant
};

class PartialQuotientStream {
 public:
  static PartialQuotientStream explicit_list(std::vector<mpz_class> terms);
  static PartialQuotientStream periodic(std::vector<mpz_class> prefix, std::vector<mpz_class> period);
  static PartialQuotientStream tower(std::uint64_t base, std::vector<long> offset_prefix = {},
                                     std::vector<long> offset_period = {});
  static PartialQuotientStream s_minimal(const std::string& kappa = "1");
  static PartialQuotientStream s_diamond(ResiduePattern residues);
  static PartialQuotientStream s_prime();

  StreamKind kind() const { return kind_; }
  bool is_generator() const;
  std::optional<std::size_t> length() const;

  // Rule-defined streams only (explicit, periodic, tower). i >= 1.
  Quotient term(std::size_t i, const Limits& limits = {}) const;

  // a_i mod m without materializing, when the rule determines it.
  std::optional<std::uint64_t> term_residue(std::size_t i, std::uint64_t m) const;

  // Indices with equal keys have identical residue futures mod m.
  std::optional<std::uint64_t> phase_key(std::size_t i, std::uint64_t m) const;

  const GrowthRule& growth() const { return growth_; }
  const std::optional<ResiduePattern>& residues() const { return residues_; }
  void set_growth(GrowthRule g) { growth_ = std::move(g); }
  void set_first(mpz_class a1) { first_ = std::move(a1); }
  const std::optional<mpz_class>& first() const { return first_; }

  nlohmann::json to_json() const;
  static PartialQuotientStream from_json(const nlohmann::json& j);

  bool operator==(const PartialQuotientStream& o) const;

 private:
  StreamKind kind_ = StreamKind::Explicit;
  std::vector<mpz_class> terms_;   // explicit list or periodic prefix
  std::vector<mpz_class> period_;  // periodic
  std::uint64_t base_ = 2;         // tower
  std::vector<long> offset_prefix_, offset_period_;
  GrowthRule growth_;
  std::optional<ResiduePattern> residues_;
  std::optional<mpz_class> first_;
};

struct Convergent {
  std::size_t index = 0;
  mpz_class c, d;
};

// Element i is the i-th convergent; element 0 is 0/1.
std::vector<Convergent> convergents(const std::vector<Quotient>& terms);
std::vector<Convergent> convergents(const std::vector<mpz_class>& terms);

struct SetSCertificate {
  std::size_t level = 0;
  mpz_class next_quotient;   // a_{level+1}
  mpz_class d;               // d_level
  mpz_class threshold_ceiling;
  std::string threshold_upper;  // certified upper bound of the real threshold
  Growth kind = Growth::Golden;
  bool verified = false;
};

struct SPoint {
  PartialQuotientStream rule;
  std::vector<mpz_class> terms;  // a_1..a_{levels+1}
  std::vector<Convergent> convergents;
  std::vector<SetSCertificate> certificates;  // one per level
  bool capped = false;  // stopped early at the representability cap
};

enum class CapPolicy { Throw, Stop };

// Smallest integer at or above the threshold for given d, matching a residue
// class mod 5 when one is required.
mpz_class threshold_ceiling(const GrowthRule& g, const mpz_class& d, const Limits& limits,
                            std::string* upper_repr = nullptr);

SPoint build_S_point(const PartialQuotientStream& rule, std::size_t levels, const Limits& limits = {},
                     CapPolicy policy = CapPolicy::Throw);

// First n partial quotients of any stream.
std::vector<Quotient> materialize(const PartialQuotientStream& s, std::size_t n, const Limits& limits = {});

struct Approximation {
  Convergent conv;
  BigReal value;
  BigReal radius;  // 1/(d_n d_{n+1}), rounded up
};

Approximation approx_value(const PartialQuotientStream& s, std::size_t n, const PrecisionContext& ctx,
                           const Limits& limits = {});

struct ResiduePair {
  std::uint64_t c = 0, d = 0;
  bool operator==(const ResiduePair&) const = default;
};

struct ModPattern {
  std::uint64_t modulus = 0;
  std::vector<ResiduePair> residues;  // from index 0
  std::optional<std::size_t> preperiod;
  std::optional<std::size_t> period;

  std::string format() const;
};

ModPattern mod_convergents(const PartialQuotientStream& s, std::uint64_t m, std::size_t max_terms = 4096,
                           const Limits& limits = {});

// F_n and L_n as exact integers.
mpz_class fibonacci(unsigned long n);
mpz_class lucas(unsigned long n);

}  // namespace rrlab::cfrac
