#include "rrlab/cfrac.hpp"

#include <map>
#include <sstream>
#include <tuple>

#include "rrlab/errors.hpp"

namespace rrlab::cfrac {

namespace {

constexpr std::uint64_t kPeriodicKey = 1ULL << 40;

std::vector<mpz_class> to_mpz(std::initializer_list<int> v) {
  std::vector<mpz_class> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

std::uint64_t mod_u(const mpz_class& v, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_ui();
}

long offset_at(const std::vector<long>& prefix, const std::vector<long>& period, std::size_t i) {
  if (i <= prefix.size()) return prefix[i - 1];
  if (period.empty()) return 0;
  return period[(i - prefix.size() - 1) % period.size()];
}

}  // namespace

int ResiduePattern::at(std::size_t i) const {
  if (i == 0) throw PreconditionViolation("residue patterns are indexed from 1");
  if (i <= prefix.size()) return prefix[i - 1];
  if (period.empty()) throw PreconditionViolation("residue pattern exhausted");
  return period[(i - prefix.size() - 1) % period.size()];
}

std::vector<mpz_class> alpha_prefix() { return to_mpz({1, 3}); }
std::vector<mpz_class> alpha_period() { return to_mpz({2, 3, 2, 1, 1, 2, 3, 2, 1, 3, 3, 5}); }

ResiduePattern alpha_residues() {
  ResiduePattern p;
  for (const auto& a : alpha_prefix()) p.prefix.push_back(static_cast<int>(mod_u(a, 5)));
  for (const auto& a : alpha_period()) p.period.push_back(static_cast<int>(mod_u(a, 5)));
  return p;
}

std::vector<long> sixteen_offset_prefix() { return {0, 2}; }
std::vector<long> sixteen_offset_period() { return {1, 2, 1, 0, 0, 1, 2, 1, 0, 2, 2, 4}; }

const char* stream_kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::Explicit: return "explicit";
    case StreamKind::Periodic: return "periodic";
    case StreamKind::Tower: return "tower";
    case StreamKind::SMinimal: return "S-minimal";
    case StreamKind::SDiamond: return "S-diamond";
    case StreamKind::SPrime: return "S-prime";
  }
  return "?";
}

PartialQuotientStream PartialQuotientStream::explicit_list(std::vector<mpz_class> terms) {
  for (const auto& a : terms)
    if (a < 1) throw PreconditionViolation("partial quotients must be positive");
  PartialQuotientStream s;
  s.kind_ = StreamKind::Explicit;
  s.terms_ = std::move(terms);
  return s;
}

PartialQuotientStream PartialQuotientStream::periodic(std::vector<mpz_class> prefix, std::vector<mpz_class> period) {
  if (period.empty()) throw PreconditionViolation("periodic stream needs a non-empty period");
  for (const auto* v : {&prefix, &period})
    for (const auto& a : *v)
      if (a < 1) throw PreconditionViolation("partial quotients must be positive");
  PartialQuotientStream s;
  s.kind_ = StreamKind::Periodic;
  s.terms_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

PartialQuotientStream PartialQuotientStream::tower(std::uint64_t base, std::vector<long> offset_prefix,
                                                   std::vector<long> offset_period) {
  if (base < 2) throw PreconditionViolation("tower base must be at least 2");
  for (const auto* v : {&offset_prefix, &offset_period})
    for (long o : *v)
      if (o < 0) throw PreconditionViolation("tower offsets must be non-negative");
  PartialQuotientStream s;
  s.kind_ = StreamKind::Tower;
  s.base_ = base;
  s.offset_prefix_ = std::move(offset_prefix);
  s.offset_period_ = std::move(offset_period);
  return s;
}

PartialQuotientStream PartialQuotientStream::s_minimal(const std::string& kappa) {
  PartialQuotientStream s;
  s.kind_ = StreamKind::SMinimal;
  s.growth_ = {Growth::Golden, kappa};
  return s;
}

PartialQuotientStream PartialQuotientStream::s_diamond(ResiduePattern residues) {
  for (const auto* v : {&residues.prefix, &residues.period})
    for (int r : *v)
      if (r < 0 || r > 4) throw PreconditionViolation("residues must lie in 0..4");
  PartialQuotientStream s;
  s.kind_ = StreamKind::SDiamond;
  s.growth_ = {Growth::Diamond, ""};
  s.residues_ = std::move(residues);
  return s;
}

PartialQuotientStream PartialQuotientStream::s_prime() {
  PartialQuotientStream s = s_diamond(alpha_residues());
  s.kind_ = StreamKind::SPrime;
  return s;
}

bool PartialQuotientStream::is_generator() const {
  return kind_ == StreamKind::SMinimal || kind_ == StreamKind::SDiamond || kind_ == StreamKind::SPrime;
}

std::optional<std::size_t> PartialQuotientStream::length() const {
  if (kind_ == StreamKind::Explicit) return terms_.size();
  return std::nullopt;
}

Quotient PartialQuotientStream::term(std::size_t i, const Limits& limits) const {
  if (i == 0) throw PreconditionViolation("partial quotients are indexed from 1");
  switch (kind_) {
    case StreamKind::Explicit:
      if (i > terms_.size()) throw PreconditionViolation("explicit stream has only " + std::to_string(terms_.size()) + " terms");
      return Quotient(terms_[i - 1]);
    case StreamKind::Periodic:
      if (i <= terms_.size()) return Quotient(terms_[i - 1]);
      return Quotient(period_[(i - terms_.size() - 1) % period_.size()]);
    case StreamKind::Tower:
      return Quotient(Tower{base_, i, i}, offset_at(offset_prefix_, offset_period_, i), limits);
    default:
      throw PreconditionViolation("generator streams are materialized through build_S_point");
  }
}

std::optional<std::uint64_t> PartialQuotientStream::term_residue(std::size_t i, std::uint64_t m) const {
  if (i == 0 || m == 0) return std::nullopt;
  switch (kind_) {
    case StreamKind::Explicit:
      if (i > terms_.size()) return std::nullopt;
      return mod_u(terms_[i - 1], m);
    case StreamKind::Periodic:
      return term(i).residue(m);
    case StreamKind::Tower: {
      long off = offset_at(offset_prefix_, offset_period_, i);
      return (tower_mod(base_, i, i, m) + static_cast<std::uint64_t>(off) % m) % m;
    }
    default:
      if (residues_ && 5 % m == 0) {
        if (i == 1 && first_) return mod_u(*first_, m);
        return static_cast<std::uint64_t>(residues_->at(i)) % m;
      }
      return std::nullopt;
  }
}

std::optional<std::uint64_t> PartialQuotientStream::phase_key(std::size_t i, std::uint64_t m) const {
  switch (kind_) {
    case StreamKind::Explicit:
      return i <= terms_.size() ? std::optional<std::uint64_t>(i) : std::nullopt;
    case StreamKind::Periodic:
      if (i <= terms_.size()) return i;
      return kPeriodicKey + (i - terms_.size() - 1) % period_.size();
    case StreamKind::Tower: {
      std::uint64_t stable = tower_stable_height(m);
      if (i < stable || i <= offset_prefix_.size()) return i;
      if (offset_period_.empty()) return kPeriodicKey;
      return kPeriodicKey + (i - offset_prefix_.size() - 1) % offset_period_.size();
    }
    default:
      if (!residues_ || 5 % m != 0) return std::nullopt;
      if (i <= residues_->prefix.size() || (i == 1 && first_)) return i;
      if (residues_->period.empty()) return std::nullopt;
      return kPeriodicKey + (i - residues_->prefix.size() - 1) % residues_->period.size();
  }
}

bool PartialQuotientStream::operator==(const PartialQuotientStream& o) const {
  return kind_ == o.kind_ && terms_ == o.terms_ && period_ == o.period_ && base_ == o.base_ &&
         offset_prefix_ == o.offset_prefix_ && offset_period_ == o.offset_period_ &&
         growth_.kind == o.growth_.kind && growth_.value == o.growth_.value && residues_ == o.residues_ &&
         first_ == o.first_;
}

mpz_class fibonacci(unsigned long n) {
  mpz_class f;
  mpz_fib_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class lucas(unsigned long n) {
  mpz_class l;
  mpz_lucnum_ui(l.get_mpz_t(), n);
  return l;
}

std::vector<Convergent> convergents(const std::vector<mpz_class>& terms) {
  std::vector<Convergent> out;
  out.reserve(terms.size() + 1);
  mpz_class c_prev = 1, d_prev = 0, c = 0, d = 1;
  out.push_back({0, c, d});
  for (std::size_t i = 0; i < terms.size(); ++i) {
    mpz_class cn = terms[i] * c + c_prev;
    mpz_class dn = terms[i] * d + d_prev;
    c_prev = std::move(c);
    d_prev = std::move(d);
    c = std::move(cn);
    d = std::move(dn);
    out.push_back({i + 1, c, d});
  }
  return out;
}

std::vector<Convergent> convergents(const std::vector<Quotient>& terms) {
  std::vector<mpz_class> v;
  v.reserve(terms.size());
  for (const auto& q : terms) v.push_back(q.value());
  return convergents(v);
}

std::vector<Quotient> materialize(const PartialQuotientStream& s, std::size_t n, const Limits& limits) {
  std::vector<Quotient> out;
  if (n == 0) return out;
  if (s.is_generator()) {
    SPoint p = build_S_point(s, n - 1, limits);
    for (auto& a : p.terms) out.emplace_back(std::move(a));
    return out;
  }
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Quotient q = s.term(i, limits);
    if (!q.materialized()) throw CapExceeded("a_" + std::to_string(i) + " = " + q.describe() + " exceeds the cap");
    out.push_back(std::move(q));
  }
  return out;
}

Approximation approx_value(const PartialQuotientStream& s, std::size_t n, const PrecisionContext& ctx,
                           const Limits& limits) {
  if (n == 0) throw PreconditionViolation("approx_value needs n >= 1");
  auto conv = convergents(materialize(s, n + 1, limits));
  const Convergent& cn = conv[n];
  const Convergent& cn1 = conv[n + 1];
  BigReal value = BigReal::from_mpq(mpq_class(cn.c, cn.d), ctx);
  mpz_class den = cn.d * cn1.d;
  BigReal radius(ctx);
  BigReal dd(ctx);
  mpfr_set_z(dd.raw(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_ui_div(radius.raw(), 1, dd.raw(), MPFR_RNDU);
  return {cn, std::move(value), std::move(radius)};
}

std::string ModPattern::format() const {
  std::ostringstream os;
  os << "# modulus " << modulus << '\n';
  auto pair = [](const ResiduePair& p) { return std::to_string(p.c) + "/" + std::to_string(p.d); };
  if (period) {
    os << "preperiod:";
    for (std::size_t i = 0; i < *preperiod; ++i) os << ' ' << pair(residues[i]);
    os << "\nperiod:";
    for (std::size_t i = *preperiod; i < *preperiod + *period; ++i) os << ' ' << pair(residues[i]);
    os << '\n';
  } else {
    os << "residues:";
    for (const auto& r : residues) os << ' ' << pair(r);
    os << "\nperiod: none detected\n";
  }
  return os.str();
}

ModPattern mod_convergents(const PartialQuotientStream& s, std::uint64_t m, std::size_t max_terms,
                           const Limits& limits) {
  if (m < 2) throw PreconditionViolation("mod_convergents needs modulus >= 2");
  ModPattern out;
  out.modulus = m;

  std::vector<std::uint64_t> fallback;
  bool use_fallback = s.is_generator() && !s.term_residue(1, m);
  if (use_fallback) {
    SPoint p = build_S_point(s, max_terms == 0 ? 0 : max_terms - 1, limits, CapPolicy::Stop);
    for (const auto& a : p.terms) fallback.push_back(mod_u(a, m));
  }
  auto residue = [&](std::size_t i) -> std::optional<std::uint64_t> {
    if (use_fallback) return i <= fallback.size() ? std::optional<std::uint64_t>(fallback[i - 1]) : std::nullopt;
    return s.term_residue(i, m);
  };
  auto key = [&](std::size_t i) -> std::optional<std::uint64_t> {
    if (use_fallback) return std::nullopt;
    return s.phase_key(i, m);
  };

  using State = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;
  std::map<State, std::size_t> seen;
  std::uint64_t c_prev = 1 % m, d_prev = 0, c = 0, d = 1 % m;
  out.residues.push_back({c, d});

  std::optional<std::size_t> start, big_period;
  std::size_t limit = max_terms;
  for (std::size_t i = 0;; ++i) {
    if (!start) {
      if (auto k = key(i + 1)) {
        State st{*k, c, d, c_prev, d_prev};
        auto [it, inserted] = seen.emplace(st, i);
        if (!inserted) {
          start = it->second;
          big_period = i - it->second;
          // generate one more full period so the minimal period can be checked
          limit = std::min(max_terms, i + *big_period);
        }
      }
    }
    if (i >= limit) break;
    auto a = residue(i + 1);
    if (!a) break;
    std::uint64_t cn = (*a * c + c_prev) % m;
    std::uint64_t dn = (*a * d + d_prev) % m;
    c_prev = c;
    d_prev = d;
    c = cn;
    d = dn;
    out.residues.push_back({c, d});
  }

  if (start && out.residues.size() >= *start + 2 * *big_period) {
    const auto& r = out.residues;
    std::size_t P = *big_period;
    std::size_t best = P;
    for (std::size_t p = 1; p < P; ++p) {
      if (P % p != 0) continue;
      bool ok = true;
      for (std::size_t k = *start; k < *start + P && ok; ++k) ok = r[k] == r[k + p];
      if (ok) {
        best = p;
        break;
      }
    }
    std::size_t pre = *start;
    while (pre > 0 && r[pre - 1] == r[pre - 1 + best]) --pre;
    out.preperiod = pre;
    out.period = best;
  }
  return out;
}

}  // namespace rrlab::cfrac
