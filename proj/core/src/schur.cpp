#include "rrlab/schur.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "rrlab/errors.hpp"
#include "rrlab/rrcf.hpp"

namespace rrlab::schur {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

RootOfUnity::RootOfUnity(long k_, long m_) : k(k_), m(m_) {
  if (m < 1) throw PreconditionViolation("root of unity needs m >= 1");
  k = mod(k, m);
}

bool RootOfUnity::primitive() const { return std::gcd(k, m) == 1; }

Point RootOfUnity::point(const PrecisionContext& ctx) const { return unit_point(angle(), ctx); }

BigComplex RootOfUnity::power(long e, const PrecisionContext& ctx) const {
  return unit_point(mpq_class(mod(k * e, m), m), ctx).value;
}

std::vector<RootOfUnity> primitive_roots(long m) {
  std::vector<RootOfUnity> out;
  for (long k = 0; k < m; ++k)
    if (std::gcd(k, m) == 1) out.emplace_back(k, m);
  return out;
}

int legendre5(long m) {
  switch (mod(m, 5)) {
    case 1:
    case 4:
      return 1;
    case 2:
    case 3:
      return -1;
    default:
      throw PreconditionViolation("legendre5 is undefined for 5 | m (m = " + std::to_string(m) + ")");
  }
}

BigComplex r_catalog(int j, const PrecisionContext& ctx) {
  if (j < 1 || j > 10) throw PreconditionViolation("catalog index must be in 1..10");
  BigComplex z = unit_point(mpq_class(j % 5, 5), ctx).value;
  BigReal phi = golden_ratio(ctx);
  return j <= 5 ? -(z * phi) : z / phi;
}

int catalog_index_for_residues(long c, long d) {
  int lambda = legendre5(d);
  long t = mod(c * mod(d, 5), 5);
  if (lambda == 1) return t == 0 ? 10 : static_cast<int>(5 + t);
  long s = mod(-t, 5);
  return s == 0 ? 5 : static_cast<int>(s);
}

SchurValue schur_eval(const RootOfUnity& x, const PrecisionContext& ctx) {
  if (!x.primitive()) throw PreconditionViolation("schur_eval needs a primitive root of unity");
  SchurValue v;
  v.lambda = legendre5(x.m);
  v.sigma = static_cast<int>(mod(x.m, 5));
  long num = 1 - static_cast<long>(v.lambda) * v.sigma * x.m;
  if (num % 5 != 0) throw DivisibilityViolation("1 - lambda sigma m = " + std::to_string(num) + " is not a multiple of 5");
  v.e = num / 5;

  BigReal phi = golden_ratio(ctx);
  BigReal k_lambda = v.lambda == 1 ? phi : BigReal(1, ctx) / phi;
  BigComplex xe = x.power(v.e, ctx);
  v.K = xe * k_lambda;
  if (v.lambda == -1) v.K = -v.K;
  v.R = fifth_root(x.point(ctx)) / v.K;

  std::vector<std::pair<BigReal, int>> dist;
  for (int j = 1; j <= 10; ++j) dist.emplace_back(distance(v.R, r_catalog(j, ctx)), j);
  std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  v.j = dist[0].second;
  v.nearest = dist[0].first;
  v.second = dist[1].first;
  return v;
}

BoundaryQuad boundary_quad(const RootOfUnity& x, const PrecisionContext& ctx) {
  const long m = x.m;
  BigComplex zero(ctx), one(1, ctx);
  auto xp = [&](long num) { return x.power(num / 5, ctx); };
  switch (mod(m, 5)) {
    case 1:
      return {xp(1 - m), one, zero, xp(m - 1)};
    case 4:
      return {xp(1 + m), one, zero, xp(-1 - m)};
    case 2:
      return {-xp(1 + 2 * m), zero, one, -xp(-1 - 2 * m)};
    case 3:
      return {-xp(1 - 2 * m), zero, one, -xp(-1 + 2 * m)};
    default:
      return {zero, -(xp(2 * m) + xp(-2 * m)), -(xp(m) + xp(-m)), zero};
  }
}

std::pair<BigComplex, BigComplex> block_step(const BoundaryQuad& q, const BigComplex& P_nm, const BigComplex& Q_nm) {
  return {q.P_m1 * P_nm + q.P_m2 * Q_nm, q.Q_m1 * P_nm + q.Q_m2 * Q_nm};
}

std::pair<BigComplex, BigComplex> binet_coefficients(const BigComplex& Q_r, const BigComplex& Q_mr,
                                                     const PrecisionContext& ctx) {
  BigReal phi = golden_ratio(ctx);
  BigReal phibar = BigReal(1, ctx) - phi;
  BigReal s5 = sqrt(BigReal(5, ctx));
  BigComplex b = (Q_mr - Q_r * phibar) / s5;
  BigComplex bp = Q_r - b;
  return {b, bp};
}

std::pair<BigComplex, BigComplex> binet_coefficients(const RootOfUnity& x, long r, const PrecisionContext& ctx) {
  if (r < 0 || r >= x.m) throw PreconditionViolation("binet_coefficients needs 0 <= r < m");
  rrcf::ConvergentPair s(x.point(ctx));
  s.advance_to(static_cast<std::size_t>(r));
  BigComplex Q_r = s.Q();
  s.advance_to(static_cast<std::size_t>(x.m + r));
  return binet_coefficients(Q_r, s.Q(), ctx);
}

GeneralLimit general_limit_class(const RootOfUnity& x, const PrecisionContext& ctx) {
  if (x.m % 5 != 0) throw WrongResidueClass("general_limit_class needs 5 | m");
  if (!x.primitive()) throw PreconditionViolation("general_limit_class needs a primitive root of unity");
  GeneralLimit g;
  long t = mod(x.k, 5);
  g.to_zero = (t == 2 || t == 3);

  BigReal tol = tolerance(ctx);
  BigReal M(0, ctx);
  rrcf::ConvergentPair s(x.point(ctx));
  for (long r = 1; r <= x.m; ++r) {
    s.advance();
    const BigComplex& num = g.to_zero ? s.Q() : s.P();
    const BigComplex& den = g.to_zero ? s.Q_prev() : s.P_prev();
    if (compare(den.abs(), tol) <= 0) continue;
    M = max(M, (num / den).abs());
  }
  g.M = M;
  g.v = M + 1;
  g.w = M + 2;
  BoundaryQuad q = boundary_quad(x, ctx);
  g.block_ratio = q.P_m1.abs() / q.Q_m2.abs();
  return g;
}

nlohmann::json catalog_json(long m_min, long m_max, const PrecisionContext& ctx) {
  if (m_min < 1 || m_max < m_min) throw ConfigInvalid("catalog range needs 1 <= m_min <= m_max");
  nlohmann::json rows = nlohmann::json::array();
  for (long m = m_min; m <= m_max; ++m) {
    if (m % 5 == 0) continue;
    for (const auto& x : primitive_roots(m)) {
      SchurValue v = schur_eval(x, ctx);
      rows.push_back({{"m", m},
                      {"k", x.k},
                      {"lambda", v.lambda},
                      {"sigma", v.sigma},
                      {"e", v.e},
                      {"K", {v.K.re().to_string(40), v.K.im().to_string(40)}},
                      {"R_j", v.j}});
    }
  }
  return rows;
}

}  // namespace rrlab::schur
