#pragma once

#include <nlohmann/json_fwd.hpp>
#include <utility>
#include <vector>

#include "rrlab/bigarith.hpp"

namespace rrlab::schur {

struct RootOfUnity {
  long k = 0;
  long m = 1;

  RootOfUnity() = default;
  RootOfUnity(long k_, long m_);

  bool primitive() const;
  mpq_class angle() const { return mpq_class(k, m); }
  Point point(const PrecisionContext& ctx) const;
  // x^e, exactly on the angle side.
  BigComplex power(long e, const PrecisionContext& ctx) const;
};

// All primitive m-th roots, k ascending.
std::vector<RootOfUnity> primitive_roots(long m);

int legendre5(long m);

struct SchurValue {
  int lambda = 1;
  int sigma = 1;
  long e = 0;
  BigComplex K;
  BigComplex R;
  int j = 0;          // catalog index of R
  BigReal nearest;    // distance to R_j
  BigReal second;     // distance to the next closest catalog value
};

SchurValue schur_eval(const RootOfUnity& x, const PrecisionContext& ctx);

// R_j: -phi exp(2 pi i j/5) for j <= 5, exp(2 pi i j/5)/phi for j >= 6.
BigComplex r_catalog(int j, const PrecisionContext& ctx);

// Catalog index of R(exp(2 pi i c/d)) for coprime c, d, with the fifth root
// taken on the angle c/d as written. Only c and d mod 5 matter, so residues
// may be passed directly.
int catalog_index_for_residues(long c, long d);

struct BoundaryQuad {
  BigComplex P_m2, P_m1, Q_m2, Q_m1;
};

BoundaryQuad boundary_quad(const RootOfUnity& x, const PrecisionContext& ctx);

// (P_n, Q_n) from (P_{n-m}, Q_{n-m}).
std::pair<BigComplex, BigComplex> block_step(const BoundaryQuad& quad, const BigComplex& P_nm, const BigComplex& Q_nm);

// (b_r, b'_r) with Q_{qm+r} = b_r phi^q + b'_r phibar^q.
std::pair<BigComplex, BigComplex> binet_coefficients(const BigComplex& Q_r, const BigComplex& Q_mr,
                                                     const PrecisionContext& ctx);
std::pair<BigComplex, BigComplex> binet_coefficients(const RootOfUnity& x, long r, const PrecisionContext& ctx);

struct GeneralLimit {
  bool to_zero = true;  // otherwise the general limit is infinity
  BigReal M, v, w;
  BigReal block_ratio;  // |P_{m-1}/Q_{m-2}|
};

GeneralLimit general_limit_class(const RootOfUnity& x, const PrecisionContext& ctx);

nlohmann::json catalog_json(long m_min, long m_max, const PrecisionContext& ctx);

}  // namespace rrlab::schur
