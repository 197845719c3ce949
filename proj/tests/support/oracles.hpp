#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

// Reference computations for tests. Nothing here calls into rrlab; each
// oracle redoes its computation with plain GMP/MPFR or std::complex.
namespace oracle {

// F_n by an iterative loop, F_0 = 0, F_1 = 1.
mpz_class fib(unsigned long n);

// (c_i, d_i) for i = 0..terms.size(), [0; a_1, ...] with c_0/d_0 = 0/1.
std::vector<std::pair<mpz_class, mpz_class>> convergents(const std::vector<long>& terms);

// Exact (P_n, Q_n) at an integer point x, n = 0..N.
std::vector<std::pair<mpz_class, mpz_class>> pq_at_integer(long x, std::size_t N);

// (P_n, Q_n) in long double complex arithmetic, n = 0..N.
std::vector<std::pair<std::complex<long double>, std::complex<long double>>> pq_lowprec(
    std::complex<long double> x, std::size_t N);

// RAII wrapper for an MPFR value at a fixed precision.
class Mpfr {
 public:
  explicit Mpfr(long bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// cos(2 pi t) and sin(2 pi t) through mpfr_sin_cos on a directly computed pi.
std::pair<Mpfr, Mpfr> cis(const mpq_class& t, long bits);

// phi = (1 + sqrt 5)/2 through mpfr_sqrt.
Mpfr phi(long bits);

// |a - b| where a is given as an MPFR pair and b as decimal strings.
double abs_diff(const Mpfr& re, const Mpfr& im, const std::string& b_re, const std::string& b_im, long bits);

}  // namespace oracle
