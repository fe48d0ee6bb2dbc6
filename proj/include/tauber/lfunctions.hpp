#pragma once

#include <complex>
#include <cstdint>

#include "tauber/fields.hpp"

namespace tauber::lfun {

using cplx = std::complex<double>;

struct EvalOptions {
  int euler_maclaurin_terms = 50;  // minimal shift M; grown with |s| as needed
  int bernoulli_order = 30;        // 2B
  double target_abs_error = 1e-12;

  void validate() const;
};

// Bernoulli number B_k as a double (exact rational internally).
double bernoulli(int k);

// sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin. a in (0, 1].
cplx hurwitz_zeta(cplx s, double a, const EvalOptions& opts = {});
cplx riemann_zeta(cplx s, const EvalOptions& opts = {});
double digamma(double x);

// L(s, chi) = m^{-s} sum_r chi(r) zeta_H(s, r/m) for primitive chi; s = 1 uses digamma.
cplx dirichlet_L(cplx s, const fields::DirichletCharacter& chi, const EvalOptions& opts = {});

// Product of L(s, chi*) over all characters mod d, reduced to primitive cores.
cplx dedekind_zeta_cyclotomic(std::int64_t d, cplx s, const EvalOptions& opts = {});

// Residue at s = 1: product of L(1, chi*) over nontrivial chi mod d.
double dedekind_residue(std::int64_t d, const EvalOptions& opts = {});

// sum_{p > p0, p = r (mod q)} p^{-s} for real s > 1, via Moebius inversion of
// log L(ks, chi^k) with the Euler factors at p <= p0 removed. Requires every prime
// factor of q to be <= p0.
double prime_zeta_class(std::int64_t q, std::int64_t r, double s, std::int64_t p0, const EvalOptions& opts = {});

}  // namespace tauber::lfun
