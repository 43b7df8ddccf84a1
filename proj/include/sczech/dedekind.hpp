#pragma once

// Classical Dedekind sums, elliptic Dedekind sums D(c, d) and the additive
// homomorphism Phi : SL_2(O_K) -> C together with their normalisations by
// 2 i E_2(0).

#include <boost/rational.hpp>

#include "sczech/kronecker_eisenstein.hpp"

namespace sczech {

using Rational = boost::rational<i64>;

/// Sawtooth ((x)) for rational x; zero on the integers.
Rational sawtooth(Rational x);
/// s(c, d) = sum_{n=1}^{c} ((n/c)) ((n d / c)), exact.
Rational classical_s(i64 c, i64 d);

/// D(c, d) = (1/c) sum_{r in L/cL} E_1(r d / c) E_1(r / c).
cplx elliptic_D(QuadInt c, QuadInt d, const LatticeInvariants& inv);
/// Same sum against a prebuilt table for c.
cplx elliptic_D(const TorsionCache& table, QuadInt d, const LatticeInvariants& inv);
/// Same sum with a pointwise E_1 call per term (no table).
cplx elliptic_D_direct(QuadInt c, QuadInt d, const LatticeInvariants& inv);

enum class PhiBranch { CZero, CNonzero };

struct PhiValue {
  cplx value;
  SL2Matrix matrix;
  PhiBranch branch = PhiBranch::CZero;
};

/// I(z) = z - conj(z).
inline cplx imag_part_I(cplx z) { return {0.0, 2.0 * z.imag()}; }

PhiValue phi(const SL2Matrix& m, const LatticeInvariants& inv);
/// Uses the table when its modulus equals m.c.
PhiValue phi(const SL2Matrix& m, const TorsionCache& table, const LatticeInvariants& inv);

/// v / (2 i E_2(0)); throws DegenerateField for d_K in {-3, -4}.
cplx normalize_by_e2(cplx v, const LatticeInvariants& inv);

double phi_tilde(const SL2Matrix& m, const LatticeInvariants& inv);
/// Real part of D(c, d) / (2 i E_2(0)) for a unimodular pair.
double d_tilde(QuadInt c, QuadInt d, const LatticeInvariants& inv);

/// Per-modulus data shared by the Kloosterman and equidistribution code:
/// every coprime residue d with its Bezout matrix and D(c, d).
struct ModulusTerms {
  QuadInt c;
  std::vector<SL2Matrix> gammas;  // bottom rows (c, d), d canonical
  std::vector<cplx> D;            // D(c, d)

  std::size_t size() const { return gammas.size(); }
};

ModulusTerms modulus_terms(QuadInt c, const LatticeInvariants& inv);

/// D~ and Phi~ for one entry of ModulusTerms.
double d_tilde_of(const ModulusTerms& t, std::size_t i, const LatticeInvariants& inv);
double phi_tilde_of(const ModulusTerms& t, std::size_t i, const LatticeInvariants& inv);

/// Where the values of Phi~ land: integers, or multiples of Im(w) = sqrt|d_K|/2.
/// Matrices with c != 0 (Bezout completions of all pairs with norm(c) <= max_norm)
/// and translations T_a (norm(a) <= max_norm) are tallied separately.
struct PhiTildeDistribution {
  struct Tally {
    i64 count = 0;
    i64 integral = 0;        // |v - round(v)| < tol
    i64 multiple_of_step = 0; // v / step integral
    double min = 0;
    double max = 0;
  };
  double step = 0;
  double tol = 0;
  Tally nonzero_c;
  Tally translations;
};

PhiTildeDistribution phi_tilde_distribution(i64 max_norm, const LatticeInvariants& inv, double tol = 1e-7);

}  // namespace sczech
