#pragma once

// Eisenstein-Kronecker values of the lattice L = O_K = Z + Z*w at s = 0:
// E_2(0) and E_1 at arbitrary and torsion points, built on the Weierstrass
// zeta function of L.

#include <vector>

#include "sczech/quad_arith.hpp"

namespace sczech {

struct LatticeInvariants {
  FieldParams field;
  cplx tau;          // = w, lattice Z + Z*tau
  cplx eta_one;      // quasi-period eta(1), theta-series route
  cplx eta_omega;    // quasi-period eta(w), from zeta-series increments
  cplx s2;           // C-linear part of eta; equals E_2(0)
  cplx t;            // C-antilinear part of eta; analytically pi/A
  double area = 0;   // A = Im(w)
  cplx s2_divisor;   // G_2(tau) - pi/Im(tau) from the divisor-sum q-expansion
  std::vector<cplx> zeta_coef;  // 4*pi*q^(2n)/(1 - q^(2n)), n >= 1

  double pi_over_area() const;
};

LatticeInvariants lattice_invariants(const FieldParams& f, double precision = 1e-16);

/// Exact point (p + q*w) / den of Q(w); den > 0.
struct TorsionPoint {
  i64 p = 0;
  i64 q = 0;
  i64 den = 1;
};

/// r / c as an exact point of K.
TorsionPoint torsion_point(QuadInt r, QuadInt c, const FieldParams& f);
bool is_lattice_point(const TorsionPoint& z);
cplx embed(const TorsionPoint& z, const FieldParams& f);

/// Weierstrass zeta of L. Throws PoleAtLatticePoint when z reduces to 0.
cplx weierstrass_zeta(cplx z, const LatticeInvariants& inv);

/// E_1(z) = zeta(z) - E_2(0) z - (pi/A) conj(z); zero on L.
cplx E1(cplx z, const LatticeInvariants& inv);
cplx E1(const TorsionPoint& z, const LatticeInvariants& inv);

double E2_0(const LatticeInvariants& inv);

/// E_1(r/c) for every canonical residue r of O_K / cO_K. Lookups for any
/// r (including products r*d) go through the canonical residue of r.
class TorsionCache {
 public:
  TorsionCache(QuadInt c, const LatticeInvariants& inv);

  QuadInt modulus() const { return c_; }
  const IdealHNF& hnf() const { return hnf_; }
  std::size_t size() const { return values_.size(); }

  cplx at(QuadInt r) const { return values_[box_index(hnf_, reduce(hnf_, r))]; }
  /// Value at the residue in box position i (y-major order of residues_mod).
  cplx by_index(std::size_t i) const { return values_[i]; }

 private:
  QuadInt c_;
  IdealHNF hnf_;
  std::vector<cplx> values_;
};

TorsionCache e1_torsion_table(QuadInt c, const LatticeInvariants& inv);
/// Same table; it already covers every r*d/c since r*d reduces to a residue.
TorsionCache e1_torsion_table(QuadInt c, QuadInt d, const LatticeInvariants& inv);

}  // namespace sczech
