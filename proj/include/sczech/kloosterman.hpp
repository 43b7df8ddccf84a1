#pragma once

// Character-twisted Selberg-Kloosterman sums for PSL_2(O_K) at the cusp
// infinity, the character chi_alpha = e(alpha * Phi~), and the comparison of
// Kloosterman sums against exponential sums of normalised Dedekind sums.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "sczech/dedekind.hpp"

namespace sczech {

/// Dual basis of (1, w) for the pairing <u, v> = Im(u conj(v)).
struct DualLatticeBasis {
  cplx m1;
  cplx m2;
};

double pairing(cplx u, cplx v);
DualLatticeBasis dual_basis(const FieldParams& f);
cplx dual_element(const DualLatticeBasis& basis, i64 k1, i64 k2);
/// True when <m, 1> and <m, w> are integers to within tol.
bool in_dual_lattice(cplx m, const FieldParams& f, double tol = 1e-9);

/// How the character and the phase combine in a Kloosterman term. C1 is the
/// literal term conj(chi(gamma)) * e~(...); C3 uses chi(gamma) unconjugated
/// (equivalently alpha -> -alpha inside the character only). C2 and C4 are
/// the complex conjugates of the C1 and C3 sums.
enum class Convention { C1, C2, C3, C4 };
inline constexpr std::array<Convention, 4> kAllConventions{Convention::C1, Convention::C2, Convention::C3,
                                                           Convention::C4};
std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view s);

/// e(x) = exp(2 pi i x) and e~(z) = exp(2 pi i Im z).
cplx e_of(cplx x);
cplx e_tilde(cplx z);

cplx chi_alpha(const SL2Matrix& m, cplx alpha, const LatticeInvariants& inv);

/// S_inf(m, n, c, chi_alpha) over the canonical representatives of c.
cplx s_infinity(cplx m, cplx n, QuadInt c, cplx alpha, const LatticeInvariants& inv,
                Convention conv = Convention::C3);
/// Same sum over precomputed terms for c.
cplx s_infinity(const ModulusTerms& terms, cplx m, cplx n, cplx alpha, const LatticeInvariants& inv,
                Convention conv = Convention::C3);
/// Same sum over arbitrary bottom-row representatives (used to probe
/// representative independence). Each matrix must have bottom row (c, d).
cplx s_infinity_over(std::span<const SL2Matrix> gammas, cplx m, cplx n, cplx alpha,
                     const LatticeInvariants& inv, Convention conv);

struct IdentityRecord {
  QuadInt c;
  double r = 0;
  double m = 0;      // floor(-r), used for both m and n
  double alpha = 0;  // -r + floor(-r)
  Convention convention = Convention::C3;
  cplx lhs;          // sum_d e(r D~(c, d))
  cplx rhs;          // S_inf(m, m, c, chi_alpha)
  double residual = 0;
  cplx rhs_unshifted;           // same with alpha = -r and m = n = 0
  double residual_unshifted = 0;
};

IdentityRecord identity_check(QuadInt c, double r, const LatticeInvariants& inv,
                              Convention conv = Convention::C3);
IdentityRecord identity_check(const ModulusTerms& terms, double r, const LatticeInvariants& inv,
                              Convention conv = Convention::C3);

struct ConventionSweep {
  Convention selected = Convention::C3;
  std::array<double, 4> identity_residual{};    // max over the probe set
  std::array<double, 4> invariance_residual{};  // max change under d -> d + t c
  std::array<bool, 4> admissible{};
  double max_norm = 0;
  std::vector<double> r_values;
};

/// Selects the convention used everywhere: conventions whose sums are
/// representative independent for m, n in the dual lattice are admissible,
/// and among those the smallest identity residual on small moduli wins
/// (ties go to the lower index).
ConventionSweep sweep_conventions(const LatticeInvariants& inv, i64 max_norm = 10);

cplx zeta_partial(cplx m, cplx n, cplx s, cplx alpha, double X, const LatticeInvariants& inv,
                  Convention conv = Convention::C3, unsigned jobs = 1);

struct Theorem2Probe {
  cplx m, n, alpha;
  Convention convention = Convention::C3;
  std::vector<double> x;
  std::vector<cplx> partial;  // A(x) = sum_{|c| <= x} S / |c|^2, one c per +-pair
  double exponent = 0;
  double intercept = 0;
  std::vector<double> residuals;
};

Theorem2Probe theorem2_probe(cplx m, cplx n, cplx alpha, std::span<const double> x_grid,
                             const LatticeInvariants& inv, Convention conv = Convention::C3,
                             unsigned jobs = 1);

}  // namespace sczech
