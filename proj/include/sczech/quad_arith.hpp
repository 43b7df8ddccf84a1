#pragma once

// Exact arithmetic in the ring of integers O_K of an imaginary quadratic
// field K, with elements written on the integral basis (1, w).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sczech {

using i64 = std::int64_t;
using cplx = std::complex<double>;

/// Element a + b*w of O_K.
struct QuadInt {
  i64 a = 0;
  i64 b = 0;

  constexpr QuadInt() = default;
  constexpr QuadInt(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  friend constexpr bool operator==(const QuadInt&, const QuadInt&) = default;
  friend constexpr auto operator<=>(const QuadInt&, const QuadInt&) = default;

  friend constexpr QuadInt operator+(QuadInt x, QuadInt y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr QuadInt operator-(QuadInt x, QuadInt y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr QuadInt operator-(QuadInt x) { return {-x.a, -x.b}; }
  friend constexpr QuadInt operator*(i64 k, QuadInt x) { return {k * x.a, k * x.b}; }
};

/// The field K = Q(sqrt(d_K)) together with the lattice data of O_K = Z + Z*w.
/// w satisfies w^2 = trace*w - norm_w.
struct FieldParams {
  i64 d_K = 0;
  cplx omega;
  i64 trace = 0;   // Tr(w)
  i64 norm_w = 0;  // N(w)
  double area = 0; // Im(w) = sqrt|d_K| / 2
  std::vector<QuadInt> units;

  bool is_degenerate() const { return d_K == -3 || d_K == -4; }
};

/// Column-style Hermite normal form of a full-rank sublattice of Z^2:
/// basis (h11, 0) and (h12, h22) with 0 <= h12 < h11.
struct IdealHNF {
  i64 h11 = 1;
  i64 h12 = 0;
  i64 h22 = 1;

  i64 index() const { return h11 * h22; }
  bool is_unit_ideal() const { return index() == 1; }
  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
};

/// Unimodular matrix (a b; c d) over O_K.
struct SL2Matrix {
  QuadInt a, b, c, d;
  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;
};

bool is_fundamental_discriminant(i64 d);
FieldParams make_field(i64 d_K);

QuadInt mul(QuadInt x, QuadInt y, const FieldParams& f);
QuadInt conj(QuadInt x, const FieldParams& f);
i64 norm(QuadInt z, const FieldParams& f);
i64 trace(QuadInt z, const FieldParams& f);
cplx embed(QuadInt z, const FieldParams& f);
bool is_unit(QuadInt z, const FieldParams& f);

/// Exact quotient x / y; throws NotUnimodular-free InvalidArgument if y does not divide x.
QuadInt exact_div(QuadInt x, QuadInt y, const FieldParams& f);
bool divides(QuadInt y, QuadInt x, const FieldParams& f);

SL2Matrix mul(const SL2Matrix& m, const SL2Matrix& n, const FieldParams& f);
SL2Matrix inverse(const SL2Matrix& m);
QuadInt det(const SL2Matrix& m, const FieldParams& f);
SL2Matrix translation(QuadInt t);

/// HNF of the Z-module spanned by the given vectors (coordinates on (1, w)).
IdealHNF hnf_of_module(std::span<const QuadInt> gens);
/// HNF of the O_K-ideal generated by the given elements.
IdealHNF ideal_hnf(std::span<const QuadInt> gens, const FieldParams& f);
IdealHNF principal_hnf(QuadInt c, const FieldParams& f);

bool contains(const IdealHNF& h, QuadInt z);
/// Canonical representative of z modulo the module, inside the HNF box
/// {x + y*w : 0 <= x < h11, 0 <= y < h22}.
QuadInt reduce(const IdealHNF& h, QuadInt z);
/// Position of a reduced element in the y-major box order used by residues_mod.
std::size_t box_index(const IdealHNF& h, QuadInt reduced);

bool is_unimodular(QuadInt c, QuadInt d, const FieldParams& f);
SL2Matrix bezout_sl2(QuadInt c, QuadInt d, const FieldParams& f);

std::vector<QuadInt> residues_mod(QuadInt c, const FieldParams& f);
std::vector<QuadInt> coprime_residues(QuadInt c, const FieldParams& f);
/// N(c) * prod_{p | (c)} (1 - 1/N(p)), from the factorisation of (c) into prime ideals.
i64 euler_phi_K(QuadInt c, const FieldParams& f);

/// Canonical member of {z, -z}: first nonzero coordinate positive.
QuadInt sign_normalize(QuadInt z);
/// All c != 0 with |c| < X, one per pair {c, -c}, sorted by (norm, a, b).
std::vector<QuadInt> enumerate_by_norm(double X, const FieldParams& f);

int kronecker_symbol(i64 d, i64 n);
double zeta_K(const FieldParams& f, double precision = 1e-14);
double humbert_volume(const FieldParams& f);

}  // namespace sczech
