#pragma once

// Slow reference implementations used only by the tests. They deliberately
// avoid the library's HNF, residue and q-series code paths.

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "sczech/dedekind.hpp"

namespace oracle {

using sczech::cplx;
using sczech::FieldParams;
using sczech::i64;
using sczech::QuadInt;

/// E1(x) as sum over w in L of (w+x)^-1 exp(-|w+x|^2 / R^2). The regulator
/// converges to the s -> 0 continuation exponentially fast in R.
inline cplx e1_gaussian(cplx x, const FieldParams& f, double R = 6.0) {
  const double reach = 8.0 * R;
  const i64 bmax = static_cast<i64>(reach / f.area) + 2;
  cplx sum = 0;
  for (i64 b = -bmax; b <= bmax; ++b) {
    const double y = static_cast<double>(b) * f.omega.imag() + x.imag();
    if (std::abs(y) > reach) continue;
    const double x0 = static_cast<double>(b) * f.omega.real() + x.real();
    const i64 a0 = static_cast<i64>(std::floor(-x0 - reach)), a1 = static_cast<i64>(std::ceil(-x0 + reach));
    for (i64 a = a0; a <= a1; ++a) {
      const cplx z{static_cast<double>(a) + x0, y};
      const double n2 = std::norm(z);
      if (n2 == 0) continue;
      sum += std::exp(-n2 / (R * R)) / z;
    }
  }
  return sum;
}

/// Ring product by the defining relation w^2 = Tr(w) w - N(w).
inline QuadInt ring_mul(QuadInt x, QuadInt y, const FieldParams& f) {
  return {x.a * y.a - x.b * y.b * f.norm_w, x.a * y.b + x.b * y.a + x.b * y.b * f.trace};
}

inline i64 ring_norm(QuadInt z, const FieldParams& f) {
  const cplx e = static_cast<double>(z.a) + static_cast<double>(z.b) * f.omega;
  return std::llround(std::norm(e));
}

/// Index in O_K of the ideal (c, d): gcd of the 2x2 minors of c, cw, d, dw.
inline i64 ideal_index(QuadInt c, QuadInt d, const FieldParams& f) {
  const QuadInt w{0, 1};
  const QuadInt v[4] = {c, ring_mul(c, w, f), d, ring_mul(d, w, f)};
  i64 g = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g = std::gcd(g, v[i].a * v[j].b - v[i].b * v[j].a);
  return g;
}

inline bool coprime(QuadInt c, QuadInt d, const FieldParams& f) { return ideal_index(c, d, f) == 1; }

/// N * O_K lies in c O_K with index N, so each class mod c has exactly N
/// points in the box [0, N)^2.
inline std::vector<QuadInt> box(QuadInt c, const FieldParams& f) {
  const i64 n = ring_norm(c, f);
  std::vector<QuadInt> out;
  for (i64 y = 0; y < n; ++y)
    for (i64 x = 0; x < n; ++x) out.push_back({x, y});
  return out;
}

inline i64 unit_count_mod(QuadInt c, const FieldParams& f) {
  const i64 n = ring_norm(c, f);
  i64 hits = 0;
  for (const auto& z : box(c, f)) hits += coprime(c, z, f) ? 1 : 0;
  return hits / n;
}

/// (1/c) sum_{r mod c} E1(r d / c) E1(r / c), residues from the box.
inline cplx dedekind_D(QuadInt c, QuadInt d, const sczech::LatticeInvariants& inv) {
  const FieldParams& f = inv.field;
  const cplx ce = static_cast<double>(c.a) + static_cast<double>(c.b) * f.omega;
  const cplx de = static_cast<double>(d.a) + static_cast<double>(d.b) * f.omega;
  // r is 0 mod c when r conj(c) is divisible by N(c)
  const QuadInt cbar{c.a + c.b * f.trace, -c.b};
  const i64 n = ring_norm(c, f);
  cplx sum = 0;
  for (const auto& r : box(c, f)) {
    const QuadInt t = ring_mul(r, cbar, f);
    if (t.a % n == 0 && t.b % n == 0) continue;
    const cplx re = static_cast<double>(r.a) + static_cast<double>(r.b) * f.omega;
    sum += sczech::E1(re * de / ce, inv) * sczech::E1(re / ce, inv);
  }
  return sum / (ce * static_cast<double>(n));
}

/// 4 c^2 s(c, d) in integers: ((k/c)) = (2k - c) / (2c) for 0 < k < c.
inline sczech::Rational classical_s(i64 c, i64 d) {
  i64 acc = 0;
  for (i64 n = 1; n < c; ++n) {
    const i64 a = n % c, b = ((n * d) % c + c) % c;
    if (a == 0 || b == 0) continue;
    acc += (2 * a - c) * (2 * b - c);
  }
  return sczech::Rational(acc, 4 * c * c);
}

/// zeta(2) L(2, chi) with the character summed directly.
inline double zeta_K2(i64 d_K, i64 terms = 2000000) {
  double l = 0;
  for (i64 n = terms; n >= 1; --n) l += sczech::kronecker_symbol(d_K, n) / (static_cast<double>(n) * static_cast<double>(n));
  return std::numbers::pi * std::numbers::pi / 6.0 * l;
}

}  // namespace oracle
