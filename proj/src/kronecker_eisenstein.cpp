#include "sczech/kronecker_eisenstein.hpp"

#include <cmath>
#include <numbers>

#include "sczech/error.hpp"

namespace sczech {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kMaxTerms = 200;

i64 centered_mod(i64 x, i64 m) {
  i64 r = x % m;
  if (r < 0) r += m;
  if (2 * r >= m) r -= m;
  return r;
}

// Zeta series of Z + Z*tau, valid for |Im z| < Im tau:
// zeta(z) = eta(1) z + pi cot(pi z) + sum_n 4 pi q^2n/(1-q^2n) sin(2 pi n z).
cplx zeta_series(cplx z, const LatticeInvariants& inv) {
  const cplx e = std::exp(2.0 * kPi * kI * z);
  const cplx einv = 1.0 / e;
  cplx ep = 1.0;
  cplx em = 1.0;
  cplx sum = 0.0;
  for (const cplx& c : inv.zeta_coef) {
    ep *= e;
    em *= einv;
    sum += c * (ep - em);
  }
  return inv.eta_one * z + kPi / std::tan(kPi * z) + sum / (2.0 * kI);
}

struct Reduction {
  cplx z0;
  i64 n1 = 0;  // multiple of 1
  i64 nw = 0;  // multiple of w
};

Reduction reduce_float(cplx z, const LatticeInvariants& inv) {
  const double v = z.imag() / inv.tau.imag();
  const i64 nw = std::llround(v);
  const cplx z1 = z - static_cast<double>(nw) * inv.tau;
  const i64 n1 = std::llround(z1.real() - (v - static_cast<double>(nw)) * inv.tau.real());
  return {z1 - static_cast<double>(n1), n1, nw};
}

}  // namespace

double LatticeInvariants::pi_over_area() const { return kPi / area; }

LatticeInvariants lattice_invariants(const FieldParams& f, double precision) {
  LatticeInvariants inv;
  inv.field = f;
  inv.tau = f.omega;
  inv.area = f.area;

  const double im = inv.tau.imag();
  const cplx nome = std::exp(kPi * kI * inv.tau);  // q
  const cplx q2 = nome * nome;

  // Terms of the zeta series decay like exp(-pi n Im tau) on the reduced
  // strip |Im z| <= Im tau / 2; keep them until far below precision.
  const double target = std::max(precision, 1e-300) * 1e-2;
  int terms = 0;
  while (std::exp(-kPi * (terms + 1) * im) * 4 * kPi >= target) {
    if (++terms > kMaxTerms)
      throw Error(ErrorKind::PrecisionUnreachable, "zeta q-series needs more than 200 terms");
  }
  cplx qp = 1.0;
  for (int n = 1; n <= terms + 1; ++n) {
    qp *= q2;
    inv.zeta_coef.push_back(4.0 * kPi * qp / (1.0 - qp));
  }

  // eta(1) = -(pi^2/3) theta1'''(0)/theta1'(0) with
  // theta1(v) = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1) v).
  cplx num = 0.0;
  cplx den = 0.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double h = n + 0.5;
    const cplx qh = std::exp(kPi * kI * inv.tau * (h * h));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double k = 2.0 * n + 1.0;
    num += sign * k * k * k * qh;
    den += sign * k * qh;
    if (std::abs(qh) * k * k * k < 1e-18 * std::abs(num)) break;
  }
  inv.eta_one = (kPi * kPi / 3.0) * num / den;

  // Independent route: G_2(tau) = (pi^2/3)(1 - 24 sum sigma_1(n) q^(2n)).
  cplx g2sum = 0.0;
  cplx qn = 1.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    qn *= q2;
    i64 sigma = 0;
    for (int k = 1; k <= n; ++k)
      if (n % k == 0) sigma += k;
    const cplx term = static_cast<double>(sigma) * qn;
    g2sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(g2sum))) break;
  }
  inv.s2_divisor = (kPi * kPi / 3.0) * (1.0 - 24.0 * g2sum) - kPi / im;

  // eta(w) from the increment of the series across the strip.
  const cplx z0 = -0.5 * inv.tau + 0.1;
  inv.eta_omega = zeta_series(z0 + inv.tau, inv) - zeta_series(z0, inv);

  // eta(lambda) = s2*lambda + t*conj(lambda) on lambda = 1, w.
  const cplx w = inv.tau;
  const cplx wb = std::conj(w);
  inv.s2 = (inv.eta_one * wb - inv.eta_omega) / (wb - w);
  inv.t = (inv.eta_omega - w * inv.eta_one) / (wb - w);
  return inv;
}

TorsionPoint torsion_point(QuadInt r, QuadInt c, const FieldParams& f) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "torsion point with c = 0");
  const QuadInt num = mul(r, conj(c, f), f);
  return {num.a, num.b, norm(c, f)};
}

bool is_lattice_point(const TorsionPoint& z) { return z.p % z.den == 0 && z.q % z.den == 0; }

cplx embed(const TorsionPoint& z, const FieldParams& f) {
  const double den = static_cast<double>(z.den);
  return static_cast<double>(z.p) / den + (static_cast<double>(z.q) / den) * f.omega;
}

cplx weierstrass_zeta(cplx z, const LatticeInvariants& inv) {
  const Reduction red = reduce_float(z, inv);
  if (red.z0 == cplx{0.0, 0.0}) throw Error(ErrorKind::PoleAtLatticePoint, "zeta has a pole on L");
  return zeta_series(red.z0, inv) + static_cast<double>(red.n1) * inv.eta_one +
         static_cast<double>(red.nw) * inv.eta_omega;
}

cplx E1(cplx z, const LatticeInvariants& inv) {
  if (reduce_float(z, inv).z0 == cplx{0.0, 0.0}) return 0.0;
  return weierstrass_zeta(z, inv) - inv.s2 * z - inv.pi_over_area() * std::conj(z);
}

cplx E1(const TorsionPoint& z, const LatticeInvariants& inv) {
  if (is_lattice_point(z)) return 0.0;
  // E_1 is L-periodic, so evaluate on the exact centred representative.
  const TorsionPoint red{centered_mod(z.p, z.den), centered_mod(z.q, z.den), z.den};
  const cplx z0 = embed(red, inv.field);
  return zeta_series(z0, inv) - inv.s2 * z0 - inv.pi_over_area() * std::conj(z0);
}

double E2_0(const LatticeInvariants& inv) { return inv.s2.real(); }

TorsionCache::TorsionCache(QuadInt c, const LatticeInvariants& inv)
    : c_(c), hnf_(principal_hnf(c, inv.field)) {
  const auto residues = residues_mod(c, inv.field);
  values_.reserve(residues.size());
  for (const auto& r : residues) values_.push_back(E1(torsion_point(r, c, inv.field), inv));
}

TorsionCache e1_torsion_table(QuadInt c, const LatticeInvariants& inv) { return TorsionCache(c, inv); }

TorsionCache e1_torsion_table(QuadInt c, QuadInt /*d*/, const LatticeInvariants& inv) {
  return TorsionCache(c, inv);
}

}  // namespace sczech
