#include "sczech/dedekind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sczech/error.hpp"

namespace sczech {

namespace {

void require_nondegenerate(const LatticeInvariants& inv) {
  if (inv.field.is_degenerate())
    throw Error(ErrorKind::DegenerateField, "E_2(0) = 0 for d_K = " + std::to_string(inv.field.d_K));
}

cplx sum_against_table(const TorsionCache& table, QuadInt d, const LatticeInvariants& inv) {
  const auto& f = inv.field;
  const IdealHNF& h = table.hnf();
  cplx sum = 0.0;
  std::size_t i = 0;
  for (i64 y = 0; y < h.h22; ++y) {
    for (i64 x = 0; x < h.h11; ++x, ++i) {
      const cplx er = table.by_index(i);
      if (er == cplx{}) continue;
      sum += table.at(mul(QuadInt{x, y}, d, f)) * er;
    }
  }
  return sum / embed(table.modulus(), f);
}

}  // namespace

Rational sawtooth(Rational x) {
  if (x.denominator() == 1) return Rational(0);
  const i64 fl = x.numerator() >= 0 ? x.numerator() / x.denominator()
                                    : -((-x.numerator() + x.denominator() - 1) / x.denominator());
  return x - Rational(fl) - Rational(1, 2);
}

Rational classical_s(i64 c, i64 d) {
  if (c <= 0) throw Error(ErrorKind::NonPositiveModulus, "c must be positive");
  if (std::gcd(c, d) != 1) throw Error(ErrorKind::NotCoprime, "gcd(c, d) != 1");
  Rational s(0);
  for (i64 n = 1; n <= c; ++n) s += sawtooth(Rational(n, c)) * sawtooth(Rational(n * d, c));
  return s;
}

cplx elliptic_D(QuadInt c, QuadInt d, const LatticeInvariants& inv) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "D(c, d) needs c != 0");
  return sum_against_table(TorsionCache(c, inv), d, inv);
}

cplx elliptic_D(const TorsionCache& table, QuadInt d, const LatticeInvariants& inv) {
  return sum_against_table(table, d, inv);
}

cplx elliptic_D_direct(QuadInt c, QuadInt d, const LatticeInvariants& inv) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "D(c, d) needs c != 0");
  const auto& f = inv.field;
  cplx sum = 0.0;
  for (const auto& r : residues_mod(c, f))
    sum += E1(torsion_point(mul(r, d, f), c, f), inv) * E1(torsion_point(r, c, f), inv);
  return sum / embed(c, f);
}

namespace {

PhiValue phi_c_zero(const SL2Matrix& m, const LatticeInvariants& inv) {
  const cplx ratio = embed(m.b, inv.field) / embed(m.d, inv.field);
  return {inv.s2 * imag_part_I(ratio), m, PhiBranch::CZero};
}

}  // namespace

PhiValue phi(const SL2Matrix& m, const LatticeInvariants& inv) {
  if (m.c.is_zero()) return phi_c_zero(m, inv);
  return phi(m, TorsionCache(m.c, inv), inv);
}

PhiValue phi(const SL2Matrix& m, const TorsionCache& table, const LatticeInvariants& inv) {
  const auto& f = inv.field;
  const cplx e2 = inv.s2;
  if (m.c.is_zero()) return phi_c_zero(m, inv);
  const cplx trace_ratio = embed(m.a + m.d, f) / embed(m.c, f);
  const cplx D = table.modulus() == m.c ? elliptic_D(table, m.d, inv) : elliptic_D(m.c, m.d, inv);
  return {e2 * imag_part_I(trace_ratio) - D, m, PhiBranch::CNonzero};
}

cplx normalize_by_e2(cplx v, const LatticeInvariants& inv) {
  require_nondegenerate(inv);
  return v / (2.0 * cplx{0.0, 1.0} * inv.s2);
}

double phi_tilde(const SL2Matrix& m, const LatticeInvariants& inv) {
  require_nondegenerate(inv);
  return normalize_by_e2(phi(m, inv).value, inv).real();
}

double d_tilde(QuadInt c, QuadInt d, const LatticeInvariants& inv) {
  require_nondegenerate(inv);
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "D~(c, d) needs c != 0");
  if (!is_unimodular(c, d, inv.field)) throw Error(ErrorKind::NotUnimodular, "(c, d) != 1");
  return normalize_by_e2(elliptic_D(c, d, inv), inv).real();
}

ModulusTerms modulus_terms(QuadInt c, const LatticeInvariants& inv) {
  ModulusTerms out;
  out.c = c;
  const TorsionCache table(c, inv);
  for (const auto& d : coprime_residues(c, inv.field)) {
    out.gammas.push_back(bezout_sl2(c, d, inv.field));
    out.D.push_back(elliptic_D(table, d, inv));
  }
  return out;
}

double d_tilde_of(const ModulusTerms& t, std::size_t i, const LatticeInvariants& inv) {
  return normalize_by_e2(t.D[i], inv).real();
}

double phi_tilde_of(const ModulusTerms& t, std::size_t i, const LatticeInvariants& inv) {
  const auto& g = t.gammas[i];
  const cplx trace_ratio = embed(g.a + g.d, inv.field) / embed(g.c, inv.field);
  // Phi~ = Im((a+d)/c) - D~(c, d) on the c != 0 branch.
  return trace_ratio.imag() - d_tilde_of(t, i, inv);
}

namespace {

void tally(PhiTildeDistribution::Tally& t, double v, double step, double tol) {
  t.min = t.count == 0 ? v : std::min(t.min, v);
  t.max = t.count == 0 ? v : std::max(t.max, v);
  ++t.count;
  if (std::abs(v - std::round(v)) < tol) ++t.integral;
  if (std::abs(v / step - std::round(v / step)) < tol) ++t.multiple_of_step;
}

}  // namespace

PhiTildeDistribution phi_tilde_distribution(i64 max_norm, const LatticeInvariants& inv, double tol) {
  require_nondegenerate(inv);
  PhiTildeDistribution out;
  out.step = inv.field.area;
  out.tol = tol;
  const double X = std::sqrt(static_cast<double>(max_norm)) + 1e-9;
  for (const auto& c : enumerate_by_norm(X, inv.field)) {
    const ModulusTerms t = modulus_terms(c, inv);
    for (std::size_t i = 0; i < t.size(); ++i) tally(out.nonzero_c, phi_tilde_of(t, i, inv), out.step, tol);
  }
  for (const auto& a : enumerate_by_norm(X, inv.field))
    for (QuadInt s : {a, -a}) tally(out.translations, phi_tilde(translation(s), inv), out.step, tol);
  return out;
}

}  // namespace sczech
