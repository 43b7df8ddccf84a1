#include "sczech/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sczech/error.hpp"
#include "sczech/parallel.hpp"

namespace sczech {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_zero(cplx z) { return z == cplx{}; }

cplx phi_tilde_for(const SL2Matrix& g, const LatticeInvariants& inv) {
  return normalize_by_e2(phi(g, inv).value, inv);
}

cplx term(const SL2Matrix& g, double phi_t, cplx m, cplx n, cplx alpha, const LatticeInvariants& inv,
          Convention conv) {
  const auto& f = inv.field;
  const cplx arg = (std::conj(m - alpha) * embed(g.a, f) + std::conj(n - alpha) * embed(g.d, f)) / embed(g.c, f);
  const cplx chi = is_zero(alpha) ? cplx{1.0} : e_of(alpha * phi_t);
  const bool conj_chi = conv == Convention::C1 || conv == Convention::C2;
  return (conj_chi ? std::conj(chi) : chi) * e_tilde(arg);
}

cplx finish(cplx sum, Convention conv) {
  return (conv == Convention::C2 || conv == Convention::C4) ? std::conj(sum) : sum;
}

void require_character(cplx alpha, const LatticeInvariants& inv) {
  if (!is_zero(alpha) && inv.field.is_degenerate())
    throw Error(ErrorKind::DegenerateField, "chi_alpha needs E_2(0) != 0");
}

}  // namespace

double pairing(cplx u, cplx v) { return (u * std::conj(v)).imag(); }

DualLatticeBasis dual_basis(const FieldParams& f) {
  // Solve <m_j, e_k> = delta_jk with e = (1, w). Writing m = x + i y:
  // <m, 1> = y and <m, w> = y Re w - x Im w.
  const double re = f.omega.real();
  const double im = f.omega.imag();
  // m1: y = 1, y re - x im = 0  -> x = re / im
  // m2: y = 0, -x im = 1        -> x = -1 / im
  return {cplx{re / im, 1.0}, cplx{-1.0 / im, 0.0}};
}

cplx dual_element(const DualLatticeBasis& basis, i64 k1, i64 k2) {
  return static_cast<double>(k1) * basis.m1 + static_cast<double>(k2) * basis.m2;
}

bool in_dual_lattice(cplx m, const FieldParams& f, double tol) {
  const double p1 = pairing(m, 1.0);
  const double p2 = pairing(m, f.omega);
  return std::abs(p1 - std::round(p1)) < tol && std::abs(p2 - std::round(p2)) < tol;
}

std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::C1: return "c1";
    case Convention::C2: return "c2";
    case Convention::C3: return "c3";
    case Convention::C4: return "c4";
  }
  return "c3";
}

Convention convention_from_string(std::string_view s) {
  for (auto c : kAllConventions)
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown convention '" + std::string(s) + "'");
}

cplx e_of(cplx x) { return std::exp(cplx{0.0, kTwoPi} * x); }

cplx e_tilde(cplx z) { return std::polar(1.0, kTwoPi * z.imag()); }

cplx chi_alpha(const SL2Matrix& m, cplx alpha, const LatticeInvariants& inv) {
  if (inv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "chi_alpha needs E_2(0) != 0");
  return e_of(alpha * phi_tilde_for(m, inv).real());
}

cplx s_infinity(cplx m, cplx n, QuadInt c, cplx alpha, const LatticeInvariants& inv, Convention conv) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "S_inf needs c != 0");
  require_character(alpha, inv);
  if (is_zero(alpha)) {
    // The character is trivial; D(c, d) is not needed.
    cplx sum = 0.0;
    for (const auto& d : coprime_residues(c, inv.field))
      sum += term(bezout_sl2(c, d, inv.field), 0.0, m, n, alpha, inv, conv);
    return finish(sum, conv);
  }
  return s_infinity(modulus_terms(c, inv), m, n, alpha, inv, conv);
}

cplx s_infinity(const ModulusTerms& terms, cplx m, cplx n, cplx alpha, const LatticeInvariants& inv,
                Convention conv) {
  require_character(alpha, inv);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double pt = is_zero(alpha) ? 0.0 : phi_tilde_of(terms, i, inv);
    sum += term(terms.gammas[i], pt, m, n, alpha, inv, conv);
  }
  return finish(sum, conv);
}

cplx s_infinity_over(std::span<const SL2Matrix> gammas, cplx m, cplx n, cplx alpha,
                     const LatticeInvariants& inv, Convention conv) {
  require_character(alpha, inv);
  cplx sum = 0.0;
  for (const auto& g : gammas) {
    if (g.c.is_zero()) throw Error(ErrorKind::ZeroModulus, "representative with c = 0");
    const double pt = is_zero(alpha) ? 0.0 : phi_tilde_for(g, inv).real();
    sum += term(g, pt, m, n, alpha, inv, conv);
  }
  return finish(sum, conv);
}

IdentityRecord identity_check(QuadInt c, double r, const LatticeInvariants& inv, Convention conv) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "identity check needs c != 0");
  if (inv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "D~ undefined for d_K in {-3, -4}");
  return identity_check(modulus_terms(c, inv), r, inv, conv);
}

IdentityRecord identity_check(const ModulusTerms& terms, double r, const LatticeInvariants& inv,
                              Convention conv) {
  if (inv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "D~ undefined for d_K in {-3, -4}");
  IdentityRecord rec;
  rec.c = terms.c;
  rec.r = r;
  rec.m = std::floor(-r);
  rec.alpha = -r + rec.m;
  rec.convention = conv;
  for (std::size_t i = 0; i < terms.size(); ++i) rec.lhs += e_of(r * d_tilde_of(terms, i, inv));
  rec.rhs = s_infinity(terms, rec.m, rec.m, rec.alpha, inv, conv);
  rec.residual = std::abs(rec.lhs - rec.rhs);
  rec.rhs_unshifted = s_infinity(terms, 0.0, 0.0, -r, inv, conv);
  rec.residual_unshifted = std::abs(rec.lhs - rec.rhs_unshifted);
  return rec;
}

ConventionSweep sweep_conventions(const LatticeInvariants& inv, i64 max_norm) {
  if (inv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "no character for d_K in {-3, -4}");
  const auto& f = inv.field;
  ConventionSweep sweep;
  sweep.max_norm = static_cast<double>(max_norm);
  sweep.r_values = {1.0, 0.5, 1.7, std::sqrt(2.0)};

  std::vector<ModulusTerms> moduli;
  for (const auto& c : enumerate_by_norm(std::sqrt(static_cast<double>(max_norm)) + 1e-9, f))
    moduli.push_back(modulus_terms(c, inv));

  const DualLatticeBasis dual = dual_basis(f);
  const cplx m = dual_element(dual, 1, -1);
  const cplx n = dual_element(dual, 2, 1);
  const cplx alpha = 0.37;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<i64> shift(-3, 3);

  for (std::size_t k = 0; k < kAllConventions.size(); ++k) {
    const Convention conv = kAllConventions[k];
    double id_res = 0;
    double inv_res = 0;
    for (const auto& t : moduli) {
      for (double r : sweep.r_values) id_res = std::max(id_res, identity_check(t, r, inv, conv).residual);
      // Shift every d by a multiple of c and recompute the Bezout partner.
      const cplx base = s_infinity(t, m, n, alpha, inv, conv);
      std::vector<SL2Matrix> shifted;
      for (const auto& g : t.gammas) {
        const QuadInt s{shift(rng), shift(rng)};
        const QuadInt d = g.d + mul(s, t.c, f);
        shifted.push_back({g.a, g.b + mul(s, g.a, f), t.c, d});
      }
      inv_res = std::max(inv_res, std::abs(s_infinity_over(shifted, m, n, alpha, inv, conv) - base));
    }
    sweep.identity_residual[k] = id_res;
    sweep.invariance_residual[k] = inv_res;
    sweep.admissible[k] = inv_res < 1e-7;
  }

  std::size_t best = kAllConventions.size();
  for (std::size_t k = 0; k < kAllConventions.size(); ++k) {
    if (!sweep.admissible[k]) continue;
    if (best == kAllConventions.size() || sweep.identity_residual[k] < sweep.identity_residual[best]) best = k;
  }
  if (best == kAllConventions.size()) {
    // Nothing is representative independent; fall back to the residual alone.
    best = static_cast<std::size_t>(std::min_element(sweep.identity_residual.begin(), sweep.identity_residual.end()) -
                                    sweep.identity_residual.begin());
  }
  sweep.selected = kAllConventions[best];
  return sweep;
}

cplx zeta_partial(cplx m, cplx n, cplx s, cplx alpha, double X, const LatticeInvariants& inv, Convention conv,
                  unsigned jobs) {
  if (!(X > 1)) throw Error(ErrorKind::InvalidArgument, "zeta_partial needs X > 1");
  require_character(alpha, inv);
  const auto cs = enumerate_by_norm(X, inv.field);
  const auto terms = ordered_map(cs.size(), jobs, [&](std::size_t i) {
    const double nc = static_cast<double>(norm(cs[i], inv.field));
    return s_infinity(m, n, cs[i], alpha, inv, conv) * std::exp(-s * std::log(nc));
  });
  cplx sum = 0.0;
  for (const auto& t : terms) sum += t;
  return sum;
}

Theorem2Probe theorem2_probe(cplx m, cplx n, cplx alpha, std::span<const double> x_grid,
                             const LatticeInvariants& inv, Convention conv, unsigned jobs) {
  require_character(alpha, inv);
  if (x_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty X grid");
  if (!std::is_sorted(x_grid.begin(), x_grid.end()) ||
      std::adjacent_find(x_grid.begin(), x_grid.end()) != x_grid.end())
    throw Error(ErrorKind::InvalidArgument, "X grid must be strictly increasing");

  Theorem2Probe probe{m, n, alpha, conv, {x_grid.begin(), x_grid.end()}, {}, 0, 0, {}};
  const auto& f = inv.field;
  const double xmax = x_grid.back();
  auto cs = enumerate_by_norm(xmax + 1e-9, f);
  std::erase_if(cs, [&](QuadInt c) { return static_cast<double>(norm(c, f)) > xmax * xmax; });
  const auto weighted = ordered_map(cs.size(), jobs, [&](std::size_t i) {
    return s_infinity(m, n, cs[i], alpha, inv, conv) / static_cast<double>(norm(cs[i], f));
  });

  // cs is sorted by norm, so partial sums are prefix sums.
  cplx acc = 0.0;
  std::size_t j = 0;
  for (double x : x_grid) {
    while (j < cs.size() && static_cast<double>(norm(cs[j], f)) <= x * x) acc += weighted[j++];
    probe.partial.push_back(acc);
  }

  // Least squares log|A| = intercept + exponent * log x.
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (std::abs(probe.partial[i]) == 0.0) continue;
    lx.push_back(std::log(x_grid[i]));
    ly.push_back(std::log(std::abs(probe.partial[i])));
  }
  if (lx.size() >= 2) {
    const double k = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    probe.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    probe.intercept = (sy - probe.exponent * sx) / k;
    for (std::size_t i = 0; i < lx.size(); ++i)
      probe.residuals.push_back(ly[i] - probe.intercept - probe.exponent * lx[i]);
  }
  return probe;
}

}  // namespace sczech
