#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sczech/equidist.hpp"
#include "sczech/error.hpp"
#include "sczech/kloosterman.hpp"
#include "sczech/sampling.hpp"

using namespace sczech;

TEST_CASE("dual basis") {
  const auto f4 = make_field(-4);
  const DualLatticeBasis b4 = dual_basis(f4);
  // Z + Z i
  CHECK(std::abs(b4.m1 - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(b4.m2 - cplx(-1, 0)) < 1e-15);
  CHECK(pairing(cplx(0.3, 0.7), 1.0) == doctest::Approx(0.7));
  CHECK(pairing(cplx(0.3, 0.7), cplx(0, 1)) == doctest::Approx(-0.3));

  const auto f8 = make_field(-8);
  const DualLatticeBasis b8 = dual_basis(f8);
  CHECK(in_dual_lattice(cplx(1 / std::sqrt(2.0), 0), f8));
  CHECK(in_dual_lattice(cplx(0, 1), f8));
  CHECK_FALSE(in_dual_lattice(cplx(0.5, 0), f8));
  CHECK(pairing(1 / std::sqrt(2.0), f8.omega) == doctest::Approx(-1.0));

  Rng rng(kDefaultSeed);
  for (i64 d : {-4, -7, -8, -11, -20}) {
    const auto f = make_field(d);
    const DualLatticeBasis b = dual_basis(f);
    CHECK(std::abs(pairing(b.m1, 1.0) - 1) < 1e-12);
    CHECK(std::abs(pairing(b.m1, f.omega)) < 1e-15);
    CHECK(std::abs(pairing(b.m2, 1.0)) < 1e-12);
    CHECK(std::abs(pairing(b.m2, f.omega) - 1) < 1e-12);
    for (int i = 0; i < 20; ++i) {
      const QuadInt lam = random_element(rng, 100, f);
      const double p = pairing(dual_element(b, 3, -2), embed(lam, f));
      CHECK(std::abs(p - std::round(p)) < 1e-12);
    }
  }
}

TEST_CASE("conventions round trip") {
  for (Convention c : kAllConventions) CHECK(convention_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(convention_from_string("c5"), Error);
}

TEST_CASE("chi_alpha") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  Rng rng(kDefaultSeed);
  const double alpha = -3.7;
  for (int i = 0; i < 200; ++i) {
    const SL2Matrix m1 = random_sl2(rng, 100, f), m2 = random_sl2(rng, 100, f);
    CHECK(chi_alpha(m1, 0.0, inv) == cplx(1, 0));
    const cplx c1 = chi_alpha(m1, alpha, inv), c2 = chi_alpha(m2, alpha, inv);
    CHECK(std::abs(std::abs(c1) - 1) < 1e-12);
    CHECK(std::abs(chi_alpha(mul(m1, m2, f), alpha, inv) - c1 * c2) < 1e-7);
    CHECK(std::abs(c1 * chi_alpha(inverse(m1), alpha, inv) - 1.0) < 1e-9);
  }
  for (const QuadInt a : {QuadInt{1}, QuadInt{0, 1}, QuadInt{2, -3}}) {
    const cplx expected = e_of(alpha * embed(a, f).imag());
    CHECK(std::abs(chi_alpha(translation(a), alpha, inv) - expected) < 1e-10);
    // e(-Im(alpha conj(a))) for real alpha
    CHECK(std::abs(expected - e_of(-(alpha * std::conj(embed(a, f))).imag())) < 1e-10);
  }
  CHECK_THROWS_AS(chi_alpha(translation(QuadInt{1}), 0.5, lattice_invariants(make_field(-4))), Error);
}

TEST_CASE("trivial Kloosterman sums count coprime residues") {
  for (i64 d : {-7, -8}) {
    const auto inv = lattice_invariants(make_field(d));
    for (const auto& c : enumerate_by_norm(10.0 + 1e-9, inv.field)) {
      const cplx s = s_infinity(0.0, 0.0, c, 0.0, inv);
      CHECK(s.real() == doctest::Approx(static_cast<double>(coprime_residues(c, inv.field).size())));
      CHECK(std::abs(s.imag()) < 1e-12);
    }
  }
  const auto inv = lattice_invariants(make_field(-7));
  CHECK(s_infinity(0.0, 0.0, QuadInt{2}, 0.0, inv) == cplx(1, 0));
  for (const auto& u : inv.field.units) CHECK(std::abs(s_infinity(cplx(0.3, 1.1), cplx(-2, 0.4), u, 0.0, inv) - 1.0) < 1e-12);
  // the trivial-character sum also exists for the symmetric lattices
  const auto inv4 = lattice_invariants(make_field(-4));
  CHECK(s_infinity(0.0, 0.0, QuadInt{2}, 0.0, inv4) == cplx(2, 0));
  CHECK_THROWS_AS(s_infinity(0.0, 0.0, QuadInt{2}, 0.5, inv4), Error);
  CHECK_THROWS_AS(s_infinity(0.0, 0.0, QuadInt{0}, 0.5, inv), Error);
}

TEST_CASE("Kloosterman sums: trivial bound and representative invariance") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  const DualLatticeBasis b = dual_basis(f);
  Rng rng(kDefaultSeed);
  const auto cs = enumerate_by_norm(6.0, f);
  std::uniform_int_distribution<std::size_t> pick(0, cs.size() - 1);
  std::uniform_int_distribution<i64> coord(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const QuadInt c = cs[pick(rng)];
    const cplx m = dual_element(b, coord(rng), coord(rng)), n = dual_element(b, coord(rng), coord(rng));
    const double alpha = 0.37;
    const ModulusTerms t = modulus_terms(c, inv);
    const cplx base = s_infinity(t, m, n, alpha, inv);
    CHECK(std::abs(base) <= static_cast<double>(t.size()) + 1e-9);
    std::vector<SL2Matrix> shifted;
    for (const auto& g : t.gammas) shifted.push_back(mul(g, translation(random_element(rng, 30, f)), f));
    CHECK(std::abs(s_infinity_over(shifted, m, n, alpha, inv, Convention::C3) - base) < 1e-7);
  }
}

TEST_CASE("convention sweep") {
  const auto inv = lattice_invariants(make_field(-7));
  const ConventionSweep s = sweep_conventions(inv);
  CHECK(s.selected == Convention::C3);
  CHECK_FALSE(s.admissible[0]);
  CHECK(s.admissible[2]);
  for (i64 n : {5, 20}) CHECK(sweep_conventions(inv, n).selected == s.selected);
  CHECK(sweep_conventions(lattice_invariants(make_field(-8))).selected == s.selected);
}

TEST_CASE("identity: units, the alpha = -r form, and the exact shift factor") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  for (double r : {1.0, 2.0, 0.5, 1.7, std::numbers::sqrt2}) {
    for (const auto& u : f.units) {
      const IdentityRecord rec = identity_check(u, r, inv);
      CHECK(std::abs(rec.lhs - 1.0) < 1e-12);
      CHECK(rec.residual < 1e-12);
    }
    CHECK(identity_check(QuadInt{3}, r, inv).alpha == -r + std::floor(-r));
  }

  for (const auto& c : enumerate_by_norm(std::sqrt(50.0) + 1e-9, f)) {
    const ModulusTerms t = modulus_terms(c, inv);
    for (double r : {1.0, 2.0, 0.5, 1.7, std::numbers::sqrt2}) {
      const IdentityRecord rec = identity_check(t, r, inv);
      CHECK(rec.residual_unshifted < 1e-6);
      // rhs = sum_d e(r D~ + floor(-r) Phi~(gamma_d))
      const double k = std::floor(-r);
      cplx rebuilt = 0;
      for (std::size_t i = 0; i < t.size(); ++i) rebuilt += e_of(r * d_tilde_of(t, i, inv) + k * phi_tilde_of(t, i, inv));
      CHECK(std::abs(rec.rhs - rebuilt) < 1e-8);
    }
  }
}

TEST_CASE("identity lhs is the Weyl-sum inner sum") {
  const auto inv = lattice_invariants(make_field(-7));
  cplx total = 0;
  for (const auto& c : enumerate_by_norm(4.0, inv.field)) total += identity_check(c, 1.3, inv).lhs;
  CHECK(std::abs(weyl_sum(4.0, 1.3, 1, inv).sum - total) < 1e-9);
  cplx total2 = 0;
  for (const auto& c : enumerate_by_norm(4.0, inv.field)) total2 += identity_check(c, 2 * 1.3, inv).lhs;
  CHECK(std::abs(weyl_sum(4.0, 1.3, 2, inv).sum - total2) < 1e-9);
}

TEST_CASE("truncated Kloosterman zeta") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  CHECK(std::abs(zeta_partial(0.0, 0.0, 2.0, 0.0, 1.2, inv) - 1.0) < 1e-15);
  CHECK_THROWS_AS(zeta_partial(0.0, 0.0, 2.0, 0.0, 0.5, inv), Error);

  // alpha = 0, m = n = 0: sum of phi_K(c) / |c|^(2s), increasing in X; at s = 3
  // the tail past X is O(1/X^2)
  double prev = 0;
  for (double X : {2.0, 4.0, 8.0, 16.0}) {
    const double z = zeta_partial(0.0, 0.0, 3.0, 0.0, X, inv).real();
    double direct = 0;
    for (const auto& c : enumerate_by_norm(X, f)) {
      const double n = static_cast<double>(norm(c, f));
      direct += static_cast<double>(euler_phi_K(c, f)) / (n * n * n);
    }
    CHECK(z == doctest::Approx(direct).epsilon(1e-12));
    CHECK(z > prev);
    if (prev > 0) CHECK(z - prev <= 32.0 / (X * X));
    prev = z;
  }
  CHECK(std::abs(zeta_partial(0.0, 0.0, cplx(2, 3), 0.0, 10.0, inv)) < zeta_partial(0.0, 0.0, 2.0, 0.0, 10.0, inv).real() + 1e-12);
  CHECK(zeta_partial(0.0, 0.0, 2.0, 0.0, 10.0, inv, Convention::C3, 3) == zeta_partial(0.0, 0.0, 2.0, 0.0, 10.0, inv));
}

TEST_CASE("growth exponent probe on a small grid") {
  const auto inv = lattice_invariants(make_field(-7));
  const std::vector<double> grid{4, 6, 8, 10, 12};
  const Theorem2Probe degen = theorem2_probe(0.0, 0.0, 0.0, grid, inv);
  CHECK(degen.exponent == doctest::Approx(2.0).epsilon(0.1));
  CHECK(degen.partial.size() == grid.size());
  CHECK(degen.residuals.size() == grid.size());
  const double r = 1.7;
  const Theorem2Probe p = theorem2_probe(std::floor(-r), std::floor(-r), -r + std::floor(-r), grid, inv);
  CHECK(p.exponent <= 2.1);
  CHECK_THROWS_AS(theorem2_probe(0.0, 0.0, 0.0, std::vector<double>{5, 4}, inv), Error);
}
