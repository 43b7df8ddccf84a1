#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sczech/error.hpp"
#include "sczech/sampling.hpp"

using namespace sczech;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("E2(0) vanishes exactly for the two symmetric lattices") {
  CHECK(std::abs(E2_0(lattice_invariants(make_field(-4)))) < 1e-10);
  CHECK(std::abs(E2_0(lattice_invariants(make_field(-3)))) < 1e-10);
  for (i64 d : {-7, -8, -11, -19}) CHECK(std::abs(E2_0(lattice_invariants(make_field(d)))) > 1e-3);
  CHECK(E2_0(lattice_invariants(make_field(-7))) == doctest::Approx(0.934423537768746).epsilon(1e-12));
}

TEST_CASE("lattice invariants: two routes, Legendre, decomposition") {
  for (i64 d : {-3, -4, -7, -8, -11, -15, -19, -20}) {
    CAPTURE(d);
    const auto inv = lattice_invariants(make_field(d));
    CHECK(std::abs(inv.s2 - inv.s2_divisor) < 1e-10);
    CHECK(std::abs(inv.s2.imag()) < 1e-9);
    CHECK(std::abs(inv.t - pi / inv.area) < 1e-9);
    // eta(1) w - eta(w) = 2 pi i
    const cplx legendre = inv.eta_one * inv.field.omega - inv.eta_omega;
    CHECK(std::abs(std::abs(legendre) - 2 * pi) < 1e-10);
    CHECK(std::abs(legendre.real()) < 1e-10);
    // eta(lambda) = s2 lambda + t conj(lambda)
    CHECK(std::abs(inv.eta_omega - (inv.s2 * inv.field.omega + inv.t * std::conj(inv.field.omega))) < 1e-10);
    REQUIRE(!inv.zeta_coef.empty());
    CHECK(std::abs(inv.zeta_coef.back()) < 1e-16);
    CHECK(inv.zeta_coef.size() <= 20);
  }
}

TEST_CASE("lattice_invariants reports unreachable precision") {
  CHECK_THROWS_AS(lattice_invariants(make_field(-3), 0.0), Error);
  CHECK(lattice_invariants(make_field(-7), 1e-30).zeta_coef.size() > lattice_invariants(make_field(-7)).zeta_coef.size());
}

TEST_CASE("weierstrass zeta") {
  const auto inv = lattice_invariants(make_field(-7));
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 100; ++i) {
    const cplx z = random_point(rng, 2.0);
    const cplx v = weierstrass_zeta(z, inv);
    CHECK(std::abs(weierstrass_zeta(-z, inv) + v) < 1e-10);
    CHECK(std::abs(weierstrass_zeta(z + 1.0, inv) - v - inv.eta_one) < 1e-10);
    CHECK(std::abs(weierstrass_zeta(z + inv.field.omega, inv) - v - inv.eta_omega) < 1e-10);
  }
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const cplx z{h, 0.5 * h};
    CHECK(std::abs(weierstrass_zeta(z, inv) - 1.0 / z) < 10 * h);
  }
  CHECK_THROWS_AS(weierstrass_zeta(0.0, inv), Error);
  CHECK_THROWS_AS(weierstrass_zeta(inv.field.omega + 1.0, inv), Error);
}

TEST_CASE("E1 at lattice points and 2-torsion") {
  for (i64 d : {-3, -4, -7, -8, -11}) {
    const auto inv = lattice_invariants(make_field(d));
    CHECK(E1(0.0, inv) == cplx(0, 0));
    CHECK(E1(TorsionPoint{3, -2, 1}, inv) == cplx(0, 0));
    CHECK(std::abs(E1(0.5, inv)) < 1e-12);
    CHECK(std::abs(E1(inv.field.omega / 2.0, inv)) < 1e-12);
    CHECK(std::abs(E1((1.0 + inv.field.omega) / 2.0, inv)) < 1e-12);
  }
}

TEST_CASE("E1 periodicity, oddness, conjugation") {
  Rng rng(kDefaultSeed);
  for (i64 d : {-7, -8, -11, -20}) {
    const auto inv = lattice_invariants(make_field(d));
    for (int i = 0; i < 100; ++i) {
      const cplx z = random_point(rng, 1.5);
      const cplx v = E1(z, inv);
      CHECK(std::abs(E1(z + 1.0, inv) - v) < 1e-9);
      CHECK(std::abs(E1(z + inv.field.omega, inv) - v) < 1e-9);
      CHECK(std::abs(E1(-z, inv) + v) < 1e-10);
      CHECK(std::abs(E1(std::conj(z), inv) - std::conj(v)) < 1e-9);
    }
  }
}

TEST_CASE("E1 against the regularised lattice sum") {
  // slow oracle at w/3 for d_K = -8
  const auto inv8 = lattice_invariants(make_field(-8));
  const cplx x = inv8.field.omega / 3.0;
  CHECK(std::abs(E1(x, inv8) - oracle::e1_gaussian(x, inv8.field)) < 1e-6);

  Rng rng(kDefaultSeed);
  for (i64 d : {-4, -7, -11}) {
    const auto inv = lattice_invariants(make_field(d));
    for (int i = 0; i < 5; ++i) {
      const cplx z = random_point(rng, 0.5);
      CHECK(std::abs(E1(z, inv) - oracle::e1_gaussian(z, inv.field)) < 1e-8);
    }
  }
}

TEST_CASE("torsion points") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  const QuadInt c{2, 1}, r{1, 1};
  const TorsionPoint p = torsion_point(r, c, f);
  CHECK(std::abs(embed(p, f) - embed(r, f) / embed(c, f)) < 1e-14);
  CHECK(std::abs(E1(p, inv) - E1(embed(r, f) / embed(c, f), inv)) < 1e-12);
  CHECK(is_lattice_point(torsion_point(mul(c, r, f), c, f)));
  CHECK_FALSE(is_lattice_point(p));
}

TEST_CASE("torsion table") {
  const auto inv = lattice_invariants(make_field(-7));
  const FieldParams& f = inv.field;
  const TorsionCache unit(QuadInt{1}, inv);
  CHECK(unit.size() == 1);
  CHECK(unit.at(QuadInt{0}) == cplx(0, 0));

  const QuadInt c{3, 2}, d{1, -1};
  const TorsionCache t = e1_torsion_table(c, d, inv);
  CHECK(static_cast<i64>(t.size()) == norm(c, f));
  for (const auto& r : residues_mod(c, f)) {
    CHECK(t.at(r) == E1(torsion_point(r, c, f), inv));
    const QuadInt rd = mul(r, d, f);
    CHECK(std::abs(t.at(rd) - E1(embed(rd, f) / embed(c, f), inv)) < 1e-12);
  }
  CHECK_THROWS_AS(TorsionCache(QuadInt{0}, inv), Error);
}
