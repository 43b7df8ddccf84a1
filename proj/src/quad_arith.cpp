#include "sczech/quad_arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sczech/error.hpp"

namespace sczech {

namespace {

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 floor_mod(i64 a, i64 b) { return a - floor_div(a, b) * b; }

bool is_squarefree(i64 n) {
  n = std::abs(n);
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

// Column of a module basis together with its coefficients on the original
// generators; used to recover Bezout-type combinations.
struct Column {
  i64 x = 0;
  i64 y = 0;
  std::array<i64, 4> coef{};
};

void axpy(Column& dst, i64 q, const Column& src) {
  dst.x -= q * src.x;
  dst.y -= q * src.y;
  for (std::size_t i = 0; i < dst.coef.size(); ++i) dst.coef[i] -= q * src.coef[i];
}

void negate(Column& c) {
  c.x = -c.x;
  c.y = -c.y;
  for (auto& k : c.coef) k = -k;
}

// Euclid on one coordinate across all columns: afterwards at most one column
// has a nonzero entry in that coordinate, and it is positive.
template <typename Get>
Column* eliminate(std::vector<Column>& cols, Get get) {
  for (;;) {
    Column* pivot = nullptr;
    int nonzero = 0;
    for (auto& c : cols) {
      if (get(c) == 0) continue;
      ++nonzero;
      if (pivot == nullptr || std::abs(get(c)) < std::abs(get(*pivot))) pivot = &c;
    }
    if (nonzero <= 1) {
      if (pivot != nullptr && get(*pivot) < 0) negate(*pivot);
      return pivot;
    }
    for (auto& c : cols) {
      if (&c == pivot || get(c) == 0) continue;
      axpy(c, get(c) / get(*pivot), *pivot);
    }
  }
}

struct Reduced {
  Column pivot;  // (h12, h22)
  Column base;   // (h11, 0)
};

Reduced column_hnf(std::vector<Column> cols) {
  Column* piv = eliminate(cols, [](const Column& c) { return c.y; });
  if (piv == nullptr) throw Error(ErrorKind::InvalidArgument, "module is not full rank");
  Column pivot = *piv;
  std::vector<Column> rest;
  for (auto& c : cols)
    if (&c != piv) rest.push_back(c);
  Column* base = eliminate(rest, [](const Column& c) { return c.x; });
  if (base == nullptr) throw Error(ErrorKind::InvalidArgument, "module is not full rank");
  axpy(pivot, floor_div(pivot.x, base->x), *base);
  return {pivot, *base};
}

std::vector<Column> columns_for_ideal(std::span<const QuadInt> gens, const FieldParams& f) {
  std::vector<Column> cols;
  std::size_t slot = 0;
  for (const auto& g : gens) {
    for (const QuadInt z : {g, mul(g, QuadInt{0, 1}, f)}) {
      Column c{z.a, z.b, {}};
      if (slot < c.coef.size()) c.coef[slot] = 1;
      ++slot;
      cols.push_back(c);
    }
  }
  return cols;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  if (floor_mod(d, 4) == 1) return is_squarefree(d);
  if (floor_mod(d, 4) != 0) return false;
  const i64 m = d / 4;
  const i64 r = floor_mod(m, 4);
  return (r == 2 || r == 3) && is_squarefree(m);
}

FieldParams make_field(i64 d_K) {
  if (d_K >= 0)
    throw Error(ErrorKind::PositiveDiscriminant, "d_K = " + std::to_string(d_K) + " must be negative");
  if (!is_fundamental_discriminant(d_K))
    throw Error(ErrorKind::NonFundamentalDiscriminant, "d_K = " + std::to_string(d_K));

  FieldParams f;
  f.d_K = d_K;
  const double root = std::sqrt(static_cast<double>(-d_K));
  if (floor_mod(d_K, 4) == 0) {
    f.omega = {0.0, root / 2.0};
    f.trace = 0;
    f.norm_w = -d_K / 4;
  } else {
    f.omega = {0.5, root / 2.0};
    f.trace = 1;
    f.norm_w = (1 - d_K) / 4;
  }
  f.area = root / 2.0;

  f.units = {QuadInt{1, 0}, QuadInt{-1, 0}};
  if (d_K == -4) {
    f.units.push_back({0, 1});
    f.units.push_back({0, -1});
  } else if (d_K == -3) {
    // w = (1 + sqrt(-3))/2 is a primitive sixth root of unity, w^2 = w - 1.
    for (QuadInt u : {QuadInt{0, 1}, QuadInt{-1, 1}}) {
      f.units.push_back(u);
      f.units.push_back(-u);
    }
  }
  return f;
}

QuadInt mul(QuadInt x, QuadInt y, const FieldParams& f) {
  const i64 bd = x.b * y.b;
  return {x.a * y.a - bd * f.norm_w, x.a * y.b + x.b * y.a + bd * f.trace};
}

QuadInt conj(QuadInt x, const FieldParams& f) { return {x.a + x.b * f.trace, -x.b}; }

i64 norm(QuadInt z, const FieldParams& f) {
  return z.a * z.a + z.a * z.b * f.trace + z.b * z.b * f.norm_w;
}

i64 trace(QuadInt z, const FieldParams& f) { return 2 * z.a + z.b * f.trace; }

cplx embed(QuadInt z, const FieldParams& f) {
  return static_cast<double>(z.a) + static_cast<double>(z.b) * f.omega;
}

bool is_unit(QuadInt z, const FieldParams& f) { return norm(z, f) == 1; }

bool divides(QuadInt y, QuadInt x, const FieldParams& f) {
  if (y.is_zero()) return x.is_zero();
  const QuadInt num = mul(x, conj(y, f), f);
  const i64 n = norm(y, f);
  return num.a % n == 0 && num.b % n == 0;
}

QuadInt exact_div(QuadInt x, QuadInt y, const FieldParams& f) {
  if (y.is_zero()) throw Error(ErrorKind::ZeroModulus, "division by zero");
  const QuadInt num = mul(x, conj(y, f), f);
  const i64 n = norm(y, f);
  if (num.a % n != 0 || num.b % n != 0)
    throw Error(ErrorKind::InvalidArgument, "inexact division in O_K");
  return {num.a / n, num.b / n};
}

SL2Matrix mul(const SL2Matrix& m, const SL2Matrix& n, const FieldParams& f) {
  return {mul(m.a, n.a, f) + mul(m.b, n.c, f), mul(m.a, n.b, f) + mul(m.b, n.d, f),
          mul(m.c, n.a, f) + mul(m.d, n.c, f), mul(m.c, n.b, f) + mul(m.d, n.d, f)};
}

SL2Matrix inverse(const SL2Matrix& m) { return {m.d, -m.b, -m.c, m.a}; }

QuadInt det(const SL2Matrix& m, const FieldParams& f) { return mul(m.a, m.d, f) - mul(m.b, m.c, f); }

SL2Matrix translation(QuadInt t) { return {QuadInt{1}, t, QuadInt{0}, QuadInt{1}}; }

IdealHNF hnf_of_module(std::span<const QuadInt> gens) {
  std::vector<Column> cols;
  for (const auto& g : gens) cols.push_back({g.a, g.b, {}});
  const Reduced r = column_hnf(std::move(cols));
  return {r.base.x, r.pivot.x, r.pivot.y};
}

IdealHNF ideal_hnf(std::span<const QuadInt> gens, const FieldParams& f) {
  const Reduced r = column_hnf(columns_for_ideal(gens, f));
  return {r.base.x, r.pivot.x, r.pivot.y};
}

IdealHNF principal_hnf(QuadInt c, const FieldParams& f) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "modulus is zero");
  const std::array<QuadInt, 1> g{c};
  return ideal_hnf(g, f);
}

bool contains(const IdealHNF& h, QuadInt z) { return reduce(h, z).is_zero(); }

QuadInt reduce(const IdealHNF& h, QuadInt z) {
  const i64 q = floor_div(z.b, h.h22);
  const i64 x = z.a - q * h.h12;
  return {floor_mod(x, h.h11), z.b - q * h.h22};
}

std::size_t box_index(const IdealHNF& h, QuadInt reduced) {
  return static_cast<std::size_t>(reduced.b * h.h11 + reduced.a);
}

bool is_unimodular(QuadInt c, QuadInt d, const FieldParams& f) {
  if (c.is_zero() && d.is_zero()) throw Error(ErrorKind::BothZero, "(c, d) = (0, 0)");
  if (c.is_zero()) return is_unit(d, f);
  if (d.is_zero()) return is_unit(c, f);
  const std::array<QuadInt, 2> g{c, d};
  return ideal_hnf(g, f).is_unit_ideal();
}

SL2Matrix bezout_sl2(QuadInt c, QuadInt d, const FieldParams& f) {
  if (!is_unimodular(c, d, f)) throw Error(ErrorKind::NotUnimodular, "(c, d) does not generate O_K");
  if (c.is_zero()) return {conj(d, f), QuadInt{0}, c, d};
  if (d.is_zero()) {
    // a = 0 is the canonical residue; a*d - b*c = 1 forces b = -1/c.
    return {QuadInt{0}, -conj(c, f), c, d};
  }

  // Solve k0*d + k1*d*w + k2*c + k3*c*w = 1 over Z.
  const std::array<QuadInt, 2> g{d, c};
  const Reduced r = column_hnf(columns_for_ideal(g, f));
  // Unit ideal: pivot = (h12, 1) with h12 = 0 and base = (1, 0); the base
  // column is the combination hitting 1.
  const auto& k = r.base.coef;
  QuadInt a{k[0], k[1]};
  QuadInt b = -QuadInt{k[2], k[3]};

  const IdealHNF hc = principal_hnf(c, f);
  const QuadInt a_canon = reduce(hc, a);
  const QuadInt t = exact_div(a - a_canon, c, f);
  b = b - mul(t, d, f);
  a = a_canon;

  SL2Matrix m{a, b, c, d};
  if (det(m, f) != QuadInt{1}) throw Error(ErrorKind::NotUnimodular, "internal: Bezout completion failed");
  return m;
}

std::vector<QuadInt> residues_mod(QuadInt c, const FieldParams& f) {
  const IdealHNF h = principal_hnf(c, f);
  std::vector<QuadInt> out;
  out.reserve(static_cast<std::size_t>(h.index()));
  for (i64 y = 0; y < h.h22; ++y)
    for (i64 x = 0; x < h.h11; ++x) out.push_back({x, y});
  return out;
}

std::vector<QuadInt> coprime_residues(QuadInt c, const FieldParams& f) {
  std::vector<QuadInt> out;
  for (const auto& d : residues_mod(c, f))
    if (is_unimodular(c, d, f)) out.push_back(d);
  return out;
}

i64 euler_phi_K(QuadInt c, const FieldParams& f) {
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "modulus is zero");
  const i64 n = norm(c, f);
  // Accumulate numerator/denominator of prod (1 - 1/N(p)) exactly.
  i64 result = n;
  for (const i64 p : prime_factors(n)) {
    const int chi = kronecker_symbol(f.d_K, p);
    if (chi == -1) {
      result = result / (p * p) * (p * p - 1);  // inert: (p) prime of norm p^2
    } else if (chi == 0) {
      result = result / p * (p - 1);  // ramified: single prime of norm p
    } else {
      // Split: (p) = P * P', P = (p, w - lambda) for a root lambda of
      // x^2 - Tr(w) x + N(w) mod p; c lies in P iff a + b*lambda = 0 mod p.
      for (i64 lam = 0; lam < p; ++lam) {
        if (floor_mod(lam * lam - f.trace * lam + f.norm_w, p) != 0) continue;
        if (floor_mod(c.a + c.b * lam, p) == 0) result = result / p * (p - 1);
      }
    }
  }
  return result;
}

QuadInt sign_normalize(QuadInt z) {
  if (z.a < 0 || (z.a == 0 && z.b < 0)) return -z;
  return z;
}

std::vector<QuadInt> enumerate_by_norm(double X, const FieldParams& f) {
  std::vector<QuadInt> out;
  if (!(X > 0)) return out;
  const double bound = X * X;
  const i64 bmax = static_cast<i64>(std::floor(X / f.area)) + 1;
  const i64 amax = static_cast<i64>(std::ceil(X)) + bmax + 1;
  for (i64 b = -bmax; b <= bmax; ++b) {
    for (i64 a = -amax; a <= amax; ++a) {
      const QuadInt z{a, b};
      if (z.is_zero() || sign_normalize(z) != z) continue;
      if (static_cast<double>(norm(z, f)) < bound) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [&](QuadInt x, QuadInt y) {
    const i64 nx = norm(x, f);
    const i64 ny = norm(y, f);
    if (nx != ny) return nx < ny;
    return x < y;
  });
  return out;
}

int kronecker_symbol(i64 d, i64 n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (floor_mod(d, 2) == 0) return 0;
    const i64 r = floor_mod(d, 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d / n) for odd n.
  i64 a = floor_mod(d, n);
  i64 m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

double zeta_K(const FieldParams& f, double precision) {
  // zeta_K(2) = zeta(2) * L(2, chi_d). Sum whole periods of the character,
  // then close the tail with the asymptotic expansion of the Hurwitz zeta
  // function zeta(2, x) ~ 1/x + 1/(2x^2) + sum B_2k / x^(2k+1).
  const i64 q = -f.d_K;
  // With x >= blocks the first omitted asymptotic term is below x^-9.
  const i64 blocks = precision < 1e-12 ? 1000 : 200;
  const i64 cutoff = blocks * q;

  double head = 0;
  for (i64 k = cutoff; k >= 1; --k) {
    const int chi = kronecker_symbol(f.d_K, k);
    if (chi != 0) head += chi / (static_cast<double>(k) * static_cast<double>(k));
  }
  double tail = 0;
  const double dq = static_cast<double>(q);
  const double m = static_cast<double>(cutoff / q);
  for (i64 r = 1; r <= q; ++r) {
    const int chi = kronecker_symbol(f.d_K, r);
    if (chi == 0) continue;
    const double x = m + static_cast<double>(r) / dq;
    const double x2 = x * x;
    const double hz = 1 / x + 1 / (2 * x2) + 1 / (6 * x2 * x) - 1 / (30 * x2 * x2 * x) +
                      1 / (42 * x2 * x2 * x2 * x);
    tail += chi * hz;
  }
  tail /= dq * dq;
  constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  return zeta2 * (head + tail);
}

double humbert_volume(const FieldParams& f) {
  const double q = static_cast<double>(-f.d_K);
  return std::pow(q, 1.5) * zeta_K(f) / (4 * std::numbers::pi * std::numbers::pi);
}

}  // namespace sczech
