#include "sczech/sampling.hpp"

#include <cmath>

#include "sczech/error.hpp"

namespace sczech {

QuadInt random_element(Rng& rng, i64 max_norm, const FieldParams& f) {
  if (max_norm < 1) throw Error(ErrorKind::InvalidArgument, "max_norm must be >= 1");
  // |b| Im(w) <= |z|, |a| <= |z| + |b| |w|
  const double r = std::sqrt(static_cast<double>(max_norm));
  const i64 bmax = static_cast<i64>(r / f.area) + 1;
  const i64 amax = static_cast<i64>(r + static_cast<double>(bmax) * std::abs(f.omega)) + 1;
  std::uniform_int_distribution<i64> da(-amax, amax), db(-bmax, bmax);
  for (;;) {
    const QuadInt z{da(rng), db(rng)};
    if (!z.is_zero() && norm(z, f) <= max_norm) return z;
  }
}

SL2Matrix random_sl2(Rng& rng, i64 max_norm, const FieldParams& f) {
  std::uniform_int_distribution<int> coin(0, 9);
  auto ok = [&](QuadInt z) { return norm(z, f) <= max_norm; };
  if (coin(rng) == 0) {
    std::uniform_int_distribution<std::size_t> pick(0, f.units.size() - 1);
    const QuadInt u = f.units[pick(rng)];
    const QuadInt ui = conj(u, f);  // units have norm 1
    for (;;) {
      const QuadInt t = random_element(rng, max_norm, f);
      if (ok(t)) return {u, t, QuadInt{}, ui};
    }
  }
  for (;;) {
    const QuadInt c = random_element(rng, max_norm, f);
    const QuadInt d = random_element(rng, max_norm, f);
    if (!is_unimodular(c, d, f)) continue;
    const SL2Matrix m = bezout_sl2(c, d, f);
    if (ok(m.a) && ok(m.b)) return m;
  }
}

cplx random_point(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double x = u(rng);
  return {x, u(rng)};
}

}  // namespace sczech
