#include "sczech/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sczech/error.hpp"
#include "sczech/parallel.hpp"

namespace sczech {

namespace {

void require_nondegenerate(const FieldParams& f) {
  if (f.is_degenerate()) throw Error(ErrorKind::DegenerateField, "D is identically zero for d_K in {-3, -4}");
}

double frac(double x) { return x - std::floor(x); }

struct CoefTilde {
  i64 norm_c = 0;
  std::vector<double> values;
};

std::vector<CoefTilde> d_tilde_by_modulus(double X, const LatticeInvariants& inv, unsigned jobs) {
  const auto cs = enumerate_by_norm(X, inv.field);
  return ordered_map(cs.size(), jobs, [&](std::size_t i) {
    const ModulusTerms t = modulus_terms(cs[i], inv);
    CoefTilde out{norm(cs[i], inv.field), {}};
    out.values.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) out.values.push_back(d_tilde_of(t, k, inv));
    return out;
  });
}

}  // namespace

std::vector<CoprimePair> enumerate_pairs(double X, const LatticeInvariants& inv) {
  require_nondegenerate(inv.field);
  std::vector<CoprimePair> out;
  for (const auto& c : enumerate_by_norm(X, inv.field))
    for (const auto& d : coprime_residues(c, inv.field)) out.push_back({c, d});
  return out;
}

CountRecord coset_count(double X, const FieldParams& f, unsigned jobs) {
  if (!(X > 1)) throw Error(ErrorKind::InvalidArgument, "coset_count needs X > 1");
  CountRecord rec;
  rec.X = X;
  const auto cs = enumerate_by_norm(X, f);

  // Every nonzero element with |d| < X, both signs, sorted by norm.
  std::vector<QuadInt> ds;
  for (const auto& c : cs) {
    ds.push_back(c);
    ds.push_back(-c);
  }
  std::stable_sort(ds.begin(), ds.end(), [&](QuadInt x, QuadInt y) { return norm(x, f) < norm(y, f); });

  struct PerC {
    i64 cosets = 0;
    i64 pairs = 0;
  };
  const auto per_c = ordered_map(cs.size(), jobs, [&](std::size_t i) {
    const QuadInt c = cs[i];
    const i64 nc = norm(c, f);
    PerC out;
    out.cosets = static_cast<i64>(coprime_residues(c, f).size());
    for (const auto& d : ds) {
      if (norm(d, f) >= nc) break;
      if (is_unimodular(c, d, f)) ++out.pairs;
    }
    return out;
  });
  for (const auto& p : per_c) {
    rec.N_X += p.cosets;
    rec.pair_count += 2 * p.pairs;  // c and -c contribute equally
  }

  constexpr double pi = std::numbers::pi;
  const double q = static_cast<double>(-f.d_K);
  const double zk = zeta_K(f);
  const double x4 = X * X * X * X;
  rec.predicted_prop = f.area / humbert_volume(f) * x4;
  rec.predicted_nx = 4 * pi * pi / (std::pow(q, 1.5) * zk) * x4;
  rec.predicted_cosets = pi / (2 * std::sqrt(q) * zk) * x4;
  const double n = static_cast<double>(rec.N_X);
  const double t1 = static_cast<double>(rec.pair_count);
  rec.ratio_prop = n / rec.predicted_prop;
  rec.ratio_nx = n / rec.predicted_nx;
  rec.ratio_cosets = n / rec.predicted_cosets;
  rec.pair_ratio_prop = t1 / rec.predicted_prop;
  rec.pair_ratio_nx = t1 / rec.predicted_nx;
  return rec;
}

std::vector<double> d_tilde_values(double X, const LatticeInvariants& inv, unsigned jobs) {
  require_nondegenerate(inv.field);
  std::vector<double> out;
  for (auto& block : d_tilde_by_modulus(X, inv, jobs)) out.insert(out.end(), block.values.begin(), block.values.end());
  return out;
}

WeylSumRecord weyl_sum(double X, double r, int mode, const LatticeInvariants& inv, unsigned jobs) {
  require_nondegenerate(inv.field);
  if (!(X > 1)) throw Error(ErrorKind::InvalidArgument, "weyl_sum needs X > 1");
  if (mode < 1) throw Error(ErrorKind::InvalidArgument, "mode must be >= 1");
  WeylSumRecord rec;
  rec.d_K = inv.field.d_K;
  rec.X = X;
  rec.r = r;
  rec.mode = mode;
  for (double v : d_tilde_values(X, inv, jobs)) {
    rec.sum += e_of(r * mode * v);
    ++rec.count;
  }
  rec.normalized = rec.count > 0 ? rec.sum / static_cast<double>(rec.count) : cplx{};
  return rec;
}

double star_discrepancy(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptySample, "star discrepancy of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

std::size_t bin_of(double x, std::size_t bins) {
  const double u = frac(x);
  const auto k = static_cast<std::size_t>(u * static_cast<double>(bins));
  return std::min(k, bins - 1);
}

EquidistReport equidist_experiment(std::span<const double> x_grid, double r, int n_modes, std::size_t bins,
                                   const LatticeInvariants& inv, unsigned jobs) {
  require_nondegenerate(inv.field);
  if (x_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty X grid");
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
  EquidistReport report;
  report.d_K = inv.field.d_K;
  report.r = r;
  report.n_modes = n_modes;
  report.bins = bins;

  const double xmax = *std::max_element(x_grid.begin(), x_grid.end());
  const auto blocks = d_tilde_by_modulus(xmax, inv, jobs);

  for (double X : x_grid) {
    EquidistPoint pt;
    pt.X = X;
    pt.histogram.bins.assign(bins, 0);
    pt.modes.assign(static_cast<std::size_t>(std::max(n_modes, 0)), cplx{});
    std::vector<double> samples;
    for (const auto& b : blocks) {
      if (!(static_cast<double>(b.norm_c) < X * X)) continue;
      for (double v : b.values) {
        const double y = r * v;
        const double u = frac(y);
        samples.push_back(u >= 1.0 ? std::nextafter(1.0, 0.0) : u);
        ++pt.histogram.bins[bin_of(y, bins)];
        for (int n = 1; n <= n_modes; ++n) pt.modes[static_cast<std::size_t>(n - 1)] += e_of(n * y);
      }
    }
    pt.count = static_cast<i64>(samples.size());
    if (pt.count > 0) {
      pt.discrepancy = star_discrepancy(std::move(samples));
      for (auto& m : pt.modes) m /= static_cast<double>(pt.count);
    }
    report.points.push_back(std::move(pt));
  }
  return report;
}

}  // namespace sczech
