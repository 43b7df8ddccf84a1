#pragma once

// Desk-scale experiments on the values r * D~(c, d) over the index set
// {(c, d) : c up to sign, d a coprime residue mod c}: Weyl sums, histograms,
// star discrepancy, and coset counting.

#include <utility>
#include <vector>

#include "sczech/kloosterman.hpp"

namespace sczech {

struct CoprimePair {
  QuadInt c;
  QuadInt d;
  friend bool operator==(const CoprimePair&, const CoprimePair&) = default;
};

std::vector<CoprimePair> enumerate_pairs(double X, const LatticeInvariants& inv);

struct CountRecord {
  double X = 0;
  i64 N_X = 0;                 // double cosets (c up to sign, d mod c coprime), |c| < X
  i64 pair_count = 0;      // ordered pairs 0 < |d| < |c| < X with (c, d) = 1
  double predicted_prop = 0;   // (|Lambda| / vol) X^4
  double predicted_nx = 0;     // 4 pi^2 / (|d_K|^{3/2} zeta_K(2)) X^4
  double predicted_cosets = 0; // pi / (2 sqrt|d_K| zeta_K(2)) X^4, Dirichlet-series residue of the coset count
  double ratio_prop = 0;       // N_X / predicted_prop
  double ratio_nx = 0;
  double ratio_cosets = 0;
  double pair_ratio_prop = 0;  // pair_count / predicted_prop
  double pair_ratio_nx = 0;
};

CountRecord coset_count(double X, const FieldParams& f, unsigned jobs = 1);

struct WeylSumRecord {
  i64 d_K = 0;
  double X = 0;
  double r = 0;
  int mode = 1;
  cplx sum;
  i64 count = 0;
  cplx normalized;
};

WeylSumRecord weyl_sum(double X, double r, int mode, const LatticeInvariants& inv, unsigned jobs = 1);

double star_discrepancy(std::vector<double> samples);

struct Histogram {
  std::vector<i64> bins;
};

/// Fractional part with x - floor(x); values rounding up to 1.0 land in the last bin.
std::size_t bin_of(double x, std::size_t bins);

struct EquidistPoint {
  double X = 0;
  i64 count = 0;
  double discrepancy = 0;
  Histogram histogram;
  std::vector<cplx> modes;  // normalised Weyl sums for n = 1..n_modes
};

struct EquidistReport {
  i64 d_K = 0;
  double r = 0;
  int n_modes = 0;
  std::size_t bins = 0;
  std::vector<EquidistPoint> points;
};

EquidistReport equidist_experiment(std::span<const double> x_grid, double r, int n_modes, std::size_t bins,
                                   const LatticeInvariants& inv, unsigned jobs = 1);

/// D~(c, d) for every pair of enumerate_pairs(X), in the same order.
std::vector<double> d_tilde_values(double X, const LatticeInvariants& inv, unsigned jobs = 1);

}  // namespace sczech
