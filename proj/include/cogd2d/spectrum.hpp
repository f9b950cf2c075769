#pragma once

// Cell-load distribution and per-channel access probabilities.

#include <cstddef>
#include <span>
#include <vector>

#include "cogd2d/params.hpp"

namespace cogd2d {

/// Number of users attached to a typical BS.  A gamma-area Voronoi
/// approximation mixed with Poisson counts, i.e. negative binomial with
/// shape b and mean E[N_u].  The pmf is tabulated once on construction.
class CellLoadDist {
 public:
  static constexpr double kShape = 3.575;

  explicit CellLoadDist(double mean_load);

  double mean_load() const { return mean_load_; }
  double shape_b() const { return kShape; }
  /// b^b / Gamma(b)
  double zeta() const;
  std::size_t n_max() const { return pmf_.size() - 1; }

  /// P{N_u = n}; zero beyond the truncation point.
  double pmf(std::size_t n) const { return n < pmf_.size() ? pmf_[n] : 0.0; }
  std::span<const double> table() const { return pmf_; }

 private:
  double mean_load_;
  std::vector<double> pmf_;
};

double cell_load_pmf(const CellLoadDist& dist, std::size_t n);

/// Probability that a user is granted a channel by its BS.
double q_f(const CellLoadDist& dist, int n_channels);

/// Probability that a BS uses a given channel under RSA (also q_d under RSA).
double q_c_rsa(const CellLoadDist& dist, int n_channels);

struct PsaProbs {
  double q_c;
  double q_d;
};

/// PSA usage of an ordinary channel and of the D2D channel.  n_channels >= 2.
PsaProbs q_psa(const CellLoadDist& dist, int n_channels);

struct AccessProbs {
  double q_f;
  double q_c;
  double q_d;
  AccessPolicy policy;
  int n_channels;
};

AccessProbs access_probs(const CellLoadDist& dist, int n_channels, AccessPolicy policy);

}  // namespace cogd2d
