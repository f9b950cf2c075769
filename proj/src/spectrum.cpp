#include "cogd2d/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cogd2d/specfun.hpp"

namespace cogd2d {

CellLoadDist::CellLoadDist(double mean_load) : mean_load_(mean_load) {
  if (!(mean_load >= 0.0) || !std::isfinite(mean_load)) {
    throw std::invalid_argument("CellLoadDist: mean_load must be finite and >= 0");
  }
  const double b = kShape;
  const double m = mean_load;
  const double spread = m + 50.0 * std::sqrt(m * (1.0 + m / b));
  const auto n_max = static_cast<std::size_t>(std::max(1000.0, std::ceil(spread)));
  pmf_.assign(n_max + 1, 0.0);
  if (m == 0.0) {
    pmf_[0] = 1.0;
    return;
  }
  // log P{N=0} = b ln(b/(b+m)); P{N=n+1} = P{N=n} (n+b)/(n+1) m/(b+m).
  const double log_ratio = std::log(m) - std::log(b + m);
  double log_p = b * (std::log(b) - std::log(b + m));
  for (std::size_t n = 0; n <= n_max; ++n) {
    pmf_[n] = std::exp(log_p);
    log_p += std::log((n + b) / (n + 1.0)) + log_ratio;
  }
}

double CellLoadDist::zeta() const { return std::exp(kShape * std::log(kShape) - log_gamma(kShape)); }

double cell_load_pmf(const CellLoadDist& dist, std::size_t n) { return dist.pmf(n); }

namespace {
void require_channels(int n, int min) {
  if (n < min) throw std::domain_error("access probabilities: too few channels");
}
}  // namespace

double q_f(const CellLoadDist& dist, int n_channels) {
  require_channels(n_channels, 1);
  const auto table = dist.table();
  const auto c = static_cast<std::size_t>(n_channels);
  double tail = 0.0;
  for (std::size_t n = table.size(); n-- > c + 1;) {
    tail += (static_cast<double>(n - c) / static_cast<double>(n)) * table[n];
  }
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

double q_c_rsa(const CellLoadDist& dist, int n_channels) {
  require_channels(n_channels, 1);
  const double c = n_channels;
  double idle = 0.0;
  for (int n = 0; n < n_channels; ++n) idle += (c - n) / c * dist.pmf(n);
  return std::clamp(1.0 - idle, 0.0, 1.0);
}

PsaProbs q_psa(const CellLoadDist& dist, int n_channels) {
  if (n_channels < 2) throw std::domain_error("q_psa: PSA needs at least two channels");
  const double c = n_channels;
  double idle_c = 0.0;
  double below = 0.0;
  for (int n = 0; n < n_channels; ++n) {
    idle_c += (c - n - 1.0) / (c - 1.0) * dist.pmf(n);
    below += dist.pmf(n);
  }
  return {std::clamp(1.0 - idle_c, 0.0, 1.0), std::clamp(1.0 - below, 0.0, 1.0)};
}

AccessProbs access_probs(const CellLoadDist& dist, int n_channels, AccessPolicy policy) {
  AccessProbs out{q_f(dist, n_channels), 0.0, 0.0, policy, n_channels};
  if (policy == AccessPolicy::Rsa) {
    out.q_c = out.q_d = q_c_rsa(dist, n_channels);
  } else {
    const PsaProbs p = q_psa(dist, n_channels);
    out.q_c = p.q_c;
    out.q_d = p.q_d;
  }
  return out;
}

}  // namespace cogd2d
