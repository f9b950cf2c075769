#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "cogd2d/spectrum.hpp"

using namespace cogd2d;
using doctest::Approx;

namespace {

// Negative binomial pmf evaluated directly with lgamma.
double nb_pmf(double m, double b, int n) {
  return std::exp(std::lgamma(n + b) - std::lgamma(b) - std::lgamma(n + 1.0) +
                  b * std::log(b / (b + m)) + n * std::log(m / (b + m)));
}

}  // namespace

TEST_CASE("cell-load pmf frozen values") {
  const CellLoadDist d(10.0);
  CHECK(d.pmf(0) == Approx(0.00848041182927423514).epsilon(1e-13));
  CHECK(d.pmf(5) == Approx(0.0696188614286029236).epsilon(1e-13));
  CHECK(cell_load_pmf(d, 5) == d.pmf(5));
  CHECK(d.shape_b() == 3.575);
}

TEST_CASE("cell-load pmf matches the direct formula") {
  for (double m : {0.5, 3.0, 10.0, 47.0}) {
    const CellLoadDist d(m);
    for (int n : {0, 1, 2, 7, 20, 60}) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(d.pmf(n) == Approx(nb_pmf(m, 3.575, n)).epsilon(1e-11));
    }
  }
}

TEST_CASE("cell-load pmf normalisation and mean") {
  for (double m : {0.1, 1.0, 10.0, 30.0, 300.0}) {
    const CellLoadDist d(m);
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t n = 0; n <= d.n_max(); ++n) {
      CHECK(d.pmf(n) >= 0.0);
      total += d.pmf(n);
      mean += n * d.pmf(n);
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
    CHECK(mean == Approx(m).epsilon(1e-9));
    CHECK(d.pmf(d.n_max() + 1) == 0.0);
  }
}

TEST_CASE("zero load puts all mass at zero") {
  const CellLoadDist d(0.0);
  CHECK(d.pmf(0) == 1.0);
  CHECK(q_f(d, 3) == 1.0);
  CHECK(q_c_rsa(d, 3) == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("access probabilities frozen values") {
  const CellLoadDist d(10.0);
  CHECK(q_f(d, 10) == Approx(0.869735907321163064).epsilon(1e-13));
  CHECK(q_c_rsa(d, 10) == Approx(0.760341955576843496).epsilon(1e-13));
  const PsaProbs psa = q_psa(d, 10);
  CHECK(psa.q_c == Approx(0.793620136394580052).epsilon(1e-13));
  CHECK(psa.q_d == Approx(0.460838328217214491).epsilon(1e-13));
}

TEST_CASE("access probabilities against sampled loads") {
  // Gamma-Poisson mixture sampled with the standard library.
  const double m = 6.0;
  const double b = 3.575;
  const int C = 7;
  std::mt19937_64 rng(11);
  std::gamma_distribution<double> area(b, 1.0 / b);
  const int n = 400000;
  double served = 0.0, used = 0.0, used_psa = 0.0, cd_psa = 0.0;
  for (int i = 0; i < n; ++i) {
    const int load = std::poisson_distribution<int>(m * area(rng))(rng);
    served += load == 0 ? 1.0 : std::min(load, C) / static_cast<double>(load);
    used += std::min(load, C) / static_cast<double>(C);
    used_psa += std::min(load, C - 1) / static_cast<double>(C - 1);
    cd_psa += load >= C;
  }
  const CellLoadDist d(m);
  const double tol = 4.0 * 0.5 / std::sqrt(n);
  CHECK(std::abs(q_f(d, C) - served / n) < tol);
  CHECK(std::abs(q_c_rsa(d, C) - used / n) < tol);
  CHECK(std::abs(q_psa(d, C).q_c - used_psa / n) < tol);
  CHECK(std::abs(q_psa(d, C).q_d - cd_psa / n) < tol);
}

TEST_CASE("RSA and PSA identities") {
  for (double m : {1.0, 7.0, 19.0}) {
    const CellLoadDist d(m);
    for (int C : {2, 5, 13}) {
      const double qd_rsa = q_c_rsa(d, C);
      const PsaProbs psa = q_psa(d, C);
      double rhs = 0.0;
      for (int n = 0; n < C; ++n) rhs += static_cast<double>(n) / C * d.pmf(n);
      CHECK(std::abs((qd_rsa - psa.q_d) - rhs) < 1e-12);
      CHECK(std::abs((psa.q_c - qd_rsa) * (C - 1) - (qd_rsa - psa.q_d)) < 1e-12);
      CHECK(psa.q_d <= qd_rsa);
      CHECK(psa.q_c >= qd_rsa);
    }
  }
}

TEST_CASE("access probabilities are monotone in the channel count") {
  const CellLoadDist d(10.0);
  for (int C = 2; C < 40; ++C) {
    CHECK(q_f(d, C + 1) >= q_f(d, C));
    CHECK(q_c_rsa(d, C + 1) <= q_c_rsa(d, C));
    CHECK(q_psa(d, C + 1).q_d <= q_psa(d, C).q_d);
  }
}

TEST_CASE("access_probs dispatch and domain") {
  const CellLoadDist d(10.0);
  const AccessProbs rsa = access_probs(d, 10, AccessPolicy::Rsa);
  CHECK(rsa.q_c == rsa.q_d);
  const AccessProbs psa = access_probs(d, 10, AccessPolicy::Psa);
  CHECK(psa.q_d == q_psa(d, 10).q_d);
  CHECK(psa.n_channels == 10);
  CHECK_THROWS_AS(q_psa(d, 1), std::domain_error);
  CHECK_THROWS(q_f(d, 0));
}
