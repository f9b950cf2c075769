#include "cogd2d/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace cogd2d {

namespace {

constexpr double kSeriesRelTol = 1e-15;
constexpr int kSeriesMaxTerms = 10000;

// Plain defining series, valid for |z| < 1.
double hypergeometric_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0 || std::abs(term) < kSeriesRelTol * std::abs(sum)) {
      return sum;
    }
  }
  throw NumericError("2F1 series did not converge within 10000 terms", sum);
}

// 1/Gamma(x), zero at the poles.
double recip_gamma(double x) {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

bool near_integer(double x) { return std::abs(x - std::nearbyint(x)) < 1e-8; }

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double erf(double x) { return std::erf(x); }

double gauss_2f1(double a, double b, double c, double z) {
  if (!(c > 0.0)) throw std::domain_error("gauss_2f1: requires c > 0");
  if (!(z <= 0.0)) throw std::domain_error("gauss_2f1: requires z <= 0");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) return hypergeometric_series(a, b, c, z);

  if (z > -2.0 || near_integer(a - b)) {
    // Pfaff: 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hypergeometric_series(a, c - b, c, w);
  }

  // Connection to 1/z; |1/z| <= 1/2 here.
  const double c1 = a - c + 1.0;
  const double d1 = a - b + 1.0;
  const double c2 = b - c + 1.0;
  const double d2 = b - a + 1.0;
  const double inv = 1.0 / z;
  const double mz = -z;
  double first = 0.0;
  const double k1 = std::tgamma(c) * std::tgamma(b - a) * recip_gamma(b) * recip_gamma(c - a);
  if (k1 != 0.0) first = k1 * std::pow(mz, -a) * hypergeometric_series(a, c1, d1, inv);
  double second = 0.0;
  const double k2 = std::tgamma(c) * std::tgamma(a - b) * recip_gamma(a) * recip_gamma(c - b);
  if (k2 != 0.0) second = k2 * std::pow(mz, -b) * hypergeometric_series(b, c2, d2, inv);
  return first + second;
}

double hyper_g(double y, double alpha) {
  if (!(y > 0.0)) throw std::domain_error("hyper_g: requires y > 0");
  if (!(alpha > 2.0)) throw std::domain_error("hyper_g: requires alpha > 2");
  const double a = 1.0;
  const double b = (alpha - 2.0) / alpha;
  const double c = (2.0 * alpha - 2.0) / alpha;
  const double z = -std::pow(y, -alpha);
  if (!std::isfinite(z)) {
    // y -> 0 limit: (alpha-2) * integral_0^inf u/(1+u^alpha) du.
    const double delta = 2.0 / alpha;
    return (alpha - 2.0) * (std::numbers::pi / alpha) / std::sin(std::numbers::pi * delta);
  }
  return std::pow(y, 2.0 - alpha) * gauss_2f1(a, b, c, z);
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (!(hi > lo)) {
    if (hi == lo) return 0.0;
    throw std::invalid_argument("integrate: hi < lo");
  }
  // A handful of starting panels keeps the first error estimate honest on
  // oscillatory integrands.
  const int start = std::clamp(spec.max_subdivisions / 4, 1, 16);
  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  const double width = (hi - lo) / start;
  for (int i = 0; i < start; ++i) {
    Panel p = gauss_kronrod(f, lo + i * width, i + 1 == start ? hi : lo + (i + 1) * width);
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }
  int count = start;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (count >= spec.max_subdivisions) {
      throw NumericError("integrate: subdivision limit reached", total);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  if (!std::isfinite(total)) throw NumericError("integrate: non-finite result", total);
  return total;
}

double integrate_to_infinity(const std::function<double(double)>& f,
                             const QuadratureSpec& spec, double upper) {
  if (!(upper > 0.0) || !std::isfinite(upper)) {
    throw std::invalid_argument("integrate_to_infinity: envelope bound must be finite and positive");
  }
  return integrate(f, 0.0, upper, spec);
}

double positive_stable_sf(double index, double t) {
  if (!(index > 0.0 && index < 1.0)) {
    throw std::domain_error("positive_stable_sf: index must lie in (0, 1)");
  }
  if (t <= 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double d = index;
  const double scale = std::pow(t, -d / (1.0 - d));
  auto integrand = [&](double phi) {
    const double shape = std::pow(std::sin(d * phi) / std::sin(phi), 1.0 / (1.0 - d)) *
                         std::sin((1.0 - d) * phi) / std::sin(d * phi);
    return -std::expm1(-scale * shape);
  };
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-15;
  spec.max_subdivisions = 4000;
  return std::clamp(integrate(integrand, 0.0, std::numbers::pi, spec) / std::numbers::pi, 0.0, 1.0);
}

}  // namespace cogd2d
