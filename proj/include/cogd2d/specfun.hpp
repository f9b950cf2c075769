#pragma once

// Special functions and quadrature used by the analytic engine.
//
// Everything here is a pure function of its arguments and safe to call
// concurrently.

#include <functional>
#include <stdexcept>
#include <string>

namespace cogd2d {

/// Raised when an iterative numeric procedure fails to meet its tolerance.
/// `partial()` carries the best estimate available at the time of failure.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}
  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Gamma(x) for x > 0.
double gamma_fn(double x);

double erf(double x);

/// Gauss hypergeometric 2F1(a, b; c; z) restricted to z <= 0 and c > 0.
///
/// Series for |z| <= 1/2, Pfaff transformation z -> z/(z-1) for
/// -2 < z < -1/2 and the 1/z connection formula beyond that.  When a - b is
/// an integer the connection formula is degenerate and Pfaff is used for all
/// z < -1/2, which stops converging somewhere past z = -1e4.  Series are
/// cut when a term drops below 1e-15 of the partial sum, capped at 10000
/// terms (NumericError past the cap).
double gauss_2f1(double a, double b, double c, double z);

/// G[y, alpha] = y^(2-alpha) 2F1(1, (alpha-2)/alpha; (2alpha-2)/alpha; -y^-alpha),
/// equivalently (alpha-2) * integral_y^inf u / (1 + u^alpha) du.
double hyper_g(double y, double alpha);

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [0, upper].
///
/// `upper` is the caller's envelope bound: |f| must be below abs_tol
/// beyond it.  The integrand is never evaluated at 0 itself, so removable
/// singularities at the origin are harmless.  Throws NumericError with the
/// partial result if the subdivision budget runs out.
double integrate_to_infinity(const std::function<double(double)>& f,
                             const QuadratureSpec& spec, double upper);

/// Same machinery over an arbitrary finite interval.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec);

/// P[S > t] for the positive stable law with Laplace transform exp(-s^index),
/// 0 < index < 1, via Zolotarev's finite-interval representation.
double positive_stable_sf(double index, double t);

}  // namespace cogd2d
