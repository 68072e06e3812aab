#pragma once

#include <complex>
#include <functional>

namespace densecomb {

/// Complementary error function, (2/sqrt(pi)) * integral_x^inf e^{-t^2} dt.
/// Series branch below |x| = 2, Laplace continued fraction above, both in
/// extended precision; relative error <= 1e-14 for |x| <= 10.
double erfc(double x);

/// Upper bound on sum_{n>=R} n^{-(1+alpha)} by integral comparison:
/// (R-1)^{-alpha}/alpha.  Requires alpha > 0 and R >= 2.
double tail_sum_bound(double alpha, double R);

/// Volume of the d-dimensional ball of radius r.
double ball_volume(int dim, double radius);
double unit_ball_volume(int dim);

/// Upper bound on sum_{n>=R} (n+1)^deg * e^{-c n^2} (integer n, R >= 1),
/// via the ratio test: first term / (1 - q) with
/// q = ((R+2)/(R+1))^deg * e^{-c(2R+1)}.  Returns +inf when q >= 1/2,
/// signalling that R is too small for a useful bound.
double gaussian_series_tail_bound(int deg, double c, double R);

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_bound = 0.0;
  long evaluations = 0;
};

/// Certificate |g(y)| <= C / (1+|y|)^{1+beta} for an integrand on the line.
struct IntegrandDecay {
  double C;
  double beta;
};

/// Integrates g over the real line with a certified total error below tol.
/// The domain is truncated to [-Y, Y] with the analytic tail bound
/// 2 C Y^{-beta} / beta, and the interior is handled by adaptive
/// Gauss-Kronrod panels on a dyadic initial mesh.
/// Throws ToleranceError when the panel estimates cannot reach tol within
/// the evaluation cap.
QuadratureResult integrate_decaying(const std::function<std::complex<double>(double)>& g,
                                    IntegrandDecay decay, double tol,
                                    long max_evaluations = 2'000'000);

/// Adaptive Gauss-Kronrod integration over a finite interval.
QuadratureResult integrate_interval(const std::function<std::complex<double>(double)>& g,
                                    double a, double b, double tol,
                                    long max_evaluations = 2'000'000);

}  // namespace densecomb
