#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "densecomb/numerics.hpp"

namespace densecomb {

/// Gaussian envelope certificate for a transform:
/// sup_{|y| >= R} |f_hat(y)| <= amplitude * exp(-rate * R^2).
struct TransformEnvelope {
  double amplitude;
  double rate;
};

/// An internal-space weight with a polynomial decay certificate
/// |y|^{m+1+alpha} |f(y)| <= C, plus whatever analytic structure the concrete
/// weight can certify (Fourier transform, self-convolution, envelopes).
/// Instances are immutable and cheap to copy.
class WeightFunction {
 public:
  using Eval = std::function<std::complex<double>(const Eigen::VectorXd&)>;
  using Eval1 = std::function<std::complex<double>(double)>;

  struct Spec {
    std::string name;
    std::string cli_spec;  // round-trippable textual form
    int dim = 1;
    Eval eval;
    Eval1 eval1;  // optional 1-D fast path
    double decay_C = 0.0;
    double decay_alpha = 1.0;
    double sup_abs = 0.0;
    double l1_norm = 0.0;
    Eval analytic_ft;
    Eval analytic_selfconv;
    std::optional<TransformEnvelope> ft_envelope;
    /// ||f''||_1 for 1-D C^2 weights; yields |f_hat(k)| <= d2/(2 pi k)^2.
    std::optional<double> second_derivative_l1;
  };

  /// f(y) = exp(-pi |y|^2).  Self-dual; certificate C is the exact maximum of
  /// |y|^{m+1+alpha} f(y).
  static WeightFunction gaussian(int dim = 1, double alpha = 4.0);

  /// Smooth compactly supported bump on (center-radius, center+radius),
  /// f(y) = exp(1 - 1/(1-t^2)) with t = (y-center)/radius.  1-D.
  static WeightFunction bump(double center, double radius, double alpha = 1.0);

  /// f(y) = 1/(1+y^2) with a caller-claimed (C, alpha) certificate.  The
  /// certificate is deliberately unverifiable for alpha >= 1; used as the
  /// negative test case for decay_check.
  static WeightFunction lorentzian(double claimed_C = 1.0, double claimed_alpha = 1.0);

  static WeightFunction zero(int dim = 1);

  /// Cubic-spline interpolant through (y_i, f_i) samples, zero outside the
  /// sample range, with an explicit caller-supplied certificate.
  static WeightFunction tabulated(const std::vector<double>& y,
                                  const std::vector<std::complex<double>>& f, double C,
                                  double alpha);

  static WeightFunction custom(Spec spec);

  std::complex<double> operator()(const Eigen::VectorXd& y) const;
  std::complex<double> eval1(double y) const;

  const std::string& name() const;
  const std::string& cli_spec() const;
  int dim() const;
  double decay_C() const;
  double decay_alpha() const;
  double sup_abs() const;
  double l1_norm() const;

  bool has_analytic_ft() const;
  bool has_analytic_selfconv() const;
  const std::optional<TransformEnvelope>& ft_envelope() const;
  const std::optional<double>& second_derivative_l1() const;

  /// f_hat(k) = int f(y) e^{-2 pi i k.y} dy: analytic when available,
  /// certified quadrature otherwise (1-D only).
  std::complex<double> fourier_transform(const Eigen::VectorXd& k, double tol = 1e-10) const;

  /// int f(v) conj(f(v-u)) dv: analytic when available, quadrature otherwise.
  std::complex<double> self_convolution(const Eigen::VectorXd& u, double tol = 1e-10) const;

  /// Decay certificate of |f| as a line integrand, |f(y)| <= C'/(1+|y|)^{1+beta}.
  IntegrandDecay integrand_certificate() const;

 private:
  explicit WeightFunction(std::shared_ptr<const Spec> spec) : spec_(std::move(spec)) {}
  std::shared_ptr<const Spec> spec_;
};

struct DecayReport {
  std::vector<double> radii;
  std::vector<double> max_value;  // per radius, max of |y|^{exponent} |f(y)|
  double certificate_C = 0.0;
  double exponent = 0.0;
  bool pass = false;
};

/// Samples |y|^{m+1+alpha}|f(y)| on spheres of the given radii and checks the
/// certificate.  A failure is reported, not thrown.
DecayReport decay_check(const WeightFunction& f, const std::vector<double>& radii,
                        int sphere_samples = 64);

/// Same sampling with an explicit exponent override (used when the direct
/// dimension exceeds the internal one).
DecayReport decay_check_exponent(const WeightFunction& f, double exponent,
                                 const std::vector<double>& radii, int sphere_samples = 64);

/// Parses "gaussian[:alpha=A]", "bump:center=C:radius=R[:alpha=A]",
/// "lorentzian[:C=..][:alpha=..]", "zero", "tabulated:path=FILE:C=..:alpha=..".
WeightFunction parse_weight_spec(const std::string& spec);

}  // namespace densecomb
