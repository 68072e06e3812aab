#pragma once

#include <map>
#include <vector>

#include "densecomb/comb.hpp"
#include "densecomb/model_set.hpp"

namespace densecomb {

struct AutocorrValue {
  std::complex<double> value{0.0, 0.0};
  /// Set when |eta| fell below 1e-300 and was flushed to an exact zero.
  bool underflow_flushed = false;
};

/// Finite-volume autocorrelation coefficient
/// eta_n(z) = (1/vol(B_n)) sum_{x, x-z in L cap B_n, |x*| <= s} f(x*) conj(f(x* - z*)).
TruncatedSum autocorr_finite(const DenseComb& comb, const Coords& z, double n,
                             double eps_rel = 1e-6);

/// Closed-form limit eta(z) = (1/|det|) int f(u) conj(f(u - z*)) du via the
/// analytic self-convolution when present, quadrature otherwise.
AutocorrValue autocorr(const DenseComb& comb, const Coords& z, double tol = 1e-10);

/// A finite table of autocorrelation coefficients with its construction mode.
class AutocorrelationTable {
 public:
  enum class Mode { finite_n, closed_form };

  static AutocorrelationTable closed_form(const DenseComb& comb, const std::vector<Coords>& zs);
  static AutocorrelationTable finite(const DenseComb& comb, const std::vector<Coords>& zs,
                                     double n);

  Mode mode() const { return mode_; }
  const std::map<Coords, AutocorrValue, CoordsLess>& entries() const { return entries_; }
  std::complex<double> at(const Coords& z) const;

  /// Smallest eigenvalue of the Hermitian Gram matrix [eta(z_i - z_j)] over
  /// the stored coordinates; positive definiteness of eta makes this >= 0 up
  /// to numerical noise.
  double gram_min_eigenvalue() const;

 private:
  AutocorrelationTable(const DenseComb& comb, Mode mode, double n)
      : comb_(&comb), mode_(mode), n_(n) {}
  std::complex<double> evaluate(const Coords& z) const;

  const DenseComb* comb_;
  Mode mode_;
  double n_ = 0.0;
  std::map<Coords, AutocorrValue, CoordsLess> entries_;
};

struct Peak {
  Coords dual_coords;
  Eigen::VectorXd k;       // direct-space position
  Eigen::VectorXd k_star;  // internal position
  double intensity;
};

struct DiffractionSpectrum {
  std::vector<Peak> peaks;
  double intensity_floor = 0.0;
  double kstar_radius = 0.0;
  double k_radius = 0.0;
  /// Certified bound on any intensity with |k*| beyond kstar_radius; below
  /// the floor by the completeness contract.
  double completeness_bound = 0.0;
  std::string weight_name;
  std::string scheme_name;
};

/// Bragg peaks of the dense comb: dual-module points with |k*| <= kstar_radius
/// and |k| <= k_radius whose intensity |c(k)|^2 reaches the floor, sorted by
/// descending intensity (ties by dual coordinates).  kstar_radius must be
/// large enough that |f_hat|^2/|det|^2 stays below the floor outside it;
/// otherwise a ValidationError reports the floor/radius inconsistency.
DiffractionSpectrum spectrum(const DenseComb& comb, double intensity_floor, double kstar_radius,
                             double k_radius = 5.0);

/// Same contract for a weighted regular model set: intensities |c_W(k)|^2
/// with the windowed transform of f (support inside the window required).
DiffractionSpectrum spectrum_regular(const CutProjectScheme& scheme, const Window& window,
                                     const WeightFunction& f, double intensity_floor,
                                     double kstar_radius, double k_radius = 5.0);

struct PoissonReport {
  std::complex<double> lhs{0.0, 0.0};  // sum_z eta(z) g(z)
  std::complex<double> rhs{0.0, 0.0};  // sum_k |c(k)|^2 g_hat(k)
  double defect = 0.0;
  double tol = 0.0;
  bool pass = false;
  double truncation_bound = 0.0;  // certified bound on all four dropped tails
  double direct_radius = 0.0;     // R_z
  double internal_radius = 0.0;   // s_z
  double dual_direct_radius = 0.0;    // R_k
  double dual_internal_radius = 0.0;  // s_k
  std::size_t lhs_points = 0;
  std::size_t rhs_points = 0;
};

/// Two-sided check of the generalized Poisson summation identity
/// sum_{z in L} eta(z) g(z) = sum_{k in L*} |c(k)|^2 g_hat(k) with the
/// Gaussian test function g(x) = e^{-pi |x/sigma|^2}.  Both sums are
/// truncated with certified tails below tol/8 each; radius_scale multiplies
/// every truncation radius (a refinement probe, not part of the contract).
PoissonReport poisson_check(const DenseComb& comb, double sigma, double tol,
                            double radius_scale = 1.0);

/// The regular-model-set identity sum_{z in Delta} eta_W(z) g(z) =
/// sum_{k in L*} |c_W(k)|^2 g_hat(k), with eta_W the windowed
/// autocorrelation.  1-D schemes only.
PoissonReport poisson_check_regular(const CutProjectScheme& scheme, const Window& window,
                                    const WeightFunction& f, double sigma, double tol,
                                    double radius_scale = 1.0);

}  // namespace densecomb
