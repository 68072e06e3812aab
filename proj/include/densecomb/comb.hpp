#pragma once

#include <complex>
#include <optional>

#include "densecomb/cps.hpp"
#include "densecomb/weight.hpp"

namespace densecomb {

/// Result of an internally truncated comb sum: the value plus a certified
/// bound on the mass dropped by the |x*| <= s cutoff.
struct TruncatedSum {
  std::complex<double> value{0.0, 0.0};
  double truncation_bound = 0.0;
  double internal_radius = 0.0;
  std::size_t points = 0;
};

/// The weighted dense Dirac comb sum_{x in L} f(x*) delta_x.  Construction
/// validates the decay certificate by sampling (with exponent
/// max(d,m)+1+alpha) and computes the weighted density rho = (1/|det|) int f.
class DenseComb {
 public:
  DenseComb(CutProjectScheme scheme, WeightFunction weight);

  const CutProjectScheme& scheme() const { return scheme_; }
  const CutProjectScheme& dual_scheme() const { return dual_; }
  const WeightFunction& weight() const { return weight_; }
  std::complex<double> rho() const { return rho_; }

  /// Smallest integer s >= 3 with 2 c C vol (s-2)^{-alpha}/alpha < epsilon,
  /// where c = 2 S_m / |det|.  This is the certified internal cutoff: the
  /// comb mass with |x*| >= s, summed over any direct window of volume vol,
  /// is below epsilon.  Throws ResourceCapError when no s below the cap works.
  double truncation_radius(double epsilon, double window_volume) const;

  /// 2 S_m / |det|, the density-formula constant behind the tail bounds.
  double lemma_constant() const;

 private:
  CutProjectScheme scheme_;
  CutProjectScheme dual_;
  WeightFunction weight_;
  std::complex<double> rho_;
};

/// (1/vol(B_r)) sum_{x in L cap B_r(a), |x*| <= s} f(x*), with s chosen so the
/// dropped mass is below eps_rel * max(|rho|, 1e-9).
TruncatedSum weyl_dense(const DenseComb& comb, double r, const Eigen::VectorXd& a,
                        double eps_rel = 1e-6);

/// Finite-volume Fourier-Bohr coefficient c_r(k): the weyl_dense sum with the
/// extra phase e^{-2 pi i k.x}.  k = 0 reproduces weyl_dense exactly.
TruncatedSum fourier_bohr_finite(const DenseComb& comb, const Eigen::VectorXd& k, double r,
                                 const Eigen::VectorXd& a, double eps_rel = 1e-6);

/// The limiting Fourier-Bohr coefficient.  Membership of k in the dual module
/// L* is an algebraic fact, so k is passed as exact integer coordinates in
/// the dual basis; nullopt states that k is off the module, where the
/// coefficient vanishes.
std::complex<double> fourier_bohr(const DenseComb& comb,
                                  const std::optional<Coords>& dual_coords);

}  // namespace densecomb
