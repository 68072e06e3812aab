#pragma once

#include <complex>
#include <vector>

#include "densecomb/cps.hpp"
#include "densecomb/weight.hpp"

namespace densecomb {

/// One axis of a box window with per-endpoint open/closed flags.
struct WindowInterval {
  double lo;
  double hi;
  bool lo_closed = true;
  bool hi_closed = true;
};

/// A relatively compact internal-space acceptance region: a box of intervals
/// (with exact endpoint comparisons, honoring the open/closed flags) or a
/// closed ball (membership with 1e-12 slack on the norm, matching the
/// enumeration rule).  Boxes and balls have measure-zero boundary, and a
/// positive-volume interior is enforced at construction.
class Window {
 public:
  static Window box(std::vector<WindowInterval> intervals);
  static Window ball(Eigen::VectorXd center, double radius);
  /// The half-open interval (-1, tau - 1] that carves the Fibonacci chain.
  static Window fibonacci();

  int dim() const;
  double volume() const;
  bool contains(const Eigen::VectorXd& y) const;
  Window translated(const Eigen::VectorXd& shift) const;
  /// Smallest closed ball covering the window, used to drive enumeration.
  Ball bounding_ball() const;

  bool is_box() const { return !intervals_.empty(); }
  const std::vector<WindowInterval>& intervals() const { return intervals_; }
  const Eigen::VectorXd& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

 private:
  Window() = default;
  std::vector<WindowInterval> intervals_;  // box form
  Eigen::VectorXd center_;                 // ball form
  double radius_ = 0.0;
};

/// Parses "fibonacci", "interval:LO:HI:FLAGS" (FLAGS one of open-open,
/// open-closed, closed-open, closed-closed) or "ball:CENTER:RADIUS".
Window parse_window_spec(const std::string& spec);

/// Lattice points of the model set {x in L | x* in W} whose direct position
/// lies in the closed ball B_r(a).  Requires a certified scheme.
LatticePointList model_set_points(const CutProjectScheme& scheme, const Window& window,
                                  double r, const Eigen::VectorXd& a,
                                  const EnumerateOptions& options = {});

/// |Lambda(W) cap B_r(a)| / vol(B_r): converges to density_exact as r grows.
double density_empirical(const CutProjectScheme& scheme, const Window& window, double r,
                         const Eigen::VectorXd& a);

/// vol(W) / covolume, the limiting point density of the regular model set.
double density_exact(const CutProjectScheme& scheme, const Window& window);

/// (1/vol(B_r)) sum_{x in Lambda(W) cap B_r(a)} f(x*).  The weight must be
/// continuous with support inside the window; support is checked by sampling
/// outside the window and a violation throws ValidationError.
std::complex<double> weyl_average(const CutProjectScheme& scheme, const Window& window,
                                  const WeightFunction& f, double r, const Eigen::VectorXd& a);

/// Finite-volume Fourier-Bohr sum over the regular model set,
/// (1/vol(B_r)) sum f(x*) e^{-2 pi i k.x}; oracle for the windowed spectrum.
std::complex<double> fourier_bohr_regular_finite(const CutProjectScheme& scheme,
                                                 const Window& window, const WeightFunction& f,
                                                 const Eigen::VectorXd& k, double r,
                                                 const Eigen::VectorXd& a);

/// Throws ValidationError when sampling detects weight support outside the
/// window (the Weyl/Fourier-Bohr theorems for model sets require supp f in W).
void require_support_inside(const Window& window, const WeightFunction& f);

}  // namespace densecomb
