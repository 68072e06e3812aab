#include "densecomb/model_set.hpp"

#include <cmath>
#include <sstream>

#include "densecomb/accum.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"

namespace densecomb {

Window Window::box(std::vector<WindowInterval> intervals) {
  if (intervals.empty()) throw ValidationError("window: need at least one interval");
  for (const auto& iv : intervals)
    if (!(iv.hi > iv.lo))
      throw ValidationError("window: intervals must have positive length (volume > 0)");
  Window w;
  w.intervals_ = std::move(intervals);
  return w;
}

Window Window::ball(Eigen::VectorXd center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("window: ball radius must be positive");
  Window w;
  w.center_ = std::move(center);
  w.radius_ = radius;
  return w;
}

Window Window::fibonacci() {
  const double tau = (1.0 + std::sqrt(5.0)) / 2.0;
  return box({WindowInterval{-1.0, tau - 1.0, false, true}});
}

int Window::dim() const {
  return is_box() ? static_cast<int>(intervals_.size()) : static_cast<int>(center_.size());
}

double Window::volume() const {
  if (is_box()) {
    double v = 1.0;
    for (const auto& iv : intervals_) v *= iv.hi - iv.lo;
    return v;
  }
  return ball_volume(dim(), radius_);
}

bool Window::contains(const Eigen::VectorXd& y) const {
  if (y.size() != dim()) throw ValidationError("window: dimension mismatch");
  if (is_box()) {
    for (int i = 0; i < dim(); ++i) {
      const auto& iv = intervals_[static_cast<std::size_t>(i)];
      if (iv.lo_closed ? (y[i] < iv.lo) : (y[i] <= iv.lo)) return false;
      if (iv.hi_closed ? (y[i] > iv.hi) : (y[i] >= iv.hi)) return false;
    }
    return true;
  }
  return (y - center_).norm() <= radius_ + 1e-12;
}

Window Window::translated(const Eigen::VectorXd& shift) const {
  if (shift.size() != dim()) throw ValidationError("window: translation dimension mismatch");
  Window w = *this;
  if (is_box()) {
    for (int i = 0; i < dim(); ++i) {
      w.intervals_[static_cast<std::size_t>(i)].lo += shift[i];
      w.intervals_[static_cast<std::size_t>(i)].hi += shift[i];
    }
  } else {
    w.center_ += shift;
  }
  return w;
}

Ball Window::bounding_ball() const {
  if (!is_box()) return Ball{center_, radius_};
  Eigen::VectorXd c(dim());
  double r2 = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = intervals_[static_cast<std::size_t>(i)];
    c[i] = 0.5 * (iv.lo + iv.hi);
    const double h = 0.5 * (iv.hi - iv.lo);
    r2 += h * h;
  }
  return Ball{c, std::sqrt(r2)};
}

Window parse_window_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ValidationError("window spec: empty");
  if (parts[0] == "fibonacci") return Window::fibonacci();
  if (parts[0] == "interval") {
    if (parts.size() < 3) throw ValidationError("window spec: interval:LO:HI[:FLAGS]");
    WindowInterval iv;
    iv.lo = std::stod(parts[1]);
    iv.hi = std::stod(parts[2]);
    if (parts.size() >= 4) {
      const std::string& f = parts[3];
      if (f == "open-open") {
        iv.lo_closed = false;
        iv.hi_closed = false;
      } else if (f == "open-closed") {
        iv.lo_closed = false;
        iv.hi_closed = true;
      } else if (f == "closed-open") {
        iv.lo_closed = true;
        iv.hi_closed = false;
      } else if (f == "closed-closed") {
        iv.lo_closed = true;
        iv.hi_closed = true;
      } else {
        throw ValidationError("window spec: unknown endpoint flags '" + f + "'");
      }
    }
    return Window::box({iv});
  }
  if (parts[0] == "ball") {
    if (parts.size() != 3) throw ValidationError("window spec: ball:CENTER:RADIUS");
    Eigen::VectorXd c(1);
    c[0] = std::stod(parts[1]);
    return Window::ball(c, std::stod(parts[2]));
  }
  throw ValidationError("window spec: unknown kind '" + parts[0] + "'");
}

namespace {

void require_certified(const CutProjectScheme& scheme) {
  if (!scheme.certified())
    throw ValidationError("model set: scheme lacks the cut-and-project certificate");
}

void require_window_dim(const CutProjectScheme& scheme, const Window& window) {
  if (window.dim() != scheme.dim_internal())
    throw ValidationError("model set: window dimension does not match internal space");
}

}  // namespace

LatticePointList model_set_points(const CutProjectScheme& scheme, const Window& window, double r,
                                  const Eigen::VectorXd& a, const EnumerateOptions& options) {
  require_certified(scheme);
  require_window_dim(scheme, window);
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("model set: radius must be finite");

  const LatticePointList raw =
      enumerate_points(scheme, Ball{a, r}, window.bounding_ball(), options);

  // filter by exact window membership (open/closed endpoint flags)
  std::vector<Eigen::Index> keep;
  keep.reserve(raw.size());
  for (Eigen::Index i = 0; i < raw.star.rows(); ++i) {
    if (window.contains(raw.star.row(i).transpose())) keep.push_back(i);
  }
  LatticePointList out;
  out.coords.resize(static_cast<Eigen::Index>(keep.size()), raw.coords.cols());
  out.direct.resize(static_cast<Eigen::Index>(keep.size()), raw.direct.cols());
  out.star.resize(static_cast<Eigen::Index>(keep.size()), raw.star.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.coords.row(static_cast<Eigen::Index>(i)) = raw.coords.row(keep[i]);
    out.direct.row(static_cast<Eigen::Index>(i)) = raw.direct.row(keep[i]);
    out.star.row(static_cast<Eigen::Index>(i)) = raw.star.row(keep[i]);
  }
  return out;
}

double density_empirical(const CutProjectScheme& scheme, const Window& window, double r,
                         const Eigen::VectorXd& a) {
  const auto pts = model_set_points(scheme, window, r, a);
  return static_cast<double>(pts.size()) / ball_volume(scheme.dim_direct(), r);
}

double density_exact(const CutProjectScheme& scheme, const Window& window) {
  require_certified(scheme);
  require_window_dim(scheme, window);
  return window.volume() / scheme.covolume();
}

// Samples f outside the window (1e3 points per dimension) and rejects
// weights that leak support.  WeightFunction is a black box, so sampling is
// the only available check.
void require_support_inside(const Window& window, const WeightFunction& f) {
  if (f.dim() != window.dim())
    throw ValidationError("weyl_average: weight dimension does not match window");
  const double tol = 1e-10 * std::max(f.sup_abs(), 1.0);
  const Ball bb = window.bounding_ball();
  if (window.dim() == 1) {
    double lo, hi;
    if (window.is_box()) {
      lo = window.intervals()[0].lo;
      hi = window.intervals()[0].hi;
    } else {
      lo = window.ball_center()[0] - window.ball_radius();
      hi = window.ball_center()[0] + window.ball_radius();
    }
    const double span = hi - lo;
    for (int i = 0; i < 500; ++i) {
      const double left = lo - span * (i + 1) / 500.0;
      const double right = hi + span * (i + 1) / 500.0;
      if (std::abs(f.eval1(left)) > tol || std::abs(f.eval1(right)) > tol)
        throw ValidationError("weyl_average: weight support leaks outside the window");
    }
    return;
  }
  // higher dimensions: radial probes beyond the bounding ball
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(window.dim());
    dir[i % window.dim()] = (i % 2 == 0) ? 1.0 : -1.0;
    const Eigen::VectorXd y = bb.center + dir * bb.radius * (1.0 + (i + 1) / 500.0);
    if (!window.contains(y) && std::abs(f(y)) > tol)
      throw ValidationError("weyl_average: weight support leaks outside the window");
  }
}

std::complex<double> weyl_average(const CutProjectScheme& scheme, const Window& window,
                                  const WeightFunction& f, double r, const Eigen::VectorXd& a) {
  require_support_inside(window, f);
  const auto pts = model_set_points(scheme, window, r, a);
  const auto& star = pts.star;
  const bool one_d = scheme.dim_internal() == 1;
  const std::complex<double> total = chunked_sum(pts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    if (one_d) return f.eval1(star(row, 0));
    return f(star.row(row).transpose());
  });
  return total / ball_volume(scheme.dim_direct(), r);
}

std::complex<double> fourier_bohr_regular_finite(const CutProjectScheme& scheme,
                                                 const Window& window, const WeightFunction& f,
                                                 const Eigen::VectorXd& k, double r,
                                                 const Eigen::VectorXd& a) {
  require_support_inside(window, f);
  if (k.size() != scheme.dim_direct())
    throw ValidationError("fourier_bohr_regular_finite: k dimension mismatch");
  const auto pts = model_set_points(scheme, window, r, a);
  const auto& star = pts.star;
  const auto& direct = pts.direct;
  const bool one_d = scheme.dim_internal() == 1;
  const std::complex<double> total = chunked_sum(pts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const double phase = -2.0 * M_PI * k.dot(direct.row(row));
    const std::complex<double> w =
        one_d ? f.eval1(star(row, 0)) : f(star.row(row).transpose());
    return w * std::polar(1.0, phase);
  });
  return total / ball_volume(scheme.dim_direct(), r);
}

}  // namespace densecomb
