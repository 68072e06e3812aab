#include "densecomb/cps.hpp"

#include <cmath>
#include <vector>

#include "densecomb/errors.hpp"

namespace densecomb {

Coords make_coords(std::initializer_list<std::int64_t> values) {
  Coords c(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (auto v : values) c[i++] = v;
  return c;
}

Ball origin_ball(int dim, double radius) {
  return Ball{Eigen::VectorXd::Zero(dim), radius};
}

CutProjectScheme CutProjectScheme::fibonacci() {
  const double tau = (1.0 + std::sqrt(5.0)) / 2.0;
  Eigen::MatrixXd basis(2, 2);
  basis << 1.0, tau,
           1.0, 1.0 - tau;
  CutProjectScheme s = from_basis(1, 1, basis, "fibonacci", true);
  return s;
}

CutProjectScheme CutProjectScheme::from_basis(int dim_direct, int dim_internal,
                                              const Eigen::MatrixXd& basis, std::string name,
                                              bool certified) {
  if (dim_direct < 1 || dim_internal < 1)
    throw ValidationError("scheme: dimensions must be >= 1");
  const int dim = dim_direct + dim_internal;
  if (basis.rows() != dim || basis.cols() != dim)
    throw ValidationError("scheme: basis must be (d+m) x (d+m)");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  const double det = lu.determinant();
  if (!(std::abs(det) > 1e-12))
    throw ValidationError("scheme: basis is singular (|det| <= 1e-12)");

  CutProjectScheme s;
  s.dim_direct_ = dim_direct;
  s.dim_internal_ = dim_internal;
  s.basis_ = basis;
  s.inverse_ = lu.inverse();
  s.covolume_ = std::abs(det);
  s.certified_ = certified;
  s.name_ = std::move(name);
  return s;
}

CutProjectScheme CutProjectScheme::dual(double cond_limit) const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < cond_limit))
    throw ValidationError("dual: basis condition number exceeds the configured bound");
  return from_basis(dim_direct_, dim_internal_, inverse_.transpose(), name_ + "*", certified_);
}

Eigen::VectorXd CutProjectScheme::direct(const Coords& p) const {
  if (p.size() != dim_total()) throw ValidationError("direct: coordinate dimension mismatch");
  return (basis_ * p.cast<double>()).head(dim_direct_);
}

Eigen::VectorXd CutProjectScheme::star(const Coords& p) const {
  if (p.size() != dim_total()) throw ValidationError("star: coordinate dimension mismatch");
  return (basis_ * p.cast<double>()).tail(dim_internal_);
}

namespace {

struct Interval {
  double lo, hi;
  bool empty() const { return lo > hi; }
};

Interval intersect(Interval a, Interval b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace

LatticePointList enumerate_points(const CutProjectScheme& scheme, const Ball& direct_ball,
                                  const Ball& internal_ball, const EnumerateOptions& options) {
  const int d = scheme.dim_direct();
  const int m = scheme.dim_internal();
  const int dim = d + m;
  if (direct_ball.center.size() != d || internal_ball.center.size() != m)
    throw ValidationError("enumerate: ball center dimension mismatch");
  if (!(direct_ball.radius > 0.0) || !(internal_ball.radius > 0.0))
    throw ValidationError("enumerate: radii must be positive and finite");
  if (!std::isfinite(direct_ball.radius) || !std::isfinite(internal_ball.radius))
    throw ValidationError("enumerate: radii must be finite");

  const double tol = options.membership_tol;
  const Eigen::MatrixXd& B = scheme.basis();
  const Eigen::MatrixXd& Binv = scheme.inverse_basis();

  // box relaxation of the two balls: row j of B*n must lie in [lo, hi]
  Eigen::VectorXd row_lo(dim), row_hi(dim);
  for (int j = 0; j < d; ++j) {
    row_lo[j] = direct_ball.center[j] - direct_ball.radius - tol;
    row_hi[j] = direct_ball.center[j] + direct_ball.radius + tol;
  }
  for (int j = 0; j < m; ++j) {
    row_lo[d + j] = internal_ball.center[j] - internal_ball.radius - tol;
    row_hi[d + j] = internal_ball.center[j] + internal_ball.radius + tol;
  }
  const Eigen::VectorXd row_center = 0.5 * (row_lo + row_hi);
  const Eigen::VectorXd row_half = 0.5 * (row_hi - row_lo);

  // global integer range of each coordinate from the inverse basis
  std::vector<double> gmin(dim), gmax(dim);
  {
    const Eigen::VectorXd c = Binv * row_center;
    const Eigen::VectorXd w = Binv.cwiseAbs() * row_half;
    for (int k = 0; k < dim; ++k) {
      gmin[k] = std::ceil(c[k] - w[k] - 1e-9);
      gmax[k] = std::floor(c[k] + w[k] + 1e-9);
    }
  }

  // suffix interval of sum_{l>k} B(j,l) n_l over the global ranges
  std::vector<Eigen::VectorXd> suffix_lo(dim + 1, Eigen::VectorXd::Zero(dim));
  std::vector<Eigen::VectorXd> suffix_hi(dim + 1, Eigen::VectorXd::Zero(dim));
  for (int k = dim - 1; k >= 0; --k) {
    suffix_lo[k] = suffix_lo[k + 1];
    suffix_hi[k] = suffix_hi[k + 1];
    for (int j = 0; j < dim; ++j) {
      const double a = B(j, k) * gmin[k];
      const double b = B(j, k) * gmax[k];
      suffix_lo[k][j] += std::min(a, b);
      suffix_hi[k][j] += std::max(a, b);
    }
  }

  std::vector<std::int64_t> current(dim, 0);
  // partial[k] holds sum_{l<k} B(:,l) n_l for the current prefix; each level
  // derives from its parent so round-off never accumulates across siblings
  std::vector<Eigen::VectorXd> partial(dim + 1, Eigen::VectorXd::Zero(dim));
  std::vector<Coords> found;
  std::size_t visits = 0;

  const double r_direct = direct_ball.radius + tol;
  const double r_internal = internal_ball.radius + tol;

  Coords candidate(dim);
  auto descend = [&](auto&& self, int level) -> void {
    if (level == dim) {
      // exact closed-ball membership on the canonical derived position
      for (int k = 0; k < dim; ++k) candidate[k] = current[k];
      const Eigen::VectorXd pos = B * candidate.cast<double>();
      if ((pos.head(d) - direct_ball.center).norm() > r_direct) return;
      if ((pos.tail(m) - internal_ball.center).norm() > r_internal) return;
      if (found.size() >= options.max_points)
        throw ResourceCapError("enumerate: point-count cap exceeded");
      found.push_back(candidate);
      return;
    }

    Interval range{gmin[level], gmax[level]};
    for (int j = 0; j < dim && !range.empty(); ++j) {
      const double coef = B(j, level);
      if (std::abs(coef) < 1e-14) continue;
      const double lo = row_lo[j] - partial[level][j] - suffix_hi[level + 1][j];
      const double hi = row_hi[j] - partial[level][j] - suffix_lo[level + 1][j];
      Interval iv = coef > 0.0 ? Interval{lo / coef, hi / coef} : Interval{hi / coef, lo / coef};
      const double slack = 1e-7 * (1.0 + std::abs(iv.lo) + std::abs(iv.hi));
      iv.lo -= slack;
      iv.hi += slack;
      range = intersect(range, iv);
    }
    if (range.empty()) return;

    const std::int64_t first = static_cast<std::int64_t>(std::ceil(range.lo));
    const std::int64_t last = static_cast<std::int64_t>(std::floor(range.hi));
    for (std::int64_t v = first; v <= last; ++v) {
      if (++visits > options.max_visits)
        throw ResourceCapError("enumerate: search-node cap exceeded");
      current[level] = v;
      partial[level + 1] = partial[level] + B.col(level) * static_cast<double>(v);
      self(self, level + 1);
    }
  };
  descend(descend, 0);

  // iteration order is ascending per level, so `found` is already sorted
  // lexicographically by integer coordinates
  LatticePointList out;
  const Eigen::Index n = static_cast<Eigen::Index>(found.size());
  out.coords.resize(n, dim);
  out.direct.resize(n, d);
  out.star.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.coords.row(i) = found[static_cast<std::size_t>(i)].transpose();
    const Eigen::VectorXd pos = B * found[static_cast<std::size_t>(i)].cast<double>();
    out.direct.row(i) = pos.head(d).transpose();
    out.star.row(i) = pos.tail(m).transpose();
  }
  return out;
}

}  // namespace densecomb
