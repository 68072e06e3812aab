#include "densecomb/comb.hpp"

#include <cmath>

#include "densecomb/accum.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"

namespace densecomb {

DenseComb::DenseComb(CutProjectScheme scheme, WeightFunction weight)
    : scheme_(std::move(scheme)), dual_(scheme_.dual()), weight_(std::move(weight)) {
  if (!scheme_.certified())
    throw ValidationError("comb: scheme lacks the cut-and-project certificate");
  if (weight_.dim() != scheme_.dim_internal())
    throw ValidationError("comb: weight dimension does not match internal space");

  // Thm hypotheses differ between d+1+alpha and m+1+alpha; the stricter
  // max(d,m)+1+alpha is enforced here against the weight's own C.
  const double exponent =
      std::max(scheme_.dim_direct(), scheme_.dim_internal()) + 1 + weight_.decay_alpha();
  const auto report =
      decay_check_exponent(weight_, exponent, {1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 1000.0});
  if (!report.pass)
    throw ValidationError("comb: weight fails its decay certificate at exponent max(d,m)+1+alpha");

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(weight_.dim());
  rho_ = weight_.fourier_transform(zero) / scheme_.covolume();
}

double DenseComb::lemma_constant() const {
  return 2.0 * unit_ball_volume(scheme_.dim_internal()) / scheme_.covolume();
}

double DenseComb::truncation_radius(double epsilon, double window_volume) const {
  if (!(epsilon > 0.0)) throw ValidationError("truncation_radius: epsilon must be positive");
  if (!(window_volume > 0.0))
    throw ValidationError("truncation_radius: window volume must be positive");
  const double C = weight_.decay_C();
  const double alpha = weight_.decay_alpha();
  if (C == 0.0) return 3.0;
  const double prefactor = 2.0 * lemma_constant() * C * window_volume;
  if (!std::isfinite(epsilon)) return 3.0;

  auto bound = [&](double s) { return prefactor * tail_sum_bound(alpha, s - 1.0) ; };

  constexpr double kCap = 1e8;
  // closed-form start: (s-2)^alpha > prefactor / (alpha epsilon)
  double s = 3.0;
  const double x = prefactor / (alpha * epsilon);
  if (x > 1.0) {
    const double est = 2.0 + std::pow(x, 1.0 / alpha);
    if (est > kCap)
      throw ResourceCapError("truncation_radius: epsilon unreachable below the radius cap");
    s = std::max(3.0, std::floor(est) + 1.0);
  }
  while (s > 3.0 && bound(s - 1.0) < epsilon) s -= 1.0;
  while (bound(s) >= epsilon) {
    s += 1.0;
    if (s > kCap)
      throw ResourceCapError("truncation_radius: epsilon unreachable below the radius cap");
  }
  return s;
}

namespace {

TruncatedSum truncated_comb_sum(const DenseComb& comb, const Eigen::VectorXd* k, double r,
                                const Eigen::VectorXd& a, double eps_rel) {
  const auto& scheme = comb.scheme();
  const auto& f = comb.weight();
  if (a.size() != scheme.dim_direct())
    throw ValidationError("comb sum: center dimension mismatch");
  if (k && k->size() != scheme.dim_direct())
    throw ValidationError("comb sum: wave vector dimension mismatch");
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("comb sum: radius must be finite");

  const double scale = std::max(std::abs(comb.rho()), 1e-9);
  const double s = comb.truncation_radius(eps_rel * scale, 1.0);

  const auto pts = enumerate_points(scheme, Ball{a, r},
                                    origin_ball(scheme.dim_internal(), s));
  const auto& star = pts.star;
  const auto& direct = pts.direct;
  const bool one_d = scheme.dim_internal() == 1;

  std::complex<double> total;
  if (k == nullptr) {
    total = chunked_sum(pts.size(), [&](std::size_t i) {
      const Eigen::Index row = static_cast<Eigen::Index>(i);
      return one_d ? f.eval1(star(row, 0)) : f(star.row(row).transpose());
    });
  } else {
    const Eigen::VectorXd kv = *k;
    total = chunked_sum(pts.size(), [&](std::size_t i) {
      const Eigen::Index row = static_cast<Eigen::Index>(i);
      const std::complex<double> w =
          one_d ? f.eval1(star(row, 0)) : f(star.row(row).transpose());
      return w * std::polar(1.0, -2.0 * M_PI * kv.dot(direct.row(row)));
    });
  }

  TruncatedSum out;
  out.value = total / ball_volume(scheme.dim_direct(), r);
  out.truncation_bound =
      f.decay_C() == 0.0
          ? 0.0
          : 2.0 * comb.lemma_constant() * f.decay_C() * tail_sum_bound(f.decay_alpha(), s - 1.0);
  out.internal_radius = s;
  out.points = pts.size();
  return out;
}

}  // namespace

TruncatedSum weyl_dense(const DenseComb& comb, double r, const Eigen::VectorXd& a,
                        double eps_rel) {
  return truncated_comb_sum(comb, nullptr, r, a, eps_rel);
}

TruncatedSum fourier_bohr_finite(const DenseComb& comb, const Eigen::VectorXd& k, double r,
                                 const Eigen::VectorXd& a, double eps_rel) {
  return truncated_comb_sum(comb, &k, r, a, eps_rel);
}

std::complex<double> fourier_bohr(const DenseComb& comb,
                                  const std::optional<Coords>& dual_coords) {
  if (!dual_coords.has_value()) return {0.0, 0.0};  // k outside the module
  const Eigen::VectorXd kstar = comb.dual_scheme().star(*dual_coords);
  return comb.weight().fourier_transform(-kstar) / comb.scheme().covolume();
}

}  // namespace densecomb
