#include "densecomb/diffraction.hpp"

#include <algorithm>
#include <cmath>

#include "densecomb/accum.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"

namespace densecomb {

namespace {

AutocorrValue flush_small(std::complex<double> v) {
  if (std::abs(v) < 1e-300) return AutocorrValue{{0.0, 0.0}, true};
  return AutocorrValue{v, false};
}

}  // namespace

TruncatedSum autocorr_finite(const DenseComb& comb, const Coords& z, double n, double eps_rel) {
  const auto& scheme = comb.scheme();
  const auto& f = comb.weight();
  if (z.size() != scheme.dim_total())
    throw ValidationError("autocorr_finite: coordinate dimension mismatch");
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("autocorr_finite: bad radius");

  const int d = scheme.dim_direct();
  const int m = scheme.dim_internal();
  const Eigen::VectorXd z_dir = scheme.direct(z);
  const Eigen::VectorXd z_star = scheme.star(z);

  const double eta0 = std::abs(f.self_convolution(Eigen::VectorXd::Zero(m))) / scheme.covolume();
  const double scale = std::max(eta0, 1e-9);
  // the summand carries an extra factor conj(f(x*-z*)) bounded by sup|f|
  const double sup = f.sup_abs();
  const double s =
      sup > 0.0 ? comb.truncation_radius(eps_rel * scale / sup, 1.0) : 3.0;

  const auto pts = enumerate_points(scheme, origin_ball(d, n), origin_ball(m, s));
  const auto& star = pts.star;
  const auto& direct = pts.direct;
  const bool one_d = m == 1;
  const double reach = n + 1e-12;

  const std::complex<double> total = chunked_sum(pts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    // x - z must land in the same closed ball B_n
    if ((direct.row(row).transpose() - z_dir).norm() > reach)
      return std::complex<double>(0.0, 0.0);
    if (one_d) return f.eval1(star(row, 0)) * std::conj(f.eval1(star(row, 0) - z_star[0]));
    return f(star.row(row).transpose()) *
           std::conj(f(star.row(row).transpose() - z_star));
  });

  TruncatedSum out;
  out.value = total / ball_volume(d, n);
  out.truncation_bound = f.decay_C() == 0.0
                             ? 0.0
                             : sup * 2.0 * comb.lemma_constant() * f.decay_C() *
                                   tail_sum_bound(f.decay_alpha(), s - 1.0);
  out.internal_radius = s;
  out.points = pts.size();
  return out;
}

AutocorrValue autocorr(const DenseComb& comb, const Coords& z, double tol) {
  if (z.size() != comb.scheme().dim_total())
    throw ValidationError("autocorr: coordinate dimension mismatch");
  const Eigen::VectorXd z_star = comb.scheme().star(z);
  return flush_small(comb.weight().self_convolution(z_star, tol) / comb.scheme().covolume());
}

std::complex<double> AutocorrelationTable::evaluate(const Coords& z) const {
  if (mode_ == Mode::closed_form) return autocorr(*comb_, z).value;
  return autocorr_finite(*comb_, z, n_).value;
}

AutocorrelationTable AutocorrelationTable::closed_form(const DenseComb& comb,
                                                       const std::vector<Coords>& zs) {
  AutocorrelationTable t(comb, Mode::closed_form, 0.0);
  for (const auto& z : zs) t.entries_[z] = autocorr(comb, z);
  return t;
}

AutocorrelationTable AutocorrelationTable::finite(const DenseComb& comb,
                                                  const std::vector<Coords>& zs, double n) {
  AutocorrelationTable t(comb, Mode::finite_n, n);
  for (const auto& z : zs) t.entries_[z] = flush_small(autocorr_finite(comb, z, n).value);
  return t;
}

std::complex<double> AutocorrelationTable::at(const Coords& z) const {
  const auto it = entries_.find(z);
  if (it == entries_.end()) throw ValidationError("autocorrelation table: coordinate not stored");
  return it->second.value;
}

double AutocorrelationTable::gram_min_eigenvalue() const {
  std::vector<Coords> zs;
  zs.reserve(entries_.size());
  for (const auto& [z, v] : entries_) zs.push_back(z);
  const Eigen::Index n = static_cast<Eigen::Index>(zs.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Coords diff = zs[static_cast<std::size_t>(i)] - zs[static_cast<std::size_t>(j)];
      gram(i, j) = evaluate(diff);
    }
  }
  const Eigen::MatrixXcd herm = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  return solver.eigenvalues().minCoeff();
}

namespace {

// certified bound on sup_{|y| >= R} |f_hat(y)| (nullopt when the weight
// certifies nothing; callers then fall back to a sampled probe)
std::optional<double> ft_tail_bound(const WeightFunction& f, double R) {
  double best = std::numeric_limits<double>::infinity();
  if (f.ft_envelope())
    best = std::min(best, f.ft_envelope()->amplitude * std::exp(-f.ft_envelope()->rate * R * R));
  if (f.second_derivative_l1())
    best = std::min(best, std::min(f.l1_norm(),
                                   *f.second_derivative_l1() / (4.0 * M_PI * M_PI * R * R)));
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

double sampled_ft_tail(const WeightFunction& f, double R) {
  double worst = 0.0;
  Eigen::VectorXd k(1);
  for (int i = 0; i < 64; ++i) {
    k[0] = R * (1.0 + 2.0 * i / 63.0);
    worst = std::max(worst, std::abs(f.fourier_transform(k, 1e-8)));
    k[0] = -k[0];
    worst = std::max(worst, std::abs(f.fourier_transform(k, 1e-8)));
  }
  return worst;
}

DiffractionSpectrum build_spectrum(
    const CutProjectScheme& scheme, const CutProjectScheme& dual, const WeightFunction& f,
    double floor, double kstar_radius, double k_radius,
    const std::function<std::complex<double>(const Coords&, const Eigen::VectorXd&)>& coeff) {
  if (!(floor > 0.0)) throw ValidationError("spectrum: intensity floor must be positive");
  if (!(kstar_radius > 0.0) || !(k_radius > 0.0))
    throw ValidationError("spectrum: radii must be positive");

  const double covol = scheme.covolume();
  const auto certified = ft_tail_bound(f, kstar_radius);
  const double tail_amp = certified ? *certified : sampled_ft_tail(f, kstar_radius);
  const double completeness = (tail_amp / covol) * (tail_amp / covol);
  if (!(completeness < floor))
    throw ValidationError(
        "spectrum: kstar_radius too small for the requested intensity floor "
        "(transform tail still reaches it)");

  const auto dpts = enumerate_points(dual, origin_ball(dual.dim_direct(), k_radius),
                                     origin_ball(dual.dim_internal(), kstar_radius));

  // intensities are independent per dual point: parallel map, then a
  // deterministic ordering pass
  std::vector<double> intensity(dpts.size());
  for_each_chunk(dpts.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(i);
      const Coords c = dpts.coords.row(row).transpose();
      const std::complex<double> v = coeff(c, dpts.star.row(row).transpose());
      intensity[i] = std::norm(v);
    }
  });

  DiffractionSpectrum out;
  out.intensity_floor = floor;
  out.kstar_radius = kstar_radius;
  out.k_radius = k_radius;
  out.completeness_bound = completeness;
  out.weight_name = f.name();
  out.scheme_name = scheme.name();
  for (std::size_t i = 0; i < dpts.size(); ++i) {
    if (intensity[i] < floor) continue;
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    Peak p;
    p.dual_coords = dpts.coords.row(row).transpose();
    p.k = dpts.direct.row(row).transpose();
    p.k_star = dpts.star.row(row).transpose();
    p.intensity = intensity[i];
    out.peaks.push_back(std::move(p));
  }
  std::sort(out.peaks.begin(), out.peaks.end(), [](const Peak& x, const Peak& y) {
    if (x.intensity != y.intensity) return x.intensity > y.intensity;
    return CoordsLess{}(x.dual_coords, y.dual_coords);
  });
  return out;
}

}  // namespace

DiffractionSpectrum spectrum(const DenseComb& comb, double intensity_floor, double kstar_radius,
                             double k_radius) {
  return build_spectrum(comb.scheme(), comb.dual_scheme(), comb.weight(), intensity_floor,
                        kstar_radius, k_radius,
                        [&](const Coords& c, const Eigen::VectorXd&) {
                          return fourier_bohr(comb, c);
                        });
}

DiffractionSpectrum spectrum_regular(const CutProjectScheme& scheme, const Window& window,
                                     const WeightFunction& f, double intensity_floor,
                                     double kstar_radius, double k_radius) {
  if (!scheme.certified())
    throw ValidationError("spectrum_regular: scheme lacks the cut-and-project certificate");
  if (scheme.dim_internal() != 1)
    throw ValidationError("spectrum_regular: windowed transforms implemented for 1-D internal space");
  require_support_inside(window, f);

  double lo, hi;
  if (window.is_box()) {
    lo = window.intervals()[0].lo;
    hi = window.intervals()[0].hi;
  } else {
    lo = window.ball_center()[0] - window.ball_radius();
    hi = window.ball_center()[0] + window.ball_radius();
  }
  const double covol = scheme.covolume();
  const CutProjectScheme dual = scheme.dual();

  auto windowed_coeff = [&, lo, hi](const Coords&, const Eigen::VectorXd& kstar) {
    const double ks = kstar[0];
    const auto q = integrate_interval(
        [&f, ks](double u) { return f.eval1(u) * std::polar(1.0, 2.0 * M_PI * ks * u); }, lo, hi,
        1e-12);
    return q.value / covol;
  };
  return build_spectrum(scheme, dual, f, intensity_floor, kstar_radius, k_radius, windowed_coeff);
}

namespace {

struct PoissonGeometry {
  double Rz = 2.0, sz = 3.0, Rk = 2.0, sk = 2.0;
};

constexpr double kPoissonRadiusCap = 2e4;

}  // namespace

PoissonReport poisson_check(const DenseComb& comb, double sigma, double tol,
                            double radius_scale) {
  if (!(sigma > 0.0)) throw ValidationError("poisson_check: sigma must be positive");
  if (!(tol > 0.0)) throw ValidationError("poisson_check: tol must be positive");
  if (!(radius_scale > 0.0)) throw ValidationError("poisson_check: radius scale must be positive");

  const auto& scheme = comb.scheme();
  const auto& dual = comb.dual_scheme();
  const auto& f = comb.weight();
  if (!f.ft_envelope())
    throw ValidationError(
        "poisson_check: weight does not certify a Gaussian transform envelope; "
        "use the regular-model-set variant");

  const int d = scheme.dim_direct();
  const int m = scheme.dim_internal();
  const double covol = scheme.covolume();
  const double Sd = unit_ball_volume(d);
  const double Sm = unit_ball_volume(m);
  const double c_d = 2.0 * Sd / covol;
  const double c_m = 2.0 * Sm / covol;
  const double cd_star = 2.0 * Sd * covol;  // dual covolume is 1/covol
  const double cm_star = 2.0 * Sm * covol;
  const double alpha = f.decay_alpha();
  const double eta0b =
      std::abs(f.self_convolution(Eigen::VectorXd::Zero(m))) / covol + 1e-15;
  const double C_eta = std::pow(2.0, m + 2 + alpha) * f.decay_C() * f.l1_norm() / covol;
  const double cb2 = (f.l1_norm() / covol) * (f.l1_norm() / covol);
  const TransformEnvelope env = *f.ft_envelope();
  const double ghat_max = std::pow(sigma, d);

  auto vol_d = [&](double x) { return Sd * std::pow(x, d); };
  auto vol_m = [&](double x) { return Sm * std::pow(x, m); };

  auto htail = [&](const PoissonGeometry& g) {
    return eta0b * c_d * vol_m(g.sz) *
           gaussian_series_tail_bound(d, M_PI / (sigma * sigma), g.Rz);
  };
  auto itail = [&](const PoissonGeometry& g) {
    if (C_eta == 0.0) return 0.0;
    return 2.0 * c_m * C_eta * vol_d(g.Rz) * tail_sum_bound(alpha, g.sz - 1.0);
  };
  auto ktail = [&](const PoissonGeometry& g) {
    return cb2 * cd_star * vol_m(g.sk) * ghat_max *
           gaussian_series_tail_bound(d, M_PI * sigma * sigma, g.Rk);
  };
  auto stail = [&](const PoissonGeometry& g) {
    if (env.amplitude == 0.0) return 0.0;
    return (env.amplitude * env.amplitude / (covol * covol)) * ghat_max * cm_star * vol_d(g.Rk) *
           gaussian_series_tail_bound(m, 2.0 * env.rate, g.sk);
  };

  const double eps_t = tol / 8.0;
  PoissonGeometry g;
  for (int iter = 0; iter < 64; ++iter) {
    bool changed = false;
    auto grow = [&](double& radius, auto&& tail_fn) {
      while (tail_fn(g) >= eps_t) {
        radius += 1.0;
        changed = true;
        if (radius > kPoissonRadiusCap)
          throw ToleranceError("poisson_check: truncation bounds cannot meet tol within caps");
      }
    };
    grow(g.Rz, htail);
    grow(g.sz, itail);
    grow(g.Rk, ktail);
    grow(g.sk, stail);
    if (!changed) break;
  }
  g.Rz = std::max(1.0, g.Rz * radius_scale);
  g.sz = std::max(3.0, g.sz * radius_scale);
  g.Rk = std::max(1.0, g.Rk * radius_scale);
  g.sk = std::max(1.0, g.sk * radius_scale);

  // direct side: sum_z eta(z) g(z)
  const auto zpts = enumerate_points(scheme, origin_ball(d, g.Rz), origin_ball(m, g.sz));
  const std::complex<double> lhs = chunked_sum(zpts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const std::complex<double> eta =
        f.self_convolution(zpts.star.row(row).transpose()) / covol;
    const double gz = std::exp(-M_PI * zpts.direct.row(row).squaredNorm() / (sigma * sigma));
    return eta * gz;
  });

  // dual side: sum_k |c(k)|^2 ghat(k)
  const auto kpts = enumerate_points(dual, origin_ball(d, g.Rk), origin_ball(m, g.sk));
  const std::complex<double> rhs = chunked_sum(kpts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const std::complex<double> c =
        f.fourier_transform(-kpts.star.row(row).transpose()) / covol;
    const double ghat =
        ghat_max * std::exp(-M_PI * sigma * sigma * kpts.direct.row(row).squaredNorm());
    return std::norm(c) * ghat;
  });

  PoissonReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.defect = std::abs(lhs - rhs);
  report.tol = tol;
  report.pass = report.defect < tol * std::max(std::abs(lhs), 1.0);
  report.truncation_bound = htail(g) + itail(g) + ktail(g) + stail(g);
  report.direct_radius = g.Rz;
  report.internal_radius = g.sz;
  report.dual_direct_radius = g.Rk;
  report.dual_internal_radius = g.sk;
  report.lhs_points = zpts.size();
  report.rhs_points = kpts.size();
  return report;
}

PoissonReport poisson_check_regular(const CutProjectScheme& scheme, const Window& window,
                                    const WeightFunction& f, double sigma, double tol,
                                    double radius_scale) {
  if (!(sigma > 0.0) || !(tol > 0.0) || !(radius_scale > 0.0))
    throw ValidationError("poisson_check_regular: bad parameters");
  if (scheme.dim_direct() != 1 || scheme.dim_internal() != 1)
    throw ValidationError("poisson_check_regular: implemented for 1-D direct and internal space");
  if (!scheme.certified())
    throw ValidationError("poisson_check_regular: scheme lacks the certificate");
  require_support_inside(window, f);
  if (!f.second_derivative_l1() && !f.ft_envelope())
    throw ValidationError(
        "poisson_check_regular: weight certifies no transform decay (need C^2 or an envelope)");

  double lo, hi;
  if (window.is_box()) {
    lo = window.intervals()[0].lo;
    hi = window.intervals()[0].hi;
  } else {
    lo = window.ball_center()[0] - window.ball_radius();
    hi = window.ball_center()[0] + window.ball_radius();
  }
  const double wlen = hi - lo;
  const double covol = scheme.covolume();
  const CutProjectScheme dual = scheme.dual();
  const double Sd = unit_ball_volume(1);
  const double c_d = 2.0 * Sd / covol;
  const double cd_star = 2.0 * Sd * covol;
  const double cm_star = cd_star;
  const double cb2 = (f.l1_norm() / covol) * (f.l1_norm() / covol);
  const double ghat_max = sigma;
  const double eta_max = f.sup_abs() * f.sup_abs() * wlen / covol;

  auto htail = [&](double Rz) {
    return eta_max * c_d * (2.0 * wlen) *
           gaussian_series_tail_bound(1, M_PI / (sigma * sigma), Rz);
  };
  auto ktail = [&](double Rk, double sk) {
    return cb2 * cd_star * (2.0 * sk) * ghat_max *
           gaussian_series_tail_bound(1, M_PI * sigma * sigma, Rk);
  };
  auto stail = [&](double Rk, double sk) {
    double amp2 = std::numeric_limits<double>::infinity();
    if (f.second_derivative_l1()) {
      const double a = *f.second_derivative_l1() / (covol * 4.0 * M_PI * M_PI);
      // sum_{n>=sk} (n+1) (a/n^2)^2 <= a^2 (sk-1)^{-2}
      amp2 = a * a * std::pow(sk - 1.0, -2.0);
    }
    if (f.ft_envelope()) {
      const auto& env = *f.ft_envelope();
      amp2 = std::min(amp2, (env.amplitude * env.amplitude / (covol * covol)) *
                                gaussian_series_tail_bound(1, 2.0 * env.rate, sk));
    }
    return ghat_max * cm_star * (2.0 * Rk) * amp2;
  };

  const double eps_t = tol / 8.0;
  double Rz = 2.0, Rk = 2.0, sk = 2.0;
  for (int iter = 0; iter < 64; ++iter) {
    bool changed = false;
    while (htail(Rz) >= eps_t) {
      Rz += 1.0;
      changed = true;
      if (Rz > kPoissonRadiusCap)
        throw ToleranceError("poisson_check_regular: cannot meet tol within caps");
    }
    while (ktail(Rk, sk) >= eps_t) {
      Rk += 1.0;
      changed = true;
      if (Rk > kPoissonRadiusCap)
        throw ToleranceError("poisson_check_regular: cannot meet tol within caps");
    }
    while (stail(Rk, sk) >= eps_t) {
      sk += 1.0;
      changed = true;
      if (sk > kPoissonRadiusCap)
        throw ToleranceError("poisson_check_regular: cannot meet tol within caps");
    }
    if (!changed) break;
  }
  Rz = std::max(1.0, Rz * radius_scale);
  Rk = std::max(1.0, Rk * radius_scale);
  sk = std::max(2.0, sk * radius_scale);

  // windowed autocorrelation eta_W(z), zero when the windows do not overlap
  auto eta_W = [&](double zstar) -> std::complex<double> {
    const double a = std::max(lo, lo + zstar);
    const double b = std::min(hi, hi + zstar);
    if (!(b > a)) return {0.0, 0.0};
    return integrate_interval(
               [&f, zstar](double u) { return f.eval1(u) * std::conj(f.eval1(u - zstar)); }, a,
               b, 1e-12)
               .value /
           covol;
  };

  const auto zpts =
      enumerate_points(scheme, origin_ball(1, Rz), Ball{Eigen::VectorXd::Zero(1), wlen + 1e-9});
  const std::complex<double> lhs = chunked_sum(zpts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const double gz = std::exp(-M_PI * zpts.direct.row(row).squaredNorm() / (sigma * sigma));
    return eta_W(zpts.star(row, 0)) * gz;
  });

  const auto kpts = enumerate_points(dual, origin_ball(1, Rk), origin_ball(1, sk));
  const std::complex<double> rhs = chunked_sum(kpts.size(), [&](std::size_t i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const double ks = kpts.star(row, 0);
    const std::complex<double> c =
        integrate_interval(
            [&f, ks](double u) { return f.eval1(u) * std::polar(1.0, 2.0 * M_PI * ks * u); }, lo,
            hi, 1e-12)
            .value /
        covol;
    const double ghat =
        ghat_max * std::exp(-M_PI * sigma * sigma * kpts.direct.row(row).squaredNorm());
    return std::norm(c) * ghat;
  });

  PoissonReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.defect = std::abs(lhs - rhs);
  report.tol = tol;
  report.pass = report.defect < tol * std::max(std::abs(lhs), 1.0);
  report.truncation_bound = htail(Rz) + ktail(Rk, sk) + stail(Rk, sk);
  report.direct_radius = Rz;
  report.internal_radius = wlen;
  report.dual_direct_radius = Rk;
  report.dual_internal_radius = sk;
  report.lhs_points = zpts.size();
  report.rhs_points = kpts.size();
  return report;
}

}  // namespace densecomb
