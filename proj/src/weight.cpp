#include "densecomb/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "densecomb/errors.hpp"

namespace densecomb {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// natural cubic spline through (x_i, v_i); evaluates to 0 outside [x_0, x_n]
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> v)
      : x_(std::move(x)), v_(std::move(v)), m2_(x_.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 2) throw ValidationError("tabulated weight: need at least two samples");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw ValidationError("tabulated weight: sample abscissas must be strictly increasing");
    if (n == 2) return;  // m2 = 0 -> linear
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = x_[i] - x_[i - 1];
      const double hr = x_[i + 1] - x_[i];
      a[i] = hl / 6.0;
      b[i] = (hl + hr) / 3.0;
      c[i] = hr / 6.0;
      r[i] = (v_[i + 1] - v_[i]) / hr - (v_[i] - v_[i - 1]) / hl;
    }
    // Thomas solve on the interior unknowns, natural boundary (m2 = 0 at ends)
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    for (int i = static_cast<int>(n) - 2; i >= 1; --i)
      m2_[i] = (r[i] - c[i] * m2_[i + 1]) / b[i];
  }

  double operator()(double t) const {
    if (t < x_.front() || t > x_.back()) return 0.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double u = (x_[i + 1] - t) / h;
    const double w = (t - x_[i]) / h;
    return u * v_[i] + w * v_[i + 1] +
           ((u * u * u - u) * m2_[i] + (w * w * w - w) * m2_[i + 1]) * h * h / 6.0;
  }

 private:
  std::vector<double> x_, v_;
  std::vector<double> m2_;
};

}  // namespace

WeightFunction WeightFunction::custom(Spec spec) {
  if (spec.dim < 1) throw ValidationError("weight: dimension must be >= 1");
  if (!(spec.decay_alpha > 0.0)) throw ValidationError("weight: decay_alpha must be positive");
  if (spec.decay_C < 0.0 || spec.sup_abs < 0.0 || spec.l1_norm < 0.0)
    throw ValidationError("weight: certificate constants must be nonnegative");
  if (!spec.eval && !spec.eval1) throw ValidationError("weight: missing evaluator");
  if (!spec.eval) {
    auto e1 = spec.eval1;
    spec.eval = [e1](const Eigen::VectorXd& y) { return e1(y[0]); };
  }
  if (!spec.eval1 && spec.dim == 1) {
    auto e = spec.eval;
    spec.eval1 = [e](double y) {
      Eigen::VectorXd v(1);
      v[0] = y;
      return e(v);
    };
  }
  return WeightFunction(std::make_shared<const Spec>(std::move(spec)));
}

WeightFunction WeightFunction::gaussian(int dim, double alpha) {
  if (dim < 1 || !(alpha > 0.0)) throw ValidationError("gaussian weight: bad parameters");
  Spec s;
  s.name = "gaussian";
  s.cli_spec = "gaussian:alpha=" + fmt17(alpha) + (dim == 1 ? "" : ":dim=" + std::to_string(dim));
  s.dim = dim;
  const double p = dim + 1 + alpha;
  // max of r^p e^{-pi r^2} sits at r^2 = p/(2 pi)
  s.decay_C = std::pow(p / (2.0 * M_PI * M_E), 0.5 * p) * (1.0 + 1e-9);
  s.decay_alpha = alpha;
  s.sup_abs = 1.0;
  s.l1_norm = 1.0;
  s.eval = [](const Eigen::VectorXd& y) {
    return std::complex<double>(std::exp(-M_PI * y.squaredNorm()), 0.0);
  };
  s.eval1 = [](double y) { return std::complex<double>(std::exp(-M_PI * y * y), 0.0); };
  s.analytic_ft = [](const Eigen::VectorXd& k) {
    return std::complex<double>(std::exp(-M_PI * k.squaredNorm()), 0.0);
  };
  const double half_pow = std::pow(2.0, -0.5 * dim);
  s.analytic_selfconv = [half_pow](const Eigen::VectorXd& u) {
    return std::complex<double>(half_pow * std::exp(-0.5 * M_PI * u.squaredNorm()), 0.0);
  };
  s.ft_envelope = TransformEnvelope{1.0, M_PI};
  return custom(std::move(s));
}

namespace {

double bump_phi(double t) {
  const double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / s);
}

double bump_phi_dd(double t) {
  const double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  const double phi = std::exp(1.0 - 1.0 / s);
  const double psi = -2.0 * t / (s * s);
  const double psi_d = (-2.0 - 6.0 * t * t) / (s * s * s);
  return phi * (psi * psi + psi_d);
}

}  // namespace

WeightFunction WeightFunction::bump(double center, double radius, double alpha) {
  if (!(radius > 0.0) || !(alpha > 0.0)) throw ValidationError("bump weight: bad parameters");
  Spec s;
  s.name = "bump";
  s.cli_spec = "bump:center=" + fmt17(center) + ":radius=" + fmt17(radius) +
               ":alpha=" + fmt17(alpha);
  s.dim = 1;
  s.decay_alpha = alpha;
  // compact support: |y|^{2+alpha}|f| <= (|center|+radius)^{2+alpha}
  s.decay_C = std::pow(std::abs(center) + radius, 2.0 + alpha);
  s.sup_abs = 1.0;
  s.eval1 = [center, radius](double y) {
    return std::complex<double>(bump_phi((y - center) / radius), 0.0);
  };
  auto l1 = integrate_interval(
      [center, radius](double y) {
        return std::complex<double>(bump_phi((y - center) / radius), 0.0);
      },
      center - radius, center + radius, 1e-12);
  s.l1_norm = l1.value.real() + l1.error_bound;
  auto d2 = integrate_interval(
      [center, radius](double y) {
        return std::complex<double>(std::abs(bump_phi_dd((y - center) / radius)) /
                                        (radius * radius),
                                    0.0);
      },
      center - radius, center + radius, 1e-9);
  s.second_derivative_l1 = d2.value.real() + d2.error_bound;
  return custom(std::move(s));
}

WeightFunction WeightFunction::lorentzian(double claimed_C, double claimed_alpha) {
  Spec s;
  s.name = "lorentzian";
  s.cli_spec = "lorentzian:C=" + fmt17(claimed_C) + ":alpha=" + fmt17(claimed_alpha);
  s.dim = 1;
  s.decay_C = claimed_C;
  s.decay_alpha = claimed_alpha;
  s.sup_abs = 1.0;
  s.l1_norm = M_PI;
  s.eval1 = [](double y) { return std::complex<double>(1.0 / (1.0 + y * y), 0.0); };
  s.analytic_ft = [](const Eigen::VectorXd& k) {
    return std::complex<double>(M_PI * std::exp(-2.0 * M_PI * std::abs(k[0])), 0.0);
  };
  s.analytic_selfconv = [](const Eigen::VectorXd& u) {
    return std::complex<double>(2.0 * M_PI / (u[0] * u[0] + 4.0), 0.0);
  };
  return custom(std::move(s));
}

WeightFunction WeightFunction::zero(int dim) {
  Spec s;
  s.name = "zero";
  s.cli_spec = "zero";
  s.dim = dim;
  s.decay_C = 0.0;
  s.decay_alpha = 1.0;
  s.sup_abs = 0.0;
  s.l1_norm = 0.0;
  s.eval = [](const Eigen::VectorXd&) { return std::complex<double>(0.0, 0.0); };
  s.eval1 = [](double) { return std::complex<double>(0.0, 0.0); };
  s.analytic_ft = [](const Eigen::VectorXd&) { return std::complex<double>(0.0, 0.0); };
  s.analytic_selfconv = [](const Eigen::VectorXd&) { return std::complex<double>(0.0, 0.0); };
  s.ft_envelope = TransformEnvelope{0.0, M_PI};
  return custom(std::move(s));
}

WeightFunction WeightFunction::tabulated(const std::vector<double>& y,
                                         const std::vector<std::complex<double>>& f, double C,
                                         double alpha) {
  if (y.size() != f.size()) throw ValidationError("tabulated weight: size mismatch");
  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  auto sre = std::make_shared<CubicSpline>(y, std::move(re));
  auto sim = std::make_shared<CubicSpline>(y, std::move(im));

  Spec s;
  s.name = "tabulated";
  s.cli_spec = "tabulated";
  s.dim = 1;
  s.decay_C = C;
  s.decay_alpha = alpha;
  s.eval1 = [sre, sim](double t) { return std::complex<double>((*sre)(t), (*sim)(t)); };
  // sup estimated on a refinement of the sample grid (splines can overshoot
  // between nodes, hence the margin)
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    for (int j = 0; j < 16; ++j) {
      const double t = y[i] + (y[i + 1] - y[i]) * j / 16.0;
      sup = std::max(sup, std::abs(std::complex<double>((*sre)(t), (*sim)(t))));
    }
  }
  s.sup_abs = sup * 1.05;
  auto l1 = integrate_interval(
      [sre, sim](double t) {
        return std::complex<double>(std::abs(std::complex<double>((*sre)(t), (*sim)(t))), 0.0);
      },
      y.front(), y.back(), 1e-10);
  s.l1_norm = l1.value.real() + l1.error_bound;
  return custom(std::move(s));
}

std::complex<double> WeightFunction::operator()(const Eigen::VectorXd& y) const {
  return spec_->eval(y);
}

std::complex<double> WeightFunction::eval1(double y) const {
  if (spec_->eval1) return spec_->eval1(y);
  Eigen::VectorXd v(1);
  v[0] = y;
  return spec_->eval(v);
}

const std::string& WeightFunction::name() const { return spec_->name; }
const std::string& WeightFunction::cli_spec() const { return spec_->cli_spec; }
int WeightFunction::dim() const { return spec_->dim; }
double WeightFunction::decay_C() const { return spec_->decay_C; }
double WeightFunction::decay_alpha() const { return spec_->decay_alpha; }
double WeightFunction::sup_abs() const { return spec_->sup_abs; }
double WeightFunction::l1_norm() const { return spec_->l1_norm; }
bool WeightFunction::has_analytic_ft() const { return static_cast<bool>(spec_->analytic_ft); }
bool WeightFunction::has_analytic_selfconv() const {
  return static_cast<bool>(spec_->analytic_selfconv);
}
const std::optional<TransformEnvelope>& WeightFunction::ft_envelope() const {
  return spec_->ft_envelope;
}
const std::optional<double>& WeightFunction::second_derivative_l1() const {
  return spec_->second_derivative_l1;
}

IntegrandDecay WeightFunction::integrand_certificate() const {
  const double one_plus_beta = spec_->dim + 1 + spec_->decay_alpha;
  const double C = std::pow(2.0, one_plus_beta) * std::max(spec_->decay_C, spec_->sup_abs);
  return IntegrandDecay{C, one_plus_beta - 1.0};
}

std::complex<double> WeightFunction::fourier_transform(const Eigen::VectorXd& k,
                                                       double tol) const {
  if (k.size() != spec_->dim) throw ValidationError("fourier_transform: dimension mismatch");
  if (spec_->analytic_ft) return spec_->analytic_ft(k);
  if (spec_->dim != 1)
    throw ValidationError("fourier_transform: quadrature fallback implemented for 1-D weights");
  const double kv = k[0];
  auto self = *this;
  return integrate_decaying(
             [self, kv](double y) {
               return self.eval1(y) * std::polar(1.0, -2.0 * M_PI * kv * y);
             },
             integrand_certificate(), tol)
      .value;
}

std::complex<double> WeightFunction::self_convolution(const Eigen::VectorXd& u,
                                                      double tol) const {
  if (u.size() != spec_->dim) throw ValidationError("self_convolution: dimension mismatch");
  if (spec_->analytic_selfconv) return spec_->analytic_selfconv(u);
  if (spec_->dim != 1)
    throw ValidationError("self_convolution: quadrature fallback implemented for 1-D weights");
  const double uv = u[0];
  auto self = *this;
  IntegrandDecay cert = integrand_certificate();
  cert.C *= std::max(spec_->sup_abs, 1e-300);
  return integrate_decaying(
             [self, uv](double v) { return self.eval1(v) * std::conj(self.eval1(v - uv)); },
             cert, tol)
      .value;
}

namespace {

std::vector<Eigen::VectorXd> sphere_directions(int dim, int count) {
  std::vector<Eigen::VectorXd> dirs;
  if (dim == 1) {
    Eigen::VectorXd p(1), n(1);
    p[0] = 1.0;
    n[0] = -1.0;
    dirs = {p, n};
    return dirs;
  }
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double phi = 2.0 * M_PI * i / count;
      Eigen::VectorXd v(2);
      v << std::cos(phi), std::sin(phi);
      dirs.push_back(v);
    }
    return dirs;
  }
  // deterministic pseudo-random directions for higher dimensions
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) {
      // Box-Muller
      const double u1 = std::max(next(), 1e-300);
      const double u2 = next();
      v[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    if (v.norm() > 0) dirs.push_back(v.normalized());
  }
  return dirs;
}

}  // namespace

DecayReport decay_check_exponent(const WeightFunction& f, double exponent,
                                 const std::vector<double>& radii, int sphere_samples) {
  if (radii.empty()) throw ValidationError("decay_check: radii list must be nonempty");
  DecayReport report;
  report.radii = radii;
  report.certificate_C = f.decay_C();
  report.exponent = exponent;
  const auto dirs = sphere_directions(f.dim(), sphere_samples);
  bool ok = true;
  for (double r : radii) {
    double worst = 0.0;
    for (const auto& dir : dirs) {
      const Eigen::VectorXd y = r * dir;
      worst = std::max(worst, std::pow(r, exponent) * std::abs(f(y)));
    }
    report.max_value.push_back(worst);
    if (worst > f.decay_C()) ok = false;
  }
  report.pass = ok;
  return report;
}

DecayReport decay_check(const WeightFunction& f, const std::vector<double>& radii,
                        int sphere_samples) {
  return decay_check_exponent(f, f.dim() + 1 + f.decay_alpha(), radii, sphere_samples);
}

WeightFunction parse_weight_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ValidationError("weight spec: empty");

  auto kv = [&](const std::string& key, double fallback, bool* found = nullptr) {
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos) continue;
      if (parts[i].substr(0, eq) == key) {
        if (found) *found = true;
        return std::stod(parts[i].substr(eq + 1));
      }
    }
    return fallback;
  };
  auto kvs = [&](const std::string& key) -> std::string {
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos) continue;
      if (parts[i].substr(0, eq) == key) return parts[i].substr(eq + 1);
    }
    return {};
  };

  const std::string& kind = parts[0];
  if (kind == "gaussian")
    return WeightFunction::gaussian(static_cast<int>(kv("dim", 1)), kv("alpha", 4.0));
  if (kind == "bump") {
    bool has_c = false, has_r = false;
    const double c = kv("center", 0.0, &has_c);
    const double r = kv("radius", 0.0, &has_r);
    if (!has_c || !has_r) throw ValidationError("bump weight spec: need center= and radius=");
    return WeightFunction::bump(c, r, kv("alpha", 1.0));
  }
  if (kind == "lorentzian") return WeightFunction::lorentzian(kv("C", 1.0), kv("alpha", 1.0));
  if (kind == "zero") return WeightFunction::zero(static_cast<int>(kv("dim", 1)));
  if (kind == "tabulated") {
    const std::string path = kvs("path");
    if (path.empty()) throw ValidationError("tabulated weight spec: need path=");
    bool has_C = false, has_a = false;
    const double C = kv("C", 0.0, &has_C);
    const double a = kv("alpha", 0.0, &has_a);
    if (!has_C || !has_a) throw ValidationError("tabulated weight spec: need C= and alpha=");
    // CSV rows: y, Re f, Im f
    std::vector<double> ys;
    std::vector<std::complex<double>> fs;
    FILE* fp = std::fopen(path.c_str(), "r");
    if (!fp) throw ValidationError("tabulated weight: cannot open " + path);
    char line[512];
    while (std::fgets(line, sizeof line, fp)) {
      if (line[0] == '#' || line[0] == '\n') continue;
      double y, re, im;
      if (std::sscanf(line, "%lf , %lf , %lf", &y, &re, &im) == 3 ||
          std::sscanf(line, "%lf %lf %lf", &y, &re, &im) == 3) {
        ys.push_back(y);
        fs.emplace_back(re, im);
      }
    }
    std::fclose(fp);
    return WeightFunction::tabulated(ys, fs, C, a);
  }
  throw ValidationError("weight spec: unknown kind '" + kind + "'");
}

}  // namespace densecomb
