#include <doctest.h>

#include <cmath>

#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"
#include "densecomb/weight.hpp"
#include "oracles.hpp"

using namespace densecomb;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v[0] = x;
  return v;
}

}  // namespace

TEST_CASE("decay_check: gaussian passes (C=1, alpha=1)") {
  WeightFunction::Spec spec;
  spec.name = "gauss-c1a1";
  spec.dim = 1;
  spec.decay_C = 1.0;
  spec.decay_alpha = 1.0;
  spec.sup_abs = 1.0;
  spec.l1_norm = 1.0;
  spec.eval1 = [](double y) { return std::complex<double>(std::exp(-M_PI * y * y), 0.0); };
  const auto f = WeightFunction::custom(std::move(spec));

  const double argmax = std::sqrt(3.0 / (2.0 * M_PI));
  const auto report = decay_check(f, {0.3, argmax, 1.0, 2.0, 5.0, 100.0});
  CHECK(report.pass);
  double worst = 0.0;
  for (double v : report.max_value) worst = std::max(worst, v);
  // the true maximum of |y|^3 e^{-pi y^2} sits at sqrt(3/(2 pi))
  CHECK(worst == doctest::Approx(oracle::kCubicGaussianMax).epsilon(1e-9));
  CHECK(worst <= 1.0);
}

TEST_CASE("decay_check: zero weight passes any certificate") {
  const auto report = decay_check(WeightFunction::zero(), {1.0, 10.0, 1e6});
  CHECK(report.pass);
  for (double v : report.max_value) CHECK(v == 0.0);
}

TEST_CASE("decay_check: lorentzian fails at large radii") {
  const auto f = WeightFunction::lorentzian(1.0, 1.0);
  const auto report = decay_check(f, {1.0, 1000.0});
  CHECK_FALSE(report.pass);
  // |y|^3/(1+y^2) ~ y at y = 1e3
  CHECK(report.max_value.back() > 100.0);
}

TEST_CASE("decay_check: empty radii rejected") {
  CHECK_THROWS_AS(decay_check(WeightFunction::gaussian(), {}), ValidationError);
}

TEST_CASE("gaussian weight: analytic transform matches quadrature at 10 frequencies") {
  const auto f = WeightFunction::gaussian();
  for (int i = 0; i < 10; ++i) {
    const double k = -2.0 + 4.0 * i / 9.0;
    const auto analytic = f.fourier_transform(vec1(k));
    const auto quad = integrate_decaying(
        [&f, k](double y) { return f.eval1(y) * std::polar(1.0, -2.0 * M_PI * k * y); },
        f.integrand_certificate(), 1e-10);
    CHECK(std::abs(analytic - quad.value) < 1e-8);
  }
}

TEST_CASE("gaussian weight: analytic self-convolution matches quadrature") {
  const auto f = WeightFunction::gaussian();
  CHECK(f.self_convolution(vec1(1.0)).real() ==
        doctest::Approx(oracle::kGaussSelfConv1).epsilon(1e-12));
  for (double u : {0.0, 1.0, 2.5}) {
    const auto analytic = f.self_convolution(vec1(u));
    const auto quad = integrate_decaying(
        [&f, u](double v) { return f.eval1(v) * std::conj(f.eval1(v - u)); },
        f.integrand_certificate(), 1e-11);
    CHECK(std::abs(analytic - quad.value) < 1e-9);
  }
}

TEST_CASE("gaussian certificate is tight and sampled decay passes") {
  for (double alpha : {1.0, 2.0, 4.0}) {
    const auto f = WeightFunction::gaussian(1, alpha);
    const auto report = decay_check(f, {0.5, 1.0, 2.0, 10.0, 200.0});
    CHECK(report.pass);
  }
}

TEST_CASE("bump weight") {
  const auto f = WeightFunction::bump(oracle::kBumpCenter, oracle::kBumpRadius);
  CHECK(f.eval1(oracle::kBumpCenter).real() == doctest::Approx(1.0));
  CHECK(f.eval1(oracle::kBumpCenter + oracle::kBumpRadius).real() == 0.0);
  CHECK(f.eval1(oracle::kBumpCenter - oracle::kBumpRadius - 0.5).real() == 0.0);
  CHECK(f.sup_abs() == doctest::Approx(1.0));
  CHECK(f.l1_norm() == doctest::Approx(oracle::kBumpIntegral).epsilon(1e-9));
  CHECK(f.second_derivative_l1().has_value());
  CHECK(*f.second_derivative_l1() > 0.0);
  CHECK(decay_check(f, {0.5, 1.0, 10.0}).pass);
}

TEST_CASE("integrand certificate really bounds the weight") {
  for (const auto& f : {WeightFunction::gaussian(), WeightFunction::bump(0.2, 0.7)}) {
    const auto cert = f.integrand_certificate();
    for (int i = 0; i <= 400; ++i) {
      const double y = -20.0 + 40.0 * i / 400.0;
      CHECK(std::abs(f.eval1(y)) <=
            cert.C / std::pow(1.0 + std::abs(y), 1.0 + cert.beta) + 1e-15);
    }
  }
}

TEST_CASE("tabulated weight interpolates and vanishes outside the range") {
  std::vector<double> ys;
  std::vector<std::complex<double>> fs;
  for (int i = 0; i <= 120; ++i) {
    const double y = -3.0 + 6.0 * i / 120.0;
    ys.push_back(y);
    fs.emplace_back(std::exp(-M_PI * y * y), 0.0);
  }
  const auto f = WeightFunction::tabulated(ys, fs, 0.08, 1.0);
  for (double y : {-1.33, 0.017, 0.5, 2.21}) {
    CHECK(std::abs(f.eval1(y).real() - std::exp(-M_PI * y * y)) < 1e-5);
  }
  CHECK(f.eval1(3.5) == std::complex<double>(0.0, 0.0));
  CHECK(f.eval1(-4.0) == std::complex<double>(0.0, 0.0));
  CHECK(f.sup_abs() >= 1.0);
  CHECK(f.l1_norm() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("weight spec strings round-trip") {
  for (const auto& f :
       {WeightFunction::gaussian(), WeightFunction::gaussian(1, 2.0),
        WeightFunction::bump(-0.2, 0.8), WeightFunction::lorentzian(), WeightFunction::zero()}) {
    const auto back = parse_weight_spec(f.cli_spec());
    CHECK(back.name() == f.name());
    CHECK(back.decay_C() == f.decay_C());
    CHECK(back.decay_alpha() == f.decay_alpha());
    CHECK(back.eval1(0.37) == f.eval1(0.37));
  }
  CHECK_THROWS_AS(parse_weight_spec("nonsense"), ValidationError);
  CHECK_THROWS_AS(parse_weight_spec("bump:radius=1"), ValidationError);
}

TEST_CASE("custom weight validation") {
  WeightFunction::Spec bad;
  bad.dim = 1;
  bad.decay_alpha = -1.0;
  bad.eval1 = [](double) { return std::complex<double>(0.0, 0.0); };
  CHECK_THROWS_AS(WeightFunction::custom(std::move(bad)), ValidationError);
}
