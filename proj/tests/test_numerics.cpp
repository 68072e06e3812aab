#include <doctest.h>

#include <cmath>
#include <random>

#include "densecomb/accum.hpp"
#include "densecomb/errors.hpp"
#include "densecomb/numerics.hpp"
#include "oracles.hpp"

using namespace densecomb;

TEST_CASE("erfc frozen values") {
  CHECK(densecomb::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(densecomb::erfc(1.0) == doctest::Approx(oracle::kErfc1).epsilon(1e-12));
  CHECK(densecomb::erfc(0.3) == doctest::Approx(oracle::kErfc03).epsilon(1e-14));
  CHECK(densecomb::erfc(2.5) == doctest::Approx(oracle::kErfc25).epsilon(1e-14));
  CHECK(densecomb::erfc(5.0) == doctest::Approx(oracle::kErfc5).epsilon(1e-13));
  CHECK(densecomb::erfc(-2.0) == doctest::Approx(2.0 - densecomb::erfc(2.0)).epsilon(1e-15));
}

TEST_CASE("erfc reflection and endpoint identities on a grid") {
  for (int i = 0; i <= 1000; ++i) {
    const double x = -10.0 + 20.0 * i / 1000.0;
    CHECK(densecomb::erfc(x) + densecomb::erfc(-x) == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(densecomb::erfc(0.3) == doctest::Approx(2.0 - densecomb::erfc(-0.3)).epsilon(1e-15));
  CHECK(densecomb::erfc(2.5) == doctest::Approx(2.0 - densecomb::erfc(-2.5)).epsilon(1e-15));
}

TEST_CASE("erfc agrees with the libm oracle to 1e-14 relative") {
  for (int i = 0; i <= 2000; ++i) {
    const double x = -10.0 + 20.0 * i / 2000.0;
    const double mine = densecomb::erfc(x);
    const double ref = std::erfc(x);
    CHECK(std::abs(mine - ref) <= 1e-14 * std::abs(ref) + 1e-300);
  }
}

namespace {

long double brute_tail(double alpha, long R, long terms) {
  long double s = 0.0L;
  for (long n = R + terms - 1; n >= R; --n)
    s += std::pow(static_cast<long double>(n), -(1.0L + static_cast<long double>(alpha)));
  return s;
}

}  // namespace

TEST_CASE("tail_sum_bound values and dominance") {
  CHECK(tail_sum_bound(1.0, 1000.0) == doctest::Approx(1.0 / 999.0).epsilon(1e-15));
  CHECK(tail_sum_bound(1.0, 1000.0) >= oracle::kTailAlpha1R1000);
  CHECK(tail_sum_bound(2.0, 10.0) == doctest::Approx(1.0 / 162.0).epsilon(1e-15));
  CHECK(tail_sum_bound(2.0, 10.0) >= oracle::kTailAlpha2R10);

  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double R : {10.0, 100.0, 1000.0}) {
      const long double brute = brute_tail(alpha, static_cast<long>(R), 2'000'000);
      CHECK(tail_sum_bound(alpha, R) >= static_cast<double>(brute));
    }
  }
  // monotone decreasing in R
  double prev = tail_sum_bound(1.5, 10.0);
  for (double R : {100.0, 1000.0, 100000.0}) {
    const double b = tail_sum_bound(1.5, R);
    CHECK(b < prev);
    prev = b;
  }
  CHECK_THROWS_AS(tail_sum_bound(0.0, 10.0), ValidationError);
  CHECK_THROWS_AS(tail_sum_bound(1.0, 1.5), ValidationError);
}

TEST_CASE("gaussian series tail bound dominates brute force") {
  for (int deg : {0, 1, 2}) {
    for (double c : {0.5, 3.14}) {
      for (double R : {1.0, 2.0, 4.0}) {
        long double brute = 0.0L;
        for (long n = 1000; n >= static_cast<long>(R); --n)
          brute += std::pow(static_cast<long double>(n + 1), deg) *
                   std::exp(-static_cast<long double>(c) * n * n);
        const double bound = gaussian_series_tail_bound(deg, c, R);
        CHECK(bound >= static_cast<double>(brute));
        // the ratio-test bound is only claimed useful when q < 1/2
        if (std::isfinite(bound)) CHECK(bound < 10.0 * static_cast<double>(brute) + 1e-280);
      }
    }
  }
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(1, 3.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(ball_volume(2, 2.0) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(ball_volume(3, 1.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("integrate_decaying: gaussian to 1e-12") {
  const auto r = integrate_decaying(
      [](double y) { return std::complex<double>(std::exp(-M_PI * y * y), 0.0); },
      IntegrandDecay{4.0, 4.0}, 1e-13);
  CHECK(std::abs(r.value.real() - 1.0) < 1e-12);
  CHECK(std::abs(r.value.imag()) < 1e-15);
  CHECK(std::abs(r.value.real() - 1.0) <= r.error_bound);
  CHECK(r.evaluations > 0);
}

TEST_CASE("integrate_decaying: wide gaussian to sqrt(2 pi)") {
  const auto r = integrate_decaying(
      [](double y) { return std::complex<double>(std::exp(-0.5 * y * y), 0.0); },
      IntegrandDecay{13.0, 3.0}, 1e-11);
  const double expected = std::sqrt(2.0 * M_PI);
  CHECK(std::abs(r.value.real() - expected) < 1e-10);
  CHECK(std::abs(r.value.real() - expected) <= r.error_bound);
}

TEST_CASE("integrate_decaying: zero integrand") {
  const auto r = integrate_decaying([](double) { return std::complex<double>(0.0, 0.0); },
                                    IntegrandDecay{0.0, 2.0}, 1e-10);
  CHECK(r.value == std::complex<double>(0.0, 0.0));
  CHECK(r.error_bound == 0.0);
}

TEST_CASE("integrate_decaying: oscillatory complex integrand") {
  // int e^{-pi y^2} e^{-2 pi i k y} dy = e^{-pi k^2}
  const double k = 0.7;
  const auto r = integrate_decaying(
      [k](double y) { return std::exp(-M_PI * y * y) * std::polar(1.0, -2.0 * M_PI * k * y); },
      IntegrandDecay{4.0, 4.0}, 1e-12);
  CHECK(std::abs(r.value - std::complex<double>(std::exp(-M_PI * k * k), 0.0)) < 1e-11);
}

TEST_CASE("integrate_decaying: error bound never grows under refinement") {
  double prev = std::numeric_limits<double>::infinity();
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const auto r = integrate_decaying(
        [](double y) { return std::complex<double>(std::exp(-M_PI * y * y), 0.0); },
        IntegrandDecay{4.0, 4.0}, tol);
    CHECK(r.error_bound <= prev);
    CHECK(r.error_bound < tol);
    prev = r.error_bound;
  }
}

TEST_CASE("integrate_interval basics") {
  const auto r = integrate_interval([](double y) { return std::complex<double>(y * y, 0.0); },
                                    0.0, 1.0, 1e-12);
  CHECK(std::abs(r.value.real() - 1.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(
      integrate_interval([](double) { return std::complex<double>(0.0, 0.0); }, 1.0, 1.0, 1e-10),
      ValidationError);
}

TEST_CASE("compensated accumulation matches an extended-precision oracle") {
  // 1e7 addends alternating between 1e8-scale cancelling pairs and small
  // residuals; plain double summation drifts badly here
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> big(1e7, 1e8);
  std::uniform_real_distribution<double> small_d(-1.0, 1.0);

  CompensatedSum acc;
  __float128 exact = 0;
  double plain = 0.0;
  const int n = 10'000'000;
  for (int i = 0; i < n / 2; ++i) {
    const double b = big(rng);
    const double s = small_d(rng);
    for (double v : {b, -b + s}) {
      acc.add(v);
      plain += v;
      exact += static_cast<__float128>(v);
    }
  }
  const double reference = static_cast<double>(exact);
  const double ulp = std::nextafter(std::abs(reference), 1e300) - std::abs(reference);
  CHECK(std::abs(acc.value() - reference) <= 4.0 * ulp);
  // and the plain sum is measurably worse, otherwise the test proves nothing
  CHECK(std::abs(plain - reference) > 16.0 * ulp);
}

TEST_CASE("chunked_sum is independent of the worker count") {
  std::vector<double> values(100'000);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (auto& v : values) v = dist(rng);
  auto term = [&](std::size_t i) { return std::complex<double>(values[i], -values[i]); };

  set_max_threads(1);
  const auto s1 = chunked_sum(values.size(), term);
  set_max_threads(4);
  const auto s4 = chunked_sum(values.size(), term);
  set_max_threads(3);
  const auto s3 = chunked_sum(values.size(), term);
  CHECK(s1.real() == s4.real());
  CHECK(s1.imag() == s4.imag());
  CHECK(s1.real() == s3.real());
  set_max_threads(1);
}
