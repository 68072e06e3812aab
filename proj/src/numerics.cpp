#include "densecomb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "densecomb/errors.hpp"

namespace densecomb {

namespace {

constexpr long double kSqrtPi = 1.7724538509055160272981674833411452L;

// erf via the non-alternating confluent series
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_n (2x^2)^n / (1*3*...*(2n+1)),
// accurate for small arguments because every term is positive.
long double erf_series(long double x) {
  const long double x2 = x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0L * x2 / static_cast<long double>(2 * n + 1);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return 2.0L * x * std::exp(-x2) * sum / kSqrtPi;
}

// Laplace continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm.  Converges for x >= 2.
long double erfc_cf(long double x) {
  const long double tiny = 1e-4000L;
  long double f = x;
  if (f == 0.0L) f = tiny;
  long double C = f;
  long double D = 0.0L;
  for (int n = 1; n < 300; ++n) {
    const long double a = 0.5L * static_cast<long double>(n);
    D = x + a * D;
    if (D == 0.0L) D = tiny;
    C = x + a / C;
    if (C == 0.0L) C = tiny;
    D = 1.0L / D;
    const long double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0L) < 1e-20L) break;
  }
  return std::exp(-x * x) / (kSqrtPi * f);
}

}  // namespace

double erfc(double x) {
  const long double ax = std::abs(static_cast<long double>(x));
  long double pos;  // erfc(|x|)
  if (ax < 2.0L)
    pos = 1.0L - erf_series(ax);
  else
    pos = erfc_cf(ax);
  return static_cast<double>(x >= 0.0 ? pos : 2.0L - pos);
}

double tail_sum_bound(double alpha, double R) {
  if (!(alpha > 0.0)) throw ValidationError("tail_sum_bound: alpha must be positive");
  if (!(R >= 2.0)) throw ValidationError("tail_sum_bound: R must be >= 2");
  return std::pow(R - 1.0, -alpha) / alpha;
}

double unit_ball_volume(int dim) {
  if (dim < 1) throw ValidationError("unit_ball_volume: dimension must be >= 1");
  return std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double ball_volume(int dim, double radius) {
  if (!(radius > 0.0)) throw ValidationError("ball_volume: radius must be positive");
  return unit_ball_volume(dim) * std::pow(radius, dim);
}

double gaussian_series_tail_bound(int deg, double c, double R) {
  if (!(c > 0.0) || R < 1.0) throw ValidationError("gaussian_series_tail_bound: bad arguments");
  const double q = std::pow((R + 2.0) / (R + 1.0), deg) * std::exp(-c * (2.0 * R + 1.0));
  if (!(q < 0.5)) return std::numeric_limits<double>::infinity();
  const double first = std::pow(R + 1.0, deg) * std::exp(-c * R * R);
  // small inflation so rounding in pow/exp cannot undercut the true sum
  return first / (1.0 - q) * (1.0 + 1e-12);
}

namespace {

// Gauss 7 / Kronrod 15 node-weight table on [-1, 1].
struct Gk15 {
  double node;    // positive abscissa (nodes come in +- pairs; node 0 listed once)
  double wg;      // Gauss weight (0 on Kronrod-only nodes)
  double wk;      // Kronrod weight
};
constexpr Gk15 kGk[8] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

struct Panel {
  double a, b;
  std::complex<double> value;
  double err;
  bool operator<(const Panel& o) const {
    // priority queue: largest error first; ties broken by left edge for
    // a deterministic refinement order
    if (err != o.err) return err < o.err;
    return a < o.a;
  }
};

Panel evaluate_panel(const std::function<std::complex<double>(double)>& g, double a, double b,
                     long& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::complex<double> g7{0.0, 0.0}, k15{0.0, 0.0};
  double resabs = 0.0;

  const std::complex<double> f0 = g(mid);
  g7 += kGk[0].wg * f0;
  k15 += kGk[0].wk * f0;
  resabs += kGk[0].wk * std::abs(f0);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGk[i].node;
    const std::complex<double> fp = g(mid + dx);
    const std::complex<double> fm = g(mid - dx);
    g7 += kGk[i].wg * (fp + fm);
    k15 += kGk[i].wk * (fp + fm);
    resabs += kGk[i].wk * (std::abs(fp) + std::abs(fm));
  }
  evals += 15;

  Panel p;
  p.a = a;
  p.b = b;
  p.value = k15 * half;
  const double discrepancy = std::abs(k15 - g7) * half;
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * resabs * half;
  p.err = std::max(discrepancy, floor);
  return p;
}

QuadratureResult adaptive_on_mesh(const std::function<std::complex<double>(double)>& g,
                                  const std::vector<double>& mesh, double tol,
                                  long max_evaluations) {
  QuadratureResult out;
  std::priority_queue<Panel> queue;
  double total_err = 0.0;
  std::complex<double> total{0.0, 0.0};

  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    Panel p = evaluate_panel(g, mesh[i], mesh[i + 1], out.evaluations);
    total += p.value;
    total_err += p.err;
    queue.push(p);
  }

  while (total_err > tol && !queue.empty()) {
    if (out.evaluations >= max_evaluations)
      throw ToleranceError("integrate: tolerance unreachable within evaluation cap");
    Panel worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < 1e-15 * (std::abs(worst.a) + std::abs(worst.b) + 1.0))
      throw ToleranceError("integrate: panel width underflow before reaching tolerance");
    total -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    for (const auto& half : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      Panel p = evaluate_panel(g, half.first, half.second, out.evaluations);
      total += p.value;
      total_err += p.err;
      queue.push(p);
    }
  }

  // re-sum panel values in a deterministic (left-to-right) order
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::complex<double> ordered{0.0, 0.0};
  for (const auto& p : panels) ordered += p.value;
  out.value = ordered;
  out.error_bound = total_err;
  return out;
}

}  // namespace

QuadratureResult integrate_interval(const std::function<std::complex<double>(double)>& g,
                                    double a, double b, double tol, long max_evaluations) {
  if (!(b > a)) throw ValidationError("integrate_interval: empty interval");
  if (!(tol > 0.0)) throw ValidationError("integrate_interval: tol must be positive");
  return adaptive_on_mesh(g, {a, 0.5 * (a + b), b}, tol, max_evaluations);
}

QuadratureResult integrate_decaying(const std::function<std::complex<double>(double)>& g,
                                    IntegrandDecay decay, double tol, long max_evaluations) {
  if (!(decay.beta > 0.0)) throw ValidationError("integrate_decaying: beta must be positive");
  if (decay.C < 0.0) throw ValidationError("integrate_decaying: C must be nonnegative");
  if (!(tol > 0.0)) throw ValidationError("integrate_decaying: tol must be positive");

  // truncation point: 2 C Y^{-beta} / beta <= tol/2
  double Y = 1.0;
  if (decay.C > 0.0)
    Y = std::max(1.0, std::pow(4.0 * decay.C / (decay.beta * tol), 1.0 / decay.beta));
  const double tail = decay.C > 0.0 ? 2.0 * decay.C * std::pow(Y, -decay.beta) / decay.beta : 0.0;

  // dyadic initial mesh: panel widths grow with the distance from the origin,
  // so unit-scale structure near zero is always sampled
  std::vector<double> mesh;
  mesh.push_back(0.0);
  for (double t = 1.0; t < Y; t *= 2.0) mesh.push_back(t);
  mesh.push_back(Y);
  std::vector<double> full;
  for (auto it = mesh.rbegin(); it != mesh.rend(); ++it) full.push_back(-*it);
  for (std::size_t i = 1; i < mesh.size(); ++i) full.push_back(mesh[i]);

  QuadratureResult r = adaptive_on_mesh(g, full, std::max(tol - tail, 0.25 * tol), max_evaluations);
  r.error_bound += tail;
  return r;
}

}  // namespace densecomb
