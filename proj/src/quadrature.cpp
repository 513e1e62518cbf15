#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "morsept/error.hpp"
#include "morsept/numerics.hpp"

namespace morsept {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae (descending) with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool at_roundoff;  // error is already at the rounding floor

  bool operator<(const Panel& other) const { return error < other.error; }
};

double sample(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    throw DomainError(msg.str());
  }
  return y;
}

// QUADPACK-style GK15 panel with its error heuristic.
Panel gauss_kronrod_15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = sample(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> lo{};
  std::array<double, 7> hi{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    lo[j] = sample(f, center - dx);
    hi[j] = sample(f, center + dx);
    kronrod += kKronrodWeights[j] * (lo[j] + hi[j]);
    abs_sum += kKronrodWeights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo[j] + hi[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

  const double scale = std::abs(half);
  const double value = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  const double res_asc = asc * scale;
  const double res_abs = abs_sum * scale;
  if (res_asc != 0.0 && error != 0.0)
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  const double floor = 50.0 * kEps * res_abs;
  bool at_roundoff = false;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps) && error <= floor) {
    error = floor;
    at_roundoff = true;
  }
  return {a, b, value, error, at_roundoff};
}

// Wynn's epsilon algorithm; returns the deepest even-column entry.
double wynn_epsilon(const std::vector<double>& sums, std::size_t window) {
  const std::size_t n = std::min(sums.size(), window);
  std::vector<double> prev(n, 0.0);
  std::vector<double> curr(sums.end() - static_cast<std::ptrdiff_t>(n), sums.end());
  double best = curr.back();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col);
    for (std::size_t i = 0; i + col < n; ++i) {
      const double diff = curr[i + 1] - curr[i];
      if (diff == 0.0 || !std::isfinite(diff)) return best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = std::move(curr);
    curr = std::move(next);
    if (col % 2 == 0) best = curr.back();
  }
  return best;
}

}  // namespace

QuadratureResult gauss_kronrod_panel(const RealFunction& f, double a, double b) {
  const Panel p = gauss_kronrod_15(f, a, b);
  return {p.value, p.error, 15};
}

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                                    std::size_t max_evaluations) {
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_adaptive: limits must be finite");

  std::priority_queue<Panel> open;
  std::vector<Panel> closed;
  std::size_t evaluations = 15;
  Panel first = gauss_kronrod_15(f, a, b);
  double total_error = first.error;
  open.push(first);

  const auto total_value = [&] {
    double sum = 0.0;
    auto copy = open;
    while (!copy.empty()) {
      sum += copy.top().value;
      copy.pop();
    }
    for (const auto& p : closed) sum += p.value;
    return sum;
  };

  while (total_error > tol && !open.empty()) {
    Panel worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_narrow = std::abs(worst.b - worst.a) <= 4.0 * kEps * std::max(std::abs(worst.a), 1.0);
    if (worst.at_roundoff || too_narrow || mid == worst.a || mid == worst.b) {
      closed.push_back(worst);
      continue;
    }
    if (evaluations + 30 > max_evaluations) {
      open.push(worst);
      std::ostringstream msg;
      msg << "integrate_adaptive: evaluation budget of " << max_evaluations
          << " exhausted on [" << a << ", " << b << "], error estimate " << total_error;
      throw QuadratureError(msg.str(), total_value(), total_error);
    }
    Panel left = gauss_kronrod_15(f, worst.a, mid);
    Panel right = gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    total_error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }

  // recompute the error sum to shed accumulated cancellation in the running total
  double error = 0.0;
  {
    auto copy = open;
    while (!copy.empty()) {
      error += copy.top().error;
      copy.pop();
    }
    for (const auto& p : closed) error += p.error;
  }
  return {total_value(), error, evaluations};
}

QuadratureResult integrate_oscillatory_bessel(const RealFunction& g, int m, double p, double tol,
                                              int max_segments) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw DomainError("integrate_oscillatory_bessel: p must be positive and finite");
  if (m < 0) throw DomainError("integrate_oscillatory_bessel: order must be non-negative");
  if (!(tol > 0.0)) throw DomainError("integrate_oscillatory_bessel: tolerance must be positive");

  const RealFunction integrand = [&](double x) { return g(x) * bessel_j(m, p * x); };
  const double segment_tol = 1e-3 * tol;
  constexpr int kMinSegments = 8;
  constexpr std::size_t kWindow = 31;

  std::vector<double> sums;
  double partial = 0.0;
  double quad_error = 0.0;
  std::size_t evaluations = 0;
  double left = 0.0;
  std::vector<double> estimates;
  for (int k = 1; k <= max_segments; ++k) {
    const double right = bessel_j_zero(m, k) / p;
    const QuadratureResult piece = integrate_adaptive(integrand, left, right, segment_tol);
    left = right;
    partial += piece.value;
    quad_error += piece.error_estimate;
    evaluations += piece.evaluations;
    sums.push_back(partial);
    if (k < kMinSegments) continue;

    estimates.push_back(wynn_epsilon(sums, kWindow));
    const std::size_t e = estimates.size();
    if (e >= 3) {
      const double d1 = std::abs(estimates[e - 1] - estimates[e - 2]);
      const double d2 = std::abs(estimates[e - 2] - estimates[e - 3]);
      if (std::max(d1, d2) <= tol) {
        return {estimates.back(), std::max(d1, d2) + quad_error, evaluations};
      }
    }
  }
  std::ostringstream msg;
  msg << "integrate_oscillatory_bessel: partial sums did not converge after " << max_segments
      << " segments (order " << m << ", p = " << p << ")";
  throw OscillatoryError(msg.str());
}

}  // namespace morsept
