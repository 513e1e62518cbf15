#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "morsept/error.hpp"
#include "morsept/numerics.hpp"

namespace morsept {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Arguments below this use the power series.
constexpr double kSeriesLimit = 4.0;
// Arguments above this (with m < x) use the Hankel expansion.
constexpr double kAsymptoticLimit = 30.0;

double bessel_series(int m, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(m * std::log(half) - std::lgamma(m + 1.0));
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum) * 0.25) break;
  }
  return sum;
}

// Hankel asymptotic expansion, valid for x large compared with nu^2.
double bessel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last) break;  // asymptotic series started to diverge
    last = std::abs(term);
    // terms alternate between Q (odd k) and P (even k), each with its own sign pattern
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (std::abs(term) < kEps * 1e-2) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller's algorithm: downward recurrence from far above max(m, x),
// normalized with 1 = J_0 + 2 sum_k J_{2k}.
double bessel_miller(int m, double x) {
  const double top = std::max<double>(m, x);
  int start = static_cast<int>(top + 20.0 + std::sqrt(160.0 * top));
  start += start % 2;

  constexpr double kBig = 1e250;
  double above = 0.0;
  double current = 1e-300;
  double even_sum = 0.0;
  double result = 0.0;
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    const double below = k * two_over_x * current - above;
    above = current;
    current = below;  // J_{k-1}, unnormalized
    if (std::abs(current) > kBig) {
      current /= kBig;
      above /= kBig;
      even_sum /= kBig;
      result /= kBig;
    }
    if (k - 1 == m) result = current;
    if (k - 1 > 0 && (k - 1) % 2 == 0) even_sum += current;
  }
  return result / (current + 2.0 * even_sum);
}

double bessel_nonnegative(int m, double x) {
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x < kSeriesLimit) return bessel_series(m, x);
  if (x >= kAsymptoticLimit && m < x) {
    double prev = bessel_asymptotic(0, x);
    if (m == 0) return prev;
    double curr = bessel_asymptotic(1, x);
    for (int k = 1; k < m; ++k) {
      const double next = 2.0 * k / x * curr - prev;
      prev = curr;
      curr = next;
    }
    return curr;
  }
  return bessel_miller(m, x);
}

double bessel_derivative(int m, double x) {
  if (m == 0) return -bessel_j(1, x);
  return bessel_j(m - 1, x) - m / x * bessel_j(m, x);
}

}  // namespace

double bessel_j(int m, double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j: argument is not finite");
  double sign = 1.0;
  if (m < 0) {
    m = -m;
    if (m % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (m % 2 != 0) sign = -sign;
  }
  return sign * bessel_nonnegative(m, x);
}

double bessel_j_zero(int m, int k) {
  if (m < 0 || k < 1) throw DomainError("bessel_j_zero: need m >= 0 and k >= 1");
  const double mu = 4.0 * m * m;
  const double beta = (k + 0.5 * m - 0.25) * std::numbers::pi;
  const double b8 = 8.0 * beta;
  double z = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
  if (z <= 0.0) z = 0.5 * beta;
  for (int it = 0; it < 60; ++it) {
    double step = bessel_j(m, z) / bessel_derivative(m, z);
    step = std::clamp(step, -0.75, 0.75);
    z -= step;
    if (std::abs(step) <= 4.0 * kEps * z) break;
  }
  return z;
}

namespace {

double log_prefactor(double s, double x) { return -x + s * std::log(x); }

// Series for gamma(s, x), good for x < s + 1.
double lower_gamma_series(double s, double x) {
  double ap = s;
  double term = 1.0 / s;
  double sum = term;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(s, x));
}

// Lentz continued fraction for Gamma(s, x), good for x >= s + 1.
double upper_gamma_fraction(double s, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(s, x)) * h;
}

void check_gamma_args(double s, double x, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw DomainError(std::string(who) + ": shape s must be positive and finite");
  if (!(x >= 0.0)) throw DomainError(std::string(who) + ": x must be non-negative");
}

}  // namespace

double lower_incomplete_gamma(double s, double x) {
  check_gamma_args(s, x, "lower_incomplete_gamma");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  if (x < s + 1.0) return lower_gamma_series(s, x);
  return std::tgamma(s) - upper_gamma_fraction(s, x);
}

double upper_incomplete_gamma(double s, double x) {
  check_gamma_args(s, x, "upper_incomplete_gamma");
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return std::tgamma(s) - (x == 0.0 ? 0.0 : lower_gamma_series(s, x));
  return upper_gamma_fraction(s, x);
}

}  // namespace morsept
