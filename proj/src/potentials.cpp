#include "morsept/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "morsept/error.hpp"

namespace morsept {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDirectTolerance = 1e-15;

// Denominator table layout.
constexpr double kTableMin = -40.0;
constexpr double kTableMax = 40.0;
constexpr double kTableStep = 1.0 / 32.0;

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
}

double sech2(double rho) {
  const double c = std::cosh(rho);
  return 1.0 / (c * c);
}

double log_cosh(double rho) {
  const double x = std::abs(rho);
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// N = exp(-g) for each family.
double morse_weight(double lambda, double rho) {
  return std::exp(-(2.0 * lambda - 1.0) * rho - 2.0 * lambda * std::exp(-rho));
}
double morse_weight_slope(double lambda, double rho) {
  return (2.0 * lambda - 1.0) - 2.0 * lambda * std::exp(-rho);
}
double pt_weight(double mu, double rho) { return std::exp(-2.0 * mu * log_cosh(rho)); }
double pt_weight_slope(double mu, double rho) { return 2.0 * mu * std::tanh(rho); }

[[noreturn]] void throw_singular(double rho, double denominator) {
  std::ostringstream msg;
  msg << "q-term denominator is " << denominator << " at rho = " << rho
      << "; the deformed potential is singular there";
  throw SingularConfigurationError(msg.str(), rho);
}

double direct_q(const RealFunction& weight, double gamma, double rho) {
  const double n = weight(rho);
  if (std::isinf(gamma)) return 0.0;
  const double d = gamma + integrate_adaptive(weight, 0.0, rho, kDirectTolerance).value;
  if (!(d > 0.0)) throw_singular(rho, d);
  return n / d;
}

double log_derivative_identity(double slope, double q) {
  if (q == 0.0) return 0.0;
  return -slope * q - q * q;
}

}  // namespace

MorseParams::MorseParams(double lambda, double gamma) : lambda_(lambda), gamma_(gamma) {
  if (!std::isfinite(lambda) || !(lambda > 0.5))
    throw DomainError("lambda must be finite and greater than 1/2");
  check_gamma(gamma);
}

PTParams::PTParams(double mu, double gamma) : mu_(mu), gamma_(gamma) {
  if (!std::isfinite(mu) || !(mu > 0.0)) throw DomainError("mu must be finite and positive");
  check_gamma(gamma);
}

PotentialCurve tabulate(const RealFunction& potential, const Grid& grid) {
  PotentialCurve curve{grid, {}};
  curve.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = potential(grid.node(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "tabulate: potential is not finite at rho = " << grid.node(i);
      throw DomainError(msg.str());
    }
    curve.values.push_back(v);
  }
  return curve;
}

// --- Morse -----------------------------------------------------------------

double morse_shifted(const MorseParams& p, double rho) {
  const double l = p.lambda();
  const double one_minus = -std::expm1(-rho);
  return l * l * one_minus * one_minus - l + 0.25;
}

double morse_partner(const MorseParams& p, double rho) {
  return morse_shifted(p, rho) + 2.0 * p.lambda() * std::exp(-rho);
}

double morse_w_prime(const MorseParams& p, double rho) {
  return -p.lambda() * std::expm1(-rho) - 0.5;
}

double morse_w_second(const MorseParams& p, double rho) { return p.lambda() * std::exp(-rho); }

double q_morse(const MorseParams& p, double rho) {
  const double l = p.lambda();
  return direct_q([l](double x) { return morse_weight(l, x); }, p.gamma(), rho);
}

double q_morse_derivative(const MorseParams& p, double rho) {
  return log_derivative_identity(morse_weight_slope(p.lambda(), rho), q_morse(p, rho));
}

double morse_generalized(const MorseParams& p, double rho) {
  return morse_shifted(p, rho) - 2.0 * q_morse_derivative(p, rho);
}

double f_morse(const MorseParams& p, double rho) { return morse_w_prime(p, rho) + q_morse(p, rho); }

// --- Pöschl-Teller ---------------------------------------------------------

double pt_shifted(const PTParams& p, double rho) {
  const double mu = p.mu();
  return -mu * (mu + 1.0) * sech2(rho) + mu * mu;
}

double pt_partner(const PTParams& p, double rho) {
  return pt_shifted(p, rho) + 2.0 * p.mu() * sech2(rho);
}

double pt_w_prime(const PTParams& p, double rho) { return p.mu() * std::tanh(rho); }

double pt_w_second(const PTParams& p, double rho) { return p.mu() * sech2(rho); }

double q_pt(const PTParams& p, double rho) {
  const double mu = p.mu();
  return direct_q([mu](double x) { return pt_weight(mu, x); }, p.gamma(), rho);
}

double q_pt_derivative(const PTParams& p, double rho) {
  return log_derivative_identity(pt_weight_slope(p.mu(), rho), q_pt(p, rho));
}

double pt_generalized(const PTParams& p, double rho) {
  return pt_shifted(p, rho) - 2.0 * q_pt_derivative(p, rho);
}

double f_pt(const PTParams& p, double rho) { return pt_w_prime(p, rho) + q_pt(p, rho); }

// --- Riccati check ---------------------------------------------------------

double riccati_residual(const RealFunction& f, const RealFunction& w_prime,
                        const RealFunction& w_second, const Grid& grid) {
  if (grid.size() < 3) throw DomainError("riccati_residual: need at least 3 grid nodes");
  const double h = grid.spacing();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double x = grid.node(i);
    const double df = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    const double fx = f(x);
    const double wp = w_prime(x);
    worst = std::max(worst, std::abs(df + fx * fx - wp * wp - w_second(x)));
  }
  return worst;
}

// --- Cached families -------------------------------------------------------

PotentialFamily::~PotentialFamily() = default;

PotentialFamily::PotentialFamily(double gamma, RealFunction weight, RealFunction log_weight_slope,
                                 double negative_mass)
    : gamma_(gamma),
      weight_(std::move(weight)),
      log_weight_slope_(std::move(log_weight_slope)),
      rho_min_(-kInf) {
  const auto count = static_cast<std::size_t>(std::lround((kTableMax - kTableMin) / kTableStep)) + 1;
  const auto origin = static_cast<std::size_t>(std::lround(-kTableMin / kTableStep));
  table_.assign(count, 0.0);
  for (std::size_t k = origin; k + 1 < count; ++k) {
    const double a = kTableMin + k * kTableStep;
    table_[k + 1] = table_[k] + gauss_kronrod_panel(weight_, a, a + kTableStep).value;
  }
  for (std::size_t k = origin; k > 0; --k) {
    const double b = kTableMin + k * kTableStep;
    table_[k - 1] = table_[k] - gauss_kronrod_panel(weight_, b - kTableStep, b).value;
  }

  // D(-inf) = gamma - int_{-inf}^0 N; only a non-positive limit produces a zero.
  if (std::isinf(gamma_) || gamma_ - negative_mass > 0.0) return;
  double lo = -1.0;
  while (denominator(lo) > 0.0) {
    lo *= 2.0;
    if (lo < -1e4) return;
  }
  double hi = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (denominator(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  rho_min_ = hi;
}

double PotentialFamily::cumulative(double rho) const {
  if (rho > kTableMax)
    return table_.back() + integrate_adaptive(weight_, kTableMax, rho, kDirectTolerance).value;
  if (rho < kTableMin)
    return table_.front() - integrate_adaptive(weight_, rho, kTableMin, kDirectTolerance).value;
  const auto k = static_cast<std::size_t>(
      std::clamp<long>(std::lround((rho - kTableMin) / kTableStep), 0L,
                       static_cast<long>(table_.size()) - 1));
  const double node = kTableMin + k * kTableStep;
  if (rho == node) return table_[k];
  return table_[k] + gauss_kronrod_panel(weight_, node, rho).value;
}

double PotentialFamily::denominator(double rho) const {
  if (std::isinf(gamma_)) return kInf;
  return gamma_ + cumulative(rho);
}

double PotentialFamily::q(double rho) const {
  if (std::isinf(gamma_)) return 0.0;
  const double d = denominator(rho);
  if (!(d > 0.0) || rho <= rho_min_) throw_singular(rho, d);
  return weight_(rho) / d;
}

double PotentialFamily::q_derivative(double rho) const {
  return log_derivative_identity(log_weight_slope_(rho), q(rho));
}

double PotentialFamily::generalized(double rho) const { return shifted(rho) - 2.0 * q_derivative(rho); }

double PotentialFamily::superpotential(double rho) const { return w_prime(rho) + q(rho); }

namespace {

// int_{-inf}^0 exp[-(2l-1)r - 2l e^{-r}] dr = (2l)^{1-2l} Gamma(2l-1, 2l)
double morse_negative_mass(double lambda) {
  const double s = 2.0 * lambda - 1.0;
  return std::exp(-s * std::log(2.0 * lambda)) * upper_incomplete_gamma(s, 2.0 * lambda);
}

// int_0^inf cosh^{-2mu} = (sqrt(pi)/2) Gamma(mu) / Gamma(mu + 1/2)
double pt_negative_mass(double mu) {
  return 0.5 * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(mu) - std::lgamma(mu + 0.5));
}

}  // namespace

MorseFamily::MorseFamily(const MorseParams& params)
    : PotentialFamily(
          params.gamma(), [l = params.lambda()](double r) { return morse_weight(l, r); },
          [l = params.lambda()](double r) { return morse_weight_slope(l, r); },
          morse_negative_mass(params.lambda())),
      params_(params) {}

double MorseFamily::continuum_threshold() const { return params_.a() * params_.a(); }

double MorseFamily::analytic_level(int n) const { return n * (2.0 * params_.a() - n); }

int MorseFamily::analytic_bound_count() const {
  return static_cast<int>(std::ceil(params_.a()));
}

Grid MorseFamily::default_grid() const {
  return Grid(std::max(rho_min() + 0.5, -2.0), 25.0, 4001);
}

PoschlTellerFamily::PoschlTellerFamily(const PTParams& params)
    : PotentialFamily(
          params.gamma(), [mu = params.mu()](double r) { return pt_weight(mu, r); },
          [mu = params.mu()](double r) { return pt_weight_slope(mu, r); },
          pt_negative_mass(params.mu())),
      params_(params) {}

double PoschlTellerFamily::continuum_threshold() const { return params_.mu() * params_.mu(); }

double PoschlTellerFamily::analytic_level(int n) const { return n * (2.0 * params_.mu() - n); }

int PoschlTellerFamily::analytic_bound_count() const {
  return static_cast<int>(std::ceil(params_.mu()));
}

Grid PoschlTellerFamily::default_grid() const {
  return Grid(std::max(rho_min() + 0.5, -15.0), 15.0, 4001);
}

}  // namespace morsept
