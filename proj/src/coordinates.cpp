#include "morsept/coordinates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "morsept/error.hpp"

namespace morsept {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lambda(double lambda) {
  if (!(lambda > 0.5) || !std::isfinite(lambda))
    throw DomainError("lambda must be finite and greater than 1/2");
}
}  // namespace

double rho_from_r(double lambda, double r) {
  check_lambda(lambda);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("rho_from_r: r must be positive");
  return std::log(2.0 * lambda) - 2.0 * std::log(r);
}

double r_from_rho(double lambda, double rho) {
  check_lambda(lambda);
  return std::sqrt(2.0 * lambda) * std::exp(-0.5 * rho);
}

double t_morse_from_rho(double lambda, double rho) {
  check_lambda(lambda);
  return lambda * std::exp(-rho);
}

double rho_from_t_morse(double lambda, double t) {
  check_lambda(lambda);
  if (!(t > 0.0)) throw DomainError("rho_from_t_morse: t must be positive");
  return std::log(lambda) - std::log(t);
}

Chain30 chain_30(double rho) {
  const double zeta = std::sinh(rho);
  const double sigma = std::atan2(1.0, zeta);
  const double hyp = std::hypot(1.0, zeta);
  const double t = zeta >= 0.0 ? 1.0 / (hyp + zeta) : hyp - zeta;
  return {zeta, sigma, t};
}

double t_pt_from_rho(double rho) { return chain_30(rho).t; }

double rho_from_t_pt(double t) {
  if (!(t > 0.0)) throw DomainError("rho_from_t_pt: t must be positive");
  return -std::log(t);
}

double theta_from_rho(double rho) { return std::atan2(1.0 / std::cosh(rho), std::tanh(rho)); }

double rho_from_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw DomainError("rho_from_theta: theta must lie in (0, pi)");
  return -std::log(std::tan(0.5 * theta));
}

PolarT t_phi_from_r_phi(double r, double phi) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("t_phi_from_r_phi: r must be positive");
  return {0.5 * r * r, 2.0 * phi};
}

std::vector<CoordinateMap> coordinate_maps(double lambda) {
  check_lambda(lambda);
  return {
      {"rho->r", [lambda](double rho) { return r_from_rho(lambda, rho); },
       [lambda](double r) { return rho_from_r(lambda, r); }, {-kInf, kInf}, {0.0, kInf}},
      {"rho->t_m", [lambda](double rho) { return t_morse_from_rho(lambda, rho); },
       [lambda](double t) { return rho_from_t_morse(lambda, t); }, {-kInf, kInf}, {0.0, kInf}},
      {"r->t_m", [](double r) { return t_phi_from_r_phi(r, 0.0).t; },
       [](double t) { return std::sqrt(2.0 * t); }, {0.0, kInf}, {0.0, kInf}},
      {"phi->Phi", [](double phi) { return t_phi_from_r_phi(1.0, phi).Phi; },
       [](double Phi) { return 0.5 * Phi; }, {0.0, 2.0 * std::numbers::pi},
       {0.0, 4.0 * std::numbers::pi}},
      {"rho->zeta", [](double rho) { return chain_30(rho).zeta; },
       [](double zeta) { return std::asinh(zeta); }, {-kInf, kInf}, {-kInf, kInf}},
      {"zeta->sigma", [](double zeta) { return std::atan2(1.0, zeta); },
       [](double sigma) { return 1.0 / std::tan(sigma); }, {-kInf, kInf},
       {0.0, std::numbers::pi}},
      {"rho->t_pt", [](double rho) { return t_pt_from_rho(rho); },
       [](double t) { return rho_from_t_pt(t); }, {-kInf, kInf}, {0.0, kInf}},
      {"rho->theta", [](double rho) { return theta_from_rho(rho); },
       [](double theta) { return rho_from_theta(theta); }, {-kInf, kInf},
       {0.0, std::numbers::pi}},
  };
}

}  // namespace morsept
