#pragma once

#include <string>
#include <vector>

#include "morsept/numerics.hpp"

namespace morsept {

struct Interval {
  double lo;
  double hi;
};

/// A named change of variables with its exact inverse.
struct CoordinateMap {
  std::string name;
  RealFunction forward;
  RealFunction inverse;
  Interval domain;
  Interval codomain;
};

/// rho = ln(2 lambda / r^2). Throws DomainError for r <= 0 or lambda <= 1/2.
double rho_from_r(double lambda, double r);
/// r = sqrt(2 lambda e^{-rho}).
double r_from_rho(double lambda, double rho);

/// Morse-side radial variable t_m = r^2 / 2 = lambda e^{-rho}.
double t_morse_from_rho(double lambda, double rho);
double rho_from_t_morse(double lambda, double t);

struct Chain30 {
  double zeta;   // sinh(rho)
  double sigma;  // arccot(zeta), principal branch in (0, pi)
  double t;      // tan(sigma / 2); equals e^{-rho}
};

/// zeta = sinh rho, sigma = arccot zeta, t = tan(sigma/2).
/// t is evaluated from zeta through the half-angle identity
/// tan(arccot(zeta)/2) = sqrt(1 + zeta^2) - zeta, arranged to avoid cancellation.
Chain30 chain_30(double rho);

/// Pöschl-Teller side variable t_pt = e^{-rho}, reached through chain_30.
double t_pt_from_rho(double rho);
double rho_from_t_pt(double t);

/// theta = arccos(tanh rho) in (0, pi).
double theta_from_rho(double rho);
double rho_from_theta(double theta);

struct PolarT {
  double t;    // r^2 / 2
  double Phi;  // 2 phi
};

/// (r, phi) -> (t, Phi) = (r^2 / 2, 2 phi). Throws DomainError for r <= 0.
PolarT t_phi_from_r_phi(double r, double phi);

/// Every map above packaged for generic round-trip and monotonicity checks.
std::vector<CoordinateMap> coordinate_maps(double lambda);

}  // namespace morsept
