#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "morsept/eigensolver.hpp"
#include "morsept/numerics.hpp"

namespace morsept {

/// Morse family parameters: depth lambda and deformation constant gamma.
class MorseParams {
 public:
  /// Throws DomainError unless lambda > 1/2 (finite) and gamma > 0.
  /// gamma = +inf is accepted and selects the undeformed potential.
  MorseParams(double lambda, double gamma);

  double lambda() const noexcept { return lambda_; }
  double gamma() const noexcept { return gamma_; }
  /// a = lambda - 1/2
  double a() const noexcept { return lambda_ - 0.5; }

 private:
  double lambda_;
  double gamma_;
};

/// Pöschl-Teller family parameters: strength mu and deformation constant gamma.
class PTParams {
 public:
  /// Throws DomainError unless mu > 0 (finite) and gamma > 0.
  PTParams(double mu, double gamma);

  double mu() const noexcept { return mu_; }
  double gamma() const noexcept { return gamma_; }

 private:
  double mu_;
  double gamma_;
};

/// Potential values tabulated on a grid.
struct PotentialCurve {
  Grid grid;
  std::vector<double> values;
};

/// Throws DomainError if any sample is not finite.
PotentialCurve tabulate(const RealFunction& potential, const Grid& grid);

// Base potentials, superpotential derivatives and SUSY partners.

double morse_shifted(const MorseParams& p, double rho);
double morse_partner(const MorseParams& p, double rho);
double morse_w_prime(const MorseParams& p, double rho);
double morse_w_second(const MorseParams& p, double rho);

double pt_shifted(const PTParams& p, double rho);
double pt_partner(const PTParams& p, double rho);
double pt_w_prime(const PTParams& p, double rho);
double pt_w_second(const PTParams& p, double rho);

// Deformation terms evaluated directly: every call integrates the
// denominator from 0 to rho adaptively. PotentialFamily below caches it.
// All of these throw SingularConfigurationError where the denominator is <= 0.

double q_morse(const MorseParams& p, double rho);
/// dq/drho = -g'(rho) q - q^2 with g' = (2 lambda - 1) - 2 lambda e^{-rho}.
double q_morse_derivative(const MorseParams& p, double rho);
double morse_generalized(const MorseParams& p, double rho);
double f_morse(const MorseParams& p, double rho);

double q_pt(const PTParams& p, double rho);
/// dq/drho = -2 mu tanh(rho) q - q^2.
double q_pt_derivative(const PTParams& p, double rho);
double pt_generalized(const PTParams& p, double rho);
double f_pt(const PTParams& p, double rho);

/// max over interior grid nodes of |f' + f^2 - w'^2 - w''|, with f' from a
/// five-point central difference at the grid spacing.
/// Throws DomainError for grids with fewer than 3 nodes.
double riccati_residual(const RealFunction& f, const RealFunction& w_prime,
                        const RealFunction& w_second, const Grid& grid);

/// One potential family with its SUSY partner and its gamma-deformed
/// generalization. Immutable after construction; the cumulative denominator
/// integral is tabulated once and refined locally on each evaluation.
class PotentialFamily {
 public:
  virtual ~PotentialFamily();

  virtual std::string_view name() const = 0;
  virtual double shifted(double rho) const = 0;
  virtual double partner(double rho) const = 0;
  virtual double w_prime(double rho) const = 0;
  virtual double w_second(double rho) const = 0;
  /// Asymptotic value of the shifted potential (start of the continuum).
  virtual double continuum_threshold() const = 0;
  /// Exact n-th level of the shifted potential.
  virtual double analytic_level(int n) const = 0;
  /// Number of exact levels strictly below the threshold.
  virtual int analytic_bound_count() const = 0;
  /// Box used by default for bound-state solves.
  virtual Grid default_grid() const = 0;

  double gamma() const noexcept { return gamma_; }
  /// gamma + int_0^rho N.
  double denominator(double rho) const;
  double q(double rho) const;
  double q_derivative(double rho) const;
  double generalized(double rho) const;
  /// Deformed superpotential derivative f = W' + q.
  double superpotential(double rho) const;
  /// Largest rho at which the denominator vanishes; -inf when it never does.
  double rho_min() const noexcept { return rho_min_; }

 protected:
  PotentialFamily(double gamma, RealFunction weight, RealFunction log_weight_slope,
                  double negative_mass);

 private:
  double cumulative(double rho) const;

  double gamma_;
  RealFunction weight_;            // N(rho)
  RealFunction log_weight_slope_;  // g'(rho) with N = exp(-g)
  std::vector<double> table_;      // int_0^{node} N at nodes table_min + k h
  double rho_min_;
};

class MorseFamily final : public PotentialFamily {
 public:
  explicit MorseFamily(const MorseParams& params);

  const MorseParams& params() const noexcept { return params_; }
  std::string_view name() const override { return "morse"; }
  double shifted(double rho) const override { return morse_shifted(params_, rho); }
  double partner(double rho) const override { return morse_partner(params_, rho); }
  double w_prime(double rho) const override { return morse_w_prime(params_, rho); }
  double w_second(double rho) const override { return morse_w_second(params_, rho); }
  double continuum_threshold() const override;
  double analytic_level(int n) const override;
  int analytic_bound_count() const override;
  Grid default_grid() const override;

 private:
  MorseParams params_;
};

class PoschlTellerFamily final : public PotentialFamily {
 public:
  explicit PoschlTellerFamily(const PTParams& params);

  const PTParams& params() const noexcept { return params_; }
  std::string_view name() const override { return "pt"; }
  double shifted(double rho) const override { return pt_shifted(params_, rho); }
  double partner(double rho) const override { return pt_partner(params_, rho); }
  double w_prime(double rho) const override { return pt_w_prime(params_, rho); }
  double w_second(double rho) const override { return pt_w_second(params_, rho); }
  double continuum_threshold() const override;
  double analytic_level(int n) const override;
  int analytic_bound_count() const override;
  Grid default_grid() const override;

 private:
  PTParams params_;
};

}  // namespace morsept
