#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "morsept/eigensolver.hpp"
#include "morsept/numerics.hpp"
#include "morsept/potentials.hpp"

namespace morsept {

/// Nodes and weights for int_0^{t_max} t g(t) J_m(t t') dt.
class HankelPlan {
 public:
  /// Throws DomainError unless order >= 0, nodes are strictly increasing and
  /// positive, weights are positive, and the sizes match.
  HankelPlan(int order, std::vector<double> nodes, std::vector<double> weights);

  /// Trapezoid rule on t_k = k t_max / n, k = 1..n (n >= 3). The t = 0 end
  /// carries no weight because the integrand vanishes there; hankel() adds the
  /// leading Euler-Maclaurin term at that end for order 0.
  static HankelPlan uniform(int order, double t_max, std::size_t n);

  int order() const noexcept { return order_; }
  double t_max() const noexcept { return nodes_.back(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Spacing of a uniform plan, 0 for a plan built from explicit nodes.
  double origin_step() const noexcept { return origin_step_; }

  /// Same order and t_max with the node count multiplied by factor.
  HankelPlan refined(std::size_t factor) const;

 private:
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double origin_step_ = 0.0;
};

/// Default plan shape used by the Fourier-Bessel checks.
inline constexpr double kDefaultHankelTMax = 40.0;
inline constexpr std::size_t kDefaultHankelNodes = 16384;

/// int_0^{2 pi} exp(-i x cos(Phi - phi') + i m Phi) dPhi by the periodic
/// trapezoid rule. Equals 2 pi (-i)^m e^{i m phi'} J_m(x).
std::complex<double> angular_phase_integral(double x, int m, double phi_prime);

struct HankelResult {
  double value = 0.0;
  bool truncated = false;  // |t g(t)| at t_max is not negligible
};

/// Plan quadrature of int t g(t) J_m(t t') dt; g is sampled on the plan nodes.
HankelResult hankel(std::span<const double> g_on_nodes, const HankelPlan& plan, double t_prime);
HankelResult hankel(const RealFunction& g, const HankelPlan& plan, double t_prime);

/// int_0^inf t g(t) J_m(t t') dt for slowly decaying g, through the
/// zero-partitioned oscillatory integrator.
QuadratureResult hankel_oscillatory(const RealFunction& g, int m, double t_prime, double tol);

/// A radial function mapped to the conjugate variable. The constant phase
/// (-i)^m is kept as a count of quarter turns so the samples stay real.
struct MappedWavefunction {
  SampledFunction u;
  int quarter_turns = 0;
  bool truncated = false;
};

/// U(t') = 2 pi (1 + t'^2)^{3/2} int_0^inf t R(t) J_m(t t') dt with R sampled
/// on the plan nodes and m = plan.order(); the returned phase is (-i)^m.
MappedWavefunction wavefunction_map(std::span<const double> radial_on_nodes, const HankelPlan& plan,
                                    std::span<const double> t_prime_nodes);

/// Resamples a Morse eigenfunction tabulated in rho onto the plan nodes,
/// using t = lambda e^{-rho}. Zero outside the tabulated range.
std::vector<double> morse_radial_on_plan(const SampledFunction& eigenfunction, double lambda,
                                         const HankelPlan& plan);

struct PotentialTermReport {
  struct Refinement {
    std::size_t nodes;
    double max_residual;
  };

  std::vector<double> t_prime;
  std::vector<double> lhs;       // Hankel_m[(1/t) d_t q_morse](t')
  std::vector<double> rhs;       // (1/t') d_t' q_pt(t')
  std::vector<double> residual;  // lhs - rhs
  double max_residual = 0.0;
  std::array<Refinement, 2> refinement{};  // plan, then plan refined 2x
  bool truncated = false;
};

/// Pointwise comparison of the Hankel-transformed Morse q-derivative with the
/// Pöschl-Teller one. Morse q lives on t = lambda e^{-rho}, the Pöschl-Teller q
/// on t' = e^{-rho}. Throws DomainError unless both share gamma.
PotentialTermReport potential_term_map(const MorseParams& morse, const PTParams& pt, int m,
                                       const HankelPlan& plan,
                                       std::span<const double> t_prime_nodes);

struct SandwichedTerm {
  int m = 0;
  double lhs = 0.0;  // int t' R(t') Hankel_m[(1/t) d_t q_morse](t') dt'
  double rhs = 0.0;  // int t' R(t') (1/t') d_t' q_pt(t') dt'
  double relative_difference = 0.0;
};

/// Both sides of the pointwise relation integrated against a Morse bound
/// state R (tabulated in rho). The inner transform uses `plan` (its order is
/// m), the outer t' integral uses the nodes and weights of `outer`.
SandwichedTerm sandwiched_potential_term(const MorseFamily& morse, const PoschlTellerFamily& pt,
                                         const SampledFunction& eigenfunction,
                                         const HankelPlan& plan, const HankelPlan& outer);

}  // namespace morsept
