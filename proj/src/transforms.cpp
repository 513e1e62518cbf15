#include "morsept/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "morsept/coordinates.hpp"
#include "morsept/error.hpp"

namespace morsept {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTruncationRatio = 1e-10;

std::vector<double> sample_on(const RealFunction& g, const HankelPlan& plan) {
  std::vector<double> out(plan.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = g(plan.nodes()[k]);
  return out;
}

bool truncated_at_edge(std::span<const double> g, const HankelPlan& plan) {
  double peak = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) peak = std::max(peak, std::abs(plan.nodes()[k] * g[k]));
  const double edge = std::abs(plan.t_max() * g.back());
  return peak > 0.0 && edge > kTruncationRatio * peak;
}

}  // namespace

HankelPlan::HankelPlan(int order, std::vector<double> nodes, std::vector<double> weights)
    : order_(order), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (order_ < 0) throw DomainError("HankelPlan: order must be non-negative");
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw DomainError("HankelPlan: need matching, non-empty node and weight vectors");
  if (!(nodes_.front() > 0.0)) throw DomainError("HankelPlan: nodes must be positive");
  for (std::size_t k = 1; k < nodes_.size(); ++k)
    if (!(nodes_[k] > nodes_[k - 1])) throw DomainError("HankelPlan: nodes must increase strictly");
  for (double w : weights_)
    if (!(w > 0.0)) throw DomainError("HankelPlan: weights must be positive");
}

HankelPlan HankelPlan::uniform(int order, double t_max, std::size_t n) {
  if (!(t_max > 0.0)) throw DomainError("HankelPlan::uniform: need t_max > 0");
  if (n < 3) throw DomainError("HankelPlan::uniform: need at least 3 nodes");
  const double h = t_max / static_cast<double>(n);
  std::vector<double> nodes(n);
  std::vector<double> weights(n, h);
  for (std::size_t k = 0; k < n; ++k) nodes[k] = static_cast<double>(k + 1) * h;
  nodes.back() = t_max;
  weights.back() = 0.5 * h;
  HankelPlan plan(order, std::move(nodes), std::move(weights));
  plan.origin_step_ = h;
  return plan;
}

HankelPlan HankelPlan::refined(std::size_t factor) const {
  return uniform(order_, t_max(), size() * factor);
}

std::complex<double> angular_phase_integral(double x, int m, double phi_prime) {
  if (!std::isfinite(x) || !std::isfinite(phi_prime))
    throw DomainError("angular_phase_integral: arguments must be finite");
  // the trapezoid error is of the size of J_{N-|m|}(x); N well past |x| + |m| makes it negligible
  const int n = std::max(64, 2 * static_cast<int>(std::ceil(std::abs(x) + std::abs(m))) + 64);
  const double step = kTwoPi / n;
  std::complex<double> sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = k * step;
    const double phase = -x * std::cos(phi - phi_prime) + m * phi;
    sum += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum * step;
}

HankelResult hankel(std::span<const double> g_on_nodes, const HankelPlan& plan, double t_prime) {
  if (g_on_nodes.size() != plan.size())
    throw DomainError("hankel: samples do not match the plan nodes");
  const auto& t = plan.nodes();
  const auto& w = plan.weights();
  const int m = plan.order();
  double sum = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (g_on_nodes[k] == 0.0) continue;
    sum += w[k] * t[k] * g_on_nodes[k] * bessel_j(m, t[k] * t_prime);
  }
  // Euler-Maclaurin term at t = 0: the integrand t g(t) J_m(t t') has slope g(0) when m = 0
  const double h = plan.origin_step();
  if (m == 0 && h > 0.0 && t.size() >= 3) {
    const double g0 = 3.0 * g_on_nodes[0] - 3.0 * g_on_nodes[1] + g_on_nodes[2];
    sum += h * h / 12.0 * g0;
  }
  return {sum, truncated_at_edge(g_on_nodes, plan)};
}

HankelResult hankel(const RealFunction& g, const HankelPlan& plan, double t_prime) {
  const auto samples = sample_on(g, plan);
  return hankel(samples, plan, t_prime);
}

QuadratureResult hankel_oscillatory(const RealFunction& g, int m, double t_prime, double tol) {
  return integrate_oscillatory_bessel([&g](double t) { return t * g(t); }, m, t_prime, tol);
}

MappedWavefunction wavefunction_map(std::span<const double> radial_on_nodes, const HankelPlan& plan,
                                    std::span<const double> t_prime_nodes) {
  MappedWavefunction out;
  out.quarter_turns = plan.order() % 4;
  out.u.nodes.assign(t_prime_nodes.begin(), t_prime_nodes.end());
  out.u.values.reserve(t_prime_nodes.size());
  for (double tp : t_prime_nodes) {
    const HankelResult h = hankel(radial_on_nodes, plan, tp);
    out.truncated = out.truncated || h.truncated;
    out.u.values.push_back(kTwoPi * std::pow(1.0 + tp * tp, 1.5) * h.value);
  }
  return out;
}

std::vector<double> morse_radial_on_plan(const SampledFunction& eigenfunction, double lambda,
                                         const HankelPlan& plan) {
  const CubicSpline spline(eigenfunction.nodes, eigenfunction.values);
  std::vector<double> out(plan.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = spline(rho_from_t_morse(lambda, plan.nodes()[k]), 0.0);
  return out;
}

namespace {

// (1/t) d_t q_morse(t) with t = lambda e^{-rho}; d_t = -(1/t) d_rho
std::vector<double> morse_q_term(const MorseFamily& morse, const HankelPlan& plan) {
  const double lambda = morse.params().lambda();
  std::vector<double> g(plan.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = plan.nodes()[k];
    g[k] = -morse.q_derivative(rho_from_t_morse(lambda, t)) / (t * t);
  }
  return g;
}

// (1/t') d_t' q_pt(t') with t' = e^{-rho}
double pt_q_term(const PoschlTellerFamily& pt, double t_prime) {
  return -pt.q_derivative(rho_from_t_pt(t_prime)) / (t_prime * t_prime);
}

}  // namespace

PotentialTermReport potential_term_map(const MorseParams& morse, const PTParams& pt, int m,
                                       const HankelPlan& plan,
                                       std::span<const double> t_prime_nodes) {
  if (morse.gamma() != pt.gamma())
    throw DomainError("potential_term_map: both families must share gamma");
  const MorseFamily morse_family(morse);
  const PoschlTellerFamily pt_family(pt);
  const HankelPlan base(m, plan.nodes(), plan.weights());

  PotentialTermReport report;
  report.t_prime.assign(t_prime_nodes.begin(), t_prime_nodes.end());
  for (double tp : t_prime_nodes) report.rhs.push_back(pt_q_term(pt_family, tp));

  const auto evaluate = [&](const HankelPlan& p, std::vector<double>& lhs) {
    const auto g = morse_q_term(morse_family, p);
    lhs.clear();
    double worst = 0.0;
    bool truncated = false;
    for (std::size_t j = 0; j < t_prime_nodes.size(); ++j) {
      const HankelResult h = hankel(g, p, t_prime_nodes[j]);
      truncated = truncated || h.truncated;
      lhs.push_back(h.value);
      worst = std::max(worst, std::abs(h.value - report.rhs[j]));
    }
    return std::pair{worst, truncated};
  };

  auto [coarse, truncated] = evaluate(base, report.lhs);
  std::vector<double> fine_lhs;
  const HankelPlan fine = base.refined(2);
  auto [fine_max, fine_truncated] = evaluate(fine, fine_lhs);

  for (std::size_t j = 0; j < report.t_prime.size(); ++j)
    report.residual.push_back(report.lhs[j] - report.rhs[j]);
  report.max_residual = coarse;
  report.refinement = {{{base.size(), coarse}, {fine.size(), fine_max}}};
  report.truncated = truncated || fine_truncated;
  return report;
}

SandwichedTerm sandwiched_potential_term(const MorseFamily& morse, const PoschlTellerFamily& pt,
                                         const SampledFunction& eigenfunction,
                                         const HankelPlan& plan, const HankelPlan& outer) {
  const double lambda = morse.params().lambda();
  const auto g = morse_q_term(morse, plan);
  const auto radial = morse_radial_on_plan(eigenfunction, lambda, outer);
  double peak = 0.0;
  for (double r : radial) peak = std::max(peak, std::abs(r));

  SandwichedTerm out;
  out.m = plan.order();
  for (std::size_t j = 0; j < outer.size(); ++j) {
    if (std::abs(radial[j]) <= 1e-14 * peak) continue;
    const double tp = outer.nodes()[j];
    const double weight = outer.weights()[j] * tp * radial[j];
    out.lhs += weight * hankel(g, plan, tp).value;
    out.rhs += weight * pt_q_term(pt, tp);
  }
  out.relative_difference = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

}  // namespace morsept
