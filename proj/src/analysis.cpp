#include "morsept/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "morsept/coordinates.hpp"
#include "morsept/error.hpp"

namespace morsept {

std::string_view to_string(FamilyKind kind) { return kind == FamilyKind::morse ? "morse" : "pt"; }

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::shifted:
      return "shifted";
    case Variant::partner:
      return "partner";
    case Variant::generalized:
      return "generalized";
  }
  return "unknown";
}

std::unique_ptr<PotentialFamily> make_family(FamilyKind kind, double strength, double gamma) {
  if (kind == FamilyKind::morse) return std::make_unique<MorseFamily>(MorseParams(strength, gamma));
  return std::make_unique<PoschlTellerFamily>(PTParams(strength, gamma));
}

Spectrum solve_family(const PotentialFamily& family, Variant variant,
                      const std::optional<Grid>& grid) {
  RealFunction potential;
  switch (variant) {
    case Variant::shifted:
      potential = [&family](double rho) { return family.shifted(rho); };
      break;
    case Variant::partner:
      potential = [&family](double rho) { return family.partner(rho); };
      break;
    case Variant::generalized:
      potential = [&family](double rho) { return family.generalized(rho); };
      break;
  }
  return solve_bound_states(potential, grid ? *grid : family.default_grid(),
                            family.continuum_threshold());
}

namespace {

SpectralReport pair_levels(std::span<const double> left, std::span<const double> right,
                           double shift, bool skipped, double tolerance) {
  SpectralReport report;
  report.skipped_ground = skipped;
  report.tolerance = tolerance;
  report.left_count = left.size();
  report.right_count = right.size();
  const std::size_t common = std::min(left.size(), right.size());
  for (std::size_t i = 0; i < common; ++i) {
    const double delta = right[i] - (left[i] + shift);
    report.pairs.push_back({left[i], right[i], delta});
    report.max_delta = std::max(report.max_delta, std::abs(delta));
  }
  std::ostringstream detail;
  if (left.size() != right.size()) {
    report.count_mismatch = true;
    detail << "level count mismatch: " << left.size() << " vs " << right.size();
  } else {
    detail << left.size() << " levels paired, max |delta| = " << report.max_delta;
  }
  report.detail = detail.str();
  report.pass = !report.count_mismatch && report.max_delta <= tolerance;
  return report;
}

}  // namespace

SpectralReport isospectral_check(std::span<const double> a, std::span<const double> b,
                                 bool skip_ground_of_a, double tolerance) {
  if (skip_ground_of_a && !a.empty()) a = a.subspan(1);
  return pair_levels(a, b, 0.0, skip_ground_of_a, tolerance);
}

SpectralReport isospectral_check(const Spectrum& a, const Spectrum& b, bool skip_ground_of_a,
                                 double tolerance) {
  return isospectral_check(std::span<const double>(a.eigenvalues),
                           std::span<const double>(b.eigenvalues), skip_ground_of_a, tolerance);
}

SpectralReport energy_shift_check(std::span<const double> e_morse, std::span<const double> e_pt,
                                  double lambda, double mu, double tolerance) {
  return pair_levels(e_morse, e_pt, lambda - mu - 0.5, false, tolerance);
}

SpectralReport energy_shift_check(const Spectrum& e_morse, const Spectrum& e_pt, double lambda,
                                  double mu, double tolerance) {
  return energy_shift_check(std::span<const double>(e_morse.eigenvalues),
                            std::span<const double>(e_pt.eigenvalues), lambda, mu, tolerance);
}

GammaSweep gamma_sweep(FamilyKind family, double strength, std::span<const double> gammas,
                       double tolerance) {
  GammaSweep sweep{family, strength, {}, {}, 0.0, false};
  const auto base_family = make_family(family, strength, 1.0);
  sweep.base = solve_family(*base_family, Variant::shifted);

  std::vector<std::future<GammaSweepEntry>> jobs;
  jobs.reserve(gammas.size());
  for (double gamma : gammas) {
    jobs.push_back(std::async(std::launch::async, [family, strength, gamma, tolerance, &sweep] {
      const auto f = make_family(family, strength, gamma);
      GammaSweepEntry entry{gamma, f->rho_min(), solve_family(*f, Variant::generalized), {}};
      entry.versus_base = isospectral_check(sweep.base, entry.spectrum, false, tolerance);
      return entry;
    }));
  }
  for (auto& job : jobs) sweep.entries.push_back(job.get());

  bool pass = true;
  std::size_t levels = sweep.base.eigenvalues.size();
  for (const auto& e : sweep.entries) {
    pass = pass && e.versus_base.pass;
    levels = std::min(levels, e.spectrum.eigenvalues.size());
  }
  for (std::size_t n = 0; n < levels && !sweep.entries.empty(); ++n) {
    double lo = sweep.entries.front().spectrum.eigenvalues[n];
    double hi = lo;
    for (const auto& e : sweep.entries) {
      lo = std::min(lo, e.spectrum.eigenvalues[n]);
      hi = std::max(hi, e.spectrum.eigenvalues[n]);
    }
    sweep.max_spread = std::max(sweep.max_spread, hi - lo);
  }
  sweep.pass = pass && sweep.max_spread <= tolerance;
  return sweep;
}

namespace {

double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

void normalize(std::vector<double>& y, double h) {
  std::vector<double> sq(y.size());
  std::transform(y.begin(), y.end(), sq.begin(), [](double v) { return v * v; });
  const double norm = std::sqrt(trapezoid(sq, h));
  if (!(norm > 0.0)) throw DomainError("wavefunction_connection: state vanishes on the window");
  for (double& v : y) v /= norm;
}

}  // namespace

WavefunctionConnection wavefunction_connection(const Spectrum& morse, double lambda,
                                               const Spectrum& pt, int n, double window,
                                               double t_max, std::size_t plan_nodes) {
  const double a = lambda - 0.5;
  if (std::abs(a - std::round(a)) > 1e-12 || a < 1.0)
    throw DomainError("wavefunction_connection: lambda - 1/2 must be a positive integer");
  const int levels = static_cast<int>(std::lround(a));
  if (n < 0 || n >= levels) throw DomainError("wavefunction_connection: n must lie in [0, lambda - 1/2)");
  const auto index = static_cast<std::size_t>(n);
  if (morse.eigenfunctions.size() <= index || pt.eigenfunctions.size() <= index)
    throw DomainError("wavefunction_connection: both spectra must contain state n");
  if (!(window > 0.0)) throw DomainError("wavefunction_connection: window must be positive");

  WavefunctionConnection out;
  out.n = n;
  out.m = levels - n;
  const HankelPlan plan = HankelPlan::uniform(out.m, t_max, plan_nodes);
  const auto radial = morse_radial_on_plan(morse.eigenfunctions[index], lambda, plan);

  const SampledFunction& direct = pt.eigenfunctions[index];
  std::vector<double> t_prime;
  for (std::size_t i = 0; i < direct.nodes.size(); ++i) {
    const double rho = direct.nodes[i];
    if (std::abs(rho) > window) continue;
    out.rho.push_back(rho);
    out.direct.push_back(direct.values[i]);
    t_prime.push_back(t_pt_from_rho(rho));
  }
  if (out.rho.size() < 3) throw DomainError("wavefunction_connection: window holds too few nodes");
  const double h = out.rho[1] - out.rho[0];

  MappedWavefunction mapped = wavefunction_map(radial, plan, t_prime);
  out.truncated = mapped.truncated;
  out.mapped = std::move(mapped.u.values);
  normalize(out.mapped, h);
  normalize(out.direct, h);

  std::vector<double> work(out.rho.size());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = out.mapped[i] * out.direct[i];
  if (trapezoid(work, h) < 0.0)
    for (double& v : out.mapped) v = -v;
  for (std::size_t i = 0; i < work.size(); ++i) {
    const double d = out.mapped[i] - out.direct[i];
    work[i] = d * d;
  }
  out.discrepancy = std::sqrt(trapezoid(work, h));
  return out;
}

}  // namespace morsept
