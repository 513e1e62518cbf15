#include "morsept/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morsept/error.hpp"

namespace morsept {

Grid::Grid(double min, double max, std::size_t n) : min_(min), max_(max), n_(n) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min))
    throw DomainError("Grid: need finite bounds with max > min");
  if (n < 16) throw DomainError("Grid: need at least 16 nodes");
  spacing_ = (max - min) / static_cast<double>(n - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

std::vector<double> Grid::trapezoid_weights() const {
  std::vector<double> w(n_, spacing_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

SampledFunction sample(const RealFunction& f, const Grid& grid) {
  SampledFunction out{grid.nodes(), {}};
  out.values.reserve(out.nodes.size());
  for (double x : out.nodes) out.values.push_back(f(x));
  return out;
}

TridiagonalMatrix discretize(std::span<const double> potential_samples, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("discretize: spacing must be positive");
  const double inv_h2 = 1.0 / (spacing * spacing);
  std::vector<double> diag(potential_samples.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double v = potential_samples[i];
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "discretize: potential is not finite at node " << i;
      throw DiscretizationError(msg.str(), i);
    }
    diag[i] = 2.0 * inv_h2 + v;
  }
  std::vector<double> off(diag.empty() ? 0 : diag.size() - 1, -inv_h2);
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

TridiagonalMatrix discretize(const RealFunction& potential, const Grid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = potential(grid.node(i));
    if (!std::isfinite(v[i])) {
      std::ostringstream msg;
      msg << "discretize: potential is not finite at node " << i << " (rho = " << grid.node(i)
          << ")";
      throw DiscretizationError(msg.str(), i);
    }
  }
  return discretize(v, grid.spacing());
}

Spectrum solve_bound_states(const RealFunction& potential, const Grid& grid, double threshold,
                            const SolverOptions& options) {
  const TridiagonalMatrix matrix = discretize(potential, grid);
  const double cutoff = threshold - options.edge_tolerance;
  const std::size_t count = matrix.count_below(cutoff);

  Spectrum spectrum;
  spectrum.continuum_threshold = threshold;
  if (count == 0) return spectrum;

  const auto weights = grid.trapezoid_weights();
  const auto nodes = grid.nodes();
  for (auto& pair : tridiag_eigen(matrix, count)) {
    auto& v = pair.vector;
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    if (edge >= options.decay_ratio * peak) {
      std::ostringstream msg;
      msg << "solve_bound_states: level " << spectrum.eigenvalues.size() << " (E = " << pair.value
          << ") has not decayed at the edge of [" << grid.min() << ", " << grid.max()
          << "] (edge/peak = " << edge / peak << "); widen the grid";
      throw GridTooSmallError(msg.str());
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) norm += weights[i] * v[i] * v[i];
    const double inv = 1.0 / std::sqrt(norm);
    for (double& x : v) x *= inv;
    spectrum.eigenvalues.push_back(pair.value);
    spectrum.eigenfunctions.push_back({nodes, std::move(v)});
  }
  spectrum.bound_count = spectrum.eigenvalues.size();
  return spectrum;
}

}  // namespace morsept
