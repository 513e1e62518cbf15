#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "morsept/numerics.hpp"

namespace morsept {

/// Uniform grid of n nodes spanning [min, max] (both ends are nodes).
class Grid {
 public:
  /// Throws DomainError unless n >= 16 and max > min (both finite).
  Grid(double min, double max, std::size_t n);

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t i) const noexcept { return min_ + static_cast<double>(i) * spacing_; }
  std::vector<double> nodes() const;

  /// Trapezoid weights for integrals over [min, max].
  std::vector<double> trapezoid_weights() const;

 private:
  double min_;
  double max_;
  std::size_t n_;
  double spacing_;
};

/// Real function tabulated at increasing nodes.
struct SampledFunction {
  std::vector<double> nodes;
  std::vector<double> values;
};

/// Samples f at every node of the grid.
SampledFunction sample(const RealFunction& f, const Grid& grid);

/// Bound-state spectrum of a 1-D Hamiltonian on a finite box.
struct Spectrum {
  std::vector<double> eigenvalues;          // strictly increasing
  std::vector<SampledFunction> eigenfunctions;  // trapezoid L2-normalized on the grid
  double continuum_threshold = 0.0;
  std::size_t bound_count = 0;
};

struct SolverOptions {
  double edge_tolerance = 1e-3;  // keep E < threshold - edge_tolerance
  double decay_ratio = 1e-6;     // |psi(edge)| must stay below this times max |psi|
};

/// Three-point finite-difference matrix of -d^2/drho^2 + V on the grid nodes,
/// with Dirichlet zeros just outside both ends.
/// Throws DiscretizationError naming the first non-finite sample.
TridiagonalMatrix discretize(const RealFunction& potential, const Grid& grid);

/// Same as above for already tabulated potential values at spacing h.
TridiagonalMatrix discretize(std::span<const double> potential_samples, double spacing);

/// All eigenpairs below threshold - edge_tolerance.
///
/// Eigenfunctions are normalized with trapezoid weights and signed so the
/// first significant lobe is positive. An empty spectrum is returned when no
/// level lies below the threshold. Throws GridTooSmallError when a retained
/// eigenfunction has not decayed at either edge of the box.
Spectrum solve_bound_states(const RealFunction& potential, const Grid& grid, double threshold,
                            const SolverOptions& options = {});

}  // namespace morsept
