#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morsept/eigensolver.hpp"
#include "morsept/potentials.hpp"
#include "morsept/transforms.hpp"

namespace morsept {

/// Default tolerance for comparing two independently solved spectra.
inline constexpr double kSpectralTolerance = 5e-3;

enum class FamilyKind { morse, pt };

/// Which Hamiltonian of a family to solve.
enum class Variant { shifted, partner, generalized };

std::string_view to_string(FamilyKind kind);
std::string_view to_string(Variant variant);

/// Morse takes strength = lambda, Pöschl-Teller takes strength = mu.
std::unique_ptr<PotentialFamily> make_family(FamilyKind kind, double strength, double gamma);

/// Bound states of one variant of a family on `grid` (the family's default box
/// when omitted), below the family's continuum threshold.
Spectrum solve_family(const PotentialFamily& family, Variant variant,
                      const std::optional<Grid>& grid = std::nullopt);

struct SpectralPair {
  double left;
  double right;
  double delta;  // right - left (minus the expected shift where one applies)
};

struct SpectralReport {
  std::vector<SpectralPair> pairs;
  double max_delta = 0.0;
  bool skipped_ground = false;
  double tolerance = kSpectralTolerance;
  bool count_mismatch = false;
  std::size_t left_count = 0;   // after skipping
  std::size_t right_count = 0;
  bool pass = false;
  std::string detail;
};

/// Pairs the n-th level of A (after optionally dropping its lowest) with the
/// n-th level of B. A count mismatch fails the report; the common prefix is
/// still paired so the deltas remain inspectable.
SpectralReport isospectral_check(std::span<const double> a, std::span<const double> b,
                                 bool skip_ground_of_a, double tolerance = kSpectralTolerance);
SpectralReport isospectral_check(const Spectrum& a, const Spectrum& b, bool skip_ground_of_a,
                                 double tolerance = kSpectralTolerance);

/// Pairs E_pt,n with E_m,n + (lambda - mu - 1/2).
SpectralReport energy_shift_check(std::span<const double> e_morse, std::span<const double> e_pt,
                                  double lambda, double mu, double tolerance = kSpectralTolerance);
SpectralReport energy_shift_check(const Spectrum& e_morse, const Spectrum& e_pt, double lambda,
                                  double mu, double tolerance = kSpectralTolerance);

struct GammaSweepEntry {
  double gamma;
  double rho_min;
  Spectrum spectrum;
  SpectralReport versus_base;  // generalized against the shifted base, no skip
};

struct GammaSweep {
  FamilyKind family;
  double strength;
  Spectrum base;
  std::vector<GammaSweepEntry> entries;  // in the order of the requested gammas
  double max_spread = 0.0;               // largest level spread across all gammas
  bool pass = false;
};

/// Solves the generalized potential for every gamma concurrently. The result
/// order follows `gammas` regardless of completion order.
GammaSweep gamma_sweep(FamilyKind family, double strength, std::span<const double> gammas,
                       double tolerance = kSpectralTolerance);

struct WavefunctionConnection {
  int n = 0;
  int m = 0;
  std::vector<double> rho;     // comparison nodes on the Pöschl-Teller grid
  std::vector<double> mapped;  // Hankel-mapped Morse state, normalized, sign aligned
  std::vector<double> direct;  // Pöschl-Teller eigenfunction, normalized
  double discrepancy = 0.0;    // L2(drho) norm of mapped - direct over the window
  bool truncated = false;
};

/// Maps the n-th Morse bound state (shifted, lambda) to the Pöschl-Teller side
/// through a uniform plan of order m = lambda - 1/2 - n and compares it with
/// the n-th state of `pt` over PT grid nodes with |rho| <= window.
/// Throws DomainError unless lambda - 1/2 is a positive integer, n < lambda - 1/2
/// and both spectra hold state n.
WavefunctionConnection wavefunction_connection(const Spectrum& morse, double lambda,
                                               const Spectrum& pt, int n, double window = 3.5,
                                               double t_max = kDefaultHankelTMax,
                                               std::size_t plan_nodes = kDefaultHankelNodes);

}  // namespace morsept
