#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace morsept {

using RealFunction = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Cylindrical Bessel function of the first kind J_m(x) for integer order.
///
/// Negative orders use J_{-m} = (-1)^m J_m and negative arguments use
/// J_m(-x) = (-1)^m J_m(x). Small arguments are summed from the power series,
/// moderate ones by normalized downward (Miller) recurrence and large ones
/// from the Hankel asymptotic expansion followed by upward recurrence.
/// Throws DomainError when x is not finite.
double bessel_j(int m, double x);

/// k-th positive zero (k >= 1) of J_m, m >= 0. McMahon estimate polished by Newton.
double bessel_j_zero(int m, int k);

/// Lower incomplete gamma function gamma(s, x) = int_0^x u^{s-1} e^{-u} du.
/// Requires s > 0 and x >= 0; throws DomainError otherwise.
double lower_incomplete_gamma(double s, double x);

/// Upper incomplete gamma function Gamma(s, x) = Gamma(s) - gamma(s, x).
double upper_incomplete_gamma(double s, double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

/// Single 15-point Gauss-Kronrod panel; error_estimate uses the QUADPACK heuristic.
QuadratureResult gauss_kronrod_panel(const RealFunction& f, double a, double b);

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// Panels are bisected, worst first, until the summed error estimate drops
/// below the absolute tolerance. Throws QuadratureError (carrying the best
/// estimate) when max_evaluations is exhausted, and DomainError for tol <= 0
/// or a non-finite integrand sample.
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                                    std::size_t max_evaluations = 200000);

/// int_0^inf g(x) J_m(p x) dx.
///
/// The half-line is cut at the zeros of J_m(p x); each piece is integrated
/// adaptively and the resulting alternating partial sums are extrapolated
/// with Wynn's epsilon algorithm. Throws OscillatoryError if the
/// extrapolated sequence does not settle within max_segments pieces.
QuadratureResult integrate_oscillatory_bessel(const RealFunction& g, int m, double p, double tol,
                                              int max_segments = 400);

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  /// Evaluates the spline; returns `outside` beyond the tabulated range.
  double operator()(double x, double outside = 0.0) const;

  double min() const noexcept { return x_.front(); }
  double max() const noexcept { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> second_;
};

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenproblem
// ---------------------------------------------------------------------------

/// Symmetric tridiagonal matrix stored by its diagonal and one off-diagonal.
class TridiagonalMatrix {
 public:
  /// Throws DomainError unless diag.size() >= 2 and offdiag.size() == diag.size() - 1.
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t size() const noexcept { return diag_.size(); }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& offdiag() const noexcept { return offdiag_; }

  /// Infinity norm (max absolute row sum).
  double norm() const;

  /// y = M x
  std::vector<double> multiply(std::span<const double> x) const;

  /// Number of eigenvalues strictly less than x (Sturm sequence count).
  std::size_t count_below(double x) const;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit Euclidean norm
};

/// The k algebraically smallest eigenpairs, eigenvalues nondecreasing.
///
/// Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
/// iteration with reorthogonalization inside clusters. Each eigenvector is
/// signed so that its first entry above 1e-3 of its peak magnitude is positive.
/// Throws DomainError if k > n.
std::vector<EigenPair> tridiag_eigen(const TridiagonalMatrix& matrix, std::size_t k);

}  // namespace morsept
