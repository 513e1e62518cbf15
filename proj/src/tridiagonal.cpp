#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "morsept/error.hpp"
#include "morsept/numerics.hpp"

namespace morsept {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Banded LU of (T - shift I) with partial pivoting; U keeps two superdiagonals.
class ShiftedFactorization {
 public:
  ShiftedFactorization(const TridiagonalMatrix& t, double shift, double tiny) {
    const std::size_t n = t.size();
    const auto& d = t.diag();
    const auto& e = t.offdiag();
    diag_.resize(n);
    up1_.assign(n, 0.0);
    up2_.assign(n, 0.0);
    mult_.assign(n, 0.0);
    swapped_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) diag_[i] = d[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) up1_[i] = e[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double sub = e[i];
      if (std::abs(diag_[i]) >= std::abs(sub)) {
        if (diag_[i] == 0.0) diag_[i] = tiny;
        const double l = sub / diag_[i];
        diag_[i + 1] -= l * up1_[i];
        mult_[i] = l;
      } else {
        const double l = diag_[i] / sub;
        const double old_up1 = up1_[i];
        const double next_diag = diag_[i + 1];
        const double next_up1 = (i + 2 < n) ? up1_[i + 1] : 0.0;
        diag_[i] = sub;
        up1_[i] = next_diag;
        up2_[i] = next_up1;
        diag_[i + 1] = old_up1 - l * next_diag;
        if (i + 2 < n) up1_[i + 1] = -l * next_up1;
        mult_[i] = l;
        swapped_[i] = true;
      }
    }
    if (diag_[n - 1] == 0.0) diag_[n - 1] = tiny;
    for (auto& v : diag_)
      if (std::abs(v) < tiny) v = std::copysign(tiny, v);
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = diag_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= mult_[i] * b[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = b[ii];
      if (ii + 1 < n) s -= up1_[ii] * b[ii + 1];
      if (ii + 2 < n) s -= up2_[ii] * b[ii + 2];
      b[ii] = s / diag_[ii];
    }
  }

 private:
  std::vector<double> diag_;
  std::vector<double> up1_;
  std::vector<double> up2_;
  std::vector<double> mult_;
  std::vector<bool> swapped_;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void scale(std::vector<double>& v, double factor) {
  for (double& x : v) x *= factor;
}

void fix_sign(std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-3 * peak) {
      if (x < 0.0) scale(v, -1.0);
      return;
    }
  }
}

}  // namespace

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.size() < 2) throw DomainError("TridiagonalMatrix: need at least 2 rows");
  if (offdiag_.size() + 1 != diag_.size())
    throw DomainError("TridiagonalMatrix: off-diagonal must have n - 1 entries");
}

double TridiagonalMatrix::norm() const {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag_[i]);
    if (i > 0) row += std::abs(offdiag_[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag_[i]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw DomainError("TridiagonalMatrix::multiply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag_[i] * x[i];
    if (i > 0) s += offdiag_[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag_[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::size_t TridiagonalMatrix::count_below(double x) const {
  double max_off = 1.0;
  for (double e : offdiag_) max_off = std::max(max_off, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_off;

  std::size_t count = 0;
  double q = diag_[0] - x;
  if (std::abs(q) <= pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag_.size(); ++i) {
    q = diag_[i] - x - offdiag_[i - 1] * offdiag_[i - 1] / q;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<EigenPair> tridiag_eigen(const TridiagonalMatrix& matrix, std::size_t k) {
  const std::size_t n = matrix.size();
  if (k > n) throw DomainError("tridiag_eigen: requested more eigenpairs than the matrix order");
  if (k == 0) return {};

  const auto& d = matrix.diag();
  const auto& e = matrix.offdiag();
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(e[i - 1]);
    if (i + 1 < n) radius += std::abs(e[i]);
    lower = std::min(lower, d[i] - radius);
    upper = std::max(upper, d[i] + radius);
  }
  const double norm = std::max(matrix.norm(), std::numeric_limits<double>::min());
  lower -= 2.0 * kEps * norm;
  upper += 2.0 * kEps * norm;

  std::vector<double> values(k);
  double floor = lower;
  for (std::size_t j = 0; j < k; ++j) {
    double lo = floor;
    double hi = upper;
    while (hi - lo > 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (matrix.count_below(mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    values[j] = 0.5 * (lo + hi);
    floor = lo;
  }

  // Inverse iteration. Eigenvalues closer than 1e-3 |T| share a cluster and
  // their vectors are reorthogonalized against each other.
  const double cluster_gap = 1e-3 * norm;
  const double tiny = kEps * norm;
  std::vector<EigenPair> pairs;
  pairs.reserve(k);
  std::size_t cluster_start = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0 && values[j] - values[j - 1] > cluster_gap) cluster_start = j;
    double shift = values[j];
    // separate exactly repeated shifts so each solve sees a distinct matrix
    if (j > cluster_start) {
      const double prev = pairs[j - 1].value;
      if (std::abs(shift - prev) < 10.0 * tiny) shift = prev + 10.0 * tiny;
    }
    ShiftedFactorization lu(matrix, shift, tiny);

    std::mt19937 rng(static_cast<std::uint32_t>(1234567u + 7919u * j));
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng()) / 4294967296.0 - 0.5;
    scale(v, 1.0 / norm2(v));

    for (int it = 0; it < 5; ++it) {
      lu.solve(v);
      for (std::size_t c = cluster_start; c < j; ++c) {
        const auto& u = pairs[c].vector;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
      }
      const double len = norm2(v);
      if (len == 0.0 || !std::isfinite(len)) {
        for (std::size_t i = 0; i < n; ++i) v[i] = (i % (j + 2) == 0) ? 1.0 : 0.0;
        scale(v, 1.0 / norm2(v));
        continue;
      }
      scale(v, 1.0 / len);
    }
    fix_sign(v);
    pairs.push_back({values[j], std::move(v)});
  }
  return pairs;
}

}  // namespace morsept
