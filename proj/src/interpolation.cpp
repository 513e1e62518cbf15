#include <algorithm>

#include "morsept/error.hpp"
#include "morsept/numerics.hpp"

namespace morsept {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw DomainError("CubicSpline: need at least 3 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("CubicSpline: abscissae must increase strictly");

  // natural end conditions; Thomas algorithm on the interior system
  second_.assign(n, 0.0);
  std::vector<double> c(n, 0.0);
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
    c[i] = h1 / diag;
    r[i] = (rhs - h0 * r[i - 1]) / diag;
  }
  for (std::size_t i = n - 1; i-- > 1;) second_[i] = r[i] - c[i] * second_[i + 1];
}

double CubicSpline::operator()(double x, double outside) const {
  if (x < x_.front() || x > x_.back()) return outside;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (hi >= x_.size()) hi = x_.size() - 1;
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * h * h / 6.0;
}

}  // namespace morsept
