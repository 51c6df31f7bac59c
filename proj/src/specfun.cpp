#include "specdpp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specdpp/errors.hpp"

namespace specdpp {
namespace {

double series_j(double alpha, double x) {
  const double half_x = 0.5 * x;
  const double q = half_x * half_x;
  double term = std::pow(half_x, alpha) / std::tgamma(alpha + 1.0);
  double sum = term;
  for (int k = 0; k < 500; ++k) {
    term *= -q / ((k + 1.0) * (k + 1.0 + alpha));
    if (std::abs(term) < 1e-16 * std::abs(sum) || term == 0.0) {
      sum += term;
      break;
    }
    sum += term;
  }
  return sum;
}

// J_{n+1/2}(x) = sqrt(2x/pi) j_n(x); upward recurrence on j_n is stable for
// x > n, which always holds on this branch.
double half_integer_j(int n, double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  double prev = s / x;
  if (n > 0) {
    double cur = s / (x * x) - c / x;
    for (int k = 1; k < n; ++k) {
      const double next = (2.0 * k + 1.0) / x * cur - prev;
      prev = cur;
      cur = next;
    }
    prev = cur;
  }
  return std::sqrt(2.0 * x / std::numbers::pi) * prev;
}

double miller_j(int n, double x) {
  const int top = std::max(n, static_cast<int>(x));
  int start = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
  start += start % 2;

  double above = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double wanted = 0.0;
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    if (k == n) wanted = cur;
    if (k % 2 == 0) norm += 2.0 * cur;
    const double below = 2.0 * k / x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      wanted *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += cur;
  if (n == 0) wanted = cur;
  return wanted / norm;
}

}  // namespace

BesselOrder BesselOrder::half(int twice_alpha) {
  if (twice_alpha < 0 || twice_alpha > kMaxTwiceAlpha) {
    throw UnsupportedOrderError("Bessel order " + std::to_string(0.5 * twice_alpha) +
                                " outside supported half-integers 0..4");
  }
  return BesselOrder(twice_alpha);
}

BesselOrder BesselOrder::from_real(double alpha) {
  const double twice = 2.0 * alpha;
  if (!std::isfinite(twice) || twice != std::round(twice)) {
    throw UnsupportedOrderError("Bessel order must be a half-integer");
  }
  return half(static_cast<int>(twice));
}

double bessel_j(BesselOrder order, double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_j: argument must be non-negative");
  if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  if (x <= kBesselSeriesSwitch) return series_j(order.value(), x);
  if (order.is_integer()) return miller_j(order.twice() / 2, x);
  return half_integer_j((order.twice() - 1) / 2, x);
}

double f_alpha(BesselOrder order, double t) {
  if (!(t >= 0.0)) throw DomainError("f_alpha: argument must be non-negative");
  const double alpha = order.value();
  if (t < kFAlphaSmallArgument) {
    // sum_k (-1)^k (t/2)^{2k} / (2^alpha k! Gamma(k+alpha+1)), four terms
    const double q = 0.25 * t * t;
    double term = std::pow(2.0, -alpha) / std::tgamma(alpha + 1.0);
    double sum = term;
    for (int k = 0; k < 3; ++k) {
      term *= -q / ((k + 1.0) * (k + 1.0 + alpha));
      sum += term;
    }
    return sum;
  }
  return bessel_j(order, t) / std::pow(t, alpha);
}

double unit_ball_volume(int m) {
  if (m < 1 || m > 8) throw DomainError("unit_ball_volume: dimension must be in 1..8");
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

}  // namespace specdpp
