#pragma once

namespace specdpp {

/// Order of a Bessel function restricted to half-integers alpha = k/2,
/// k = 0..8. That covers J_{m/2} for every dimension m <= 8.
class BesselOrder {
 public:
  static constexpr int kMaxTwiceAlpha = 8;

  /// alpha = twice_alpha / 2. Throws UnsupportedOrderError outside 0..8.
  static BesselOrder half(int twice_alpha);
  /// Accepts only exact half-integers in range.
  static BesselOrder from_real(double alpha);

  double value() const { return 0.5 * twice_; }
  int twice() const { return twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }

 private:
  explicit BesselOrder(int twice_alpha) : twice_(twice_alpha) {}
  int twice_;
};

// Below this argument J_alpha is summed from its power series.
inline constexpr double kBesselSeriesSwitch = 12.0;
// Below this argument F_alpha uses a four-term Taylor expansion.
inline constexpr double kFAlphaSmallArgument = 1e-4;

/// Bessel function of the first kind J_alpha(x), x >= 0.
///
/// Power series for x <= 12. Beyond that, half-integer orders go through
/// the spherical Bessel closed forms and integer orders through Miller's
/// downward recurrence normalised by J_0 + 2 sum J_2k = 1. Absolute error is
/// below 1e-12 on [0, 100].
double bessel_j(BesselOrder order, double x);

/// F_alpha(t) = J_alpha(t) / t^alpha, continuous at t = 0 where it equals
/// 2^-alpha / Gamma(alpha + 1).
double f_alpha(BesselOrder order, double t);

/// Volume of the unit ball in R^m, 1 <= m <= 8.
double unit_ball_volume(int m);

}  // namespace specdpp
