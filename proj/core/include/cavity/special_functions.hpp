#pragma once

// Real-argument Bessel and Hankel functions of orders 0 and 1.
//
// Evaluation regimes (x = argument):
//   x <= 4          ascending power series
//   4 < x <= 25     Miller backward recurrence normalised by
//                   J0 + 2 sum J_2k = 1; Y0 and Y1 from the Neumann series
//   x > 25          Hankel asymptotic expansion
//
// All functions are pure and thread safe.

#include "cavity/types.hpp"

namespace cavity::special {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

inline constexpr double kSeriesLimit = 4.0;
inline constexpr double kAsymptoticLimit = 25.0;

double bessel_j0(double x);
double bessel_j1(double x);

/// Throws ErrorKind::domain for x <= 0.
double bessel_y0(double x);
double bessel_y1(double x);

/// J0(x) + i Y0(x); throws ErrorKind::domain for x <= 0.
Complex hankel1_0(double x);
Complex hankel1_1(double x);

/// H0(c r) - (2i/pi) J0(c r) ln r as a function of the distance r = |s - t|.
///
/// For c r <= kSeriesLimit the logarithm is cancelled analytically so that
/// the value is a power series in r^2 with no ln evaluation; r = 0 yields
/// the diagonal limit 1 + (2i/pi)(gamma + ln(c/2)).
Complex regularized_kernel(double r, KernelScale scale);

inline Complex regularized_kernel(double s, double t, KernelScale scale) {
  return regularized_kernel(std::abs(s - t), scale);
}

/// J0(z) - sum_{k=0}^{K} (-1)^k (z/2)^{2k} / (k!)^2, summed directly from
/// the tail of the series.
double j0_series_remainder(double z, int K);

/// sum_{k=0}^{K} (-1)^k (z/2)^{2k} / (k!)^2.
double j0_series_partial(double z, int K);

}  // namespace cavity::special
