#pragma once

// Moment integrals over [0, 2 pi] behind the singular aperture blocks.
//
//   poly_trig_integral(p, n, kind)      int s^p trig(n s / 2) ds
//   double_poly_trig(k, m, n, ks, kt)   int int (t - s)^k trig_s(n s / 2) trig_t(m t / 2)
//   log_power_moment(k, n, sine)        W_k(n) = int sin(n s / 2) s^{k+1} ln s ds
//   log_power_moment(k, n, cosine)      X_k(n) = int cos(n s / 2) s^k ln s ds
//   log_double_moment(k, m, n, sine)    S_k(n, m) = int int (t - s)^{k-1} ln|t - s|
//                                                   sin(m t / 2) sin(n s / 2)
//   log_double_moment(k, m, n, cosine)  P_k(n, m), the cosine analogue
//
// S_k and P_k (odd k) are lowered from k + 2 by integration by parts in t,
// at the smaller of the two frequencies. The polynomial moments entering
// each step cancel more and more as the frequency grows, so the recursion
// is used for min(m, n) <= kMaxRecursionFrequency only. Other pairs, and
// every seed, are evaluated directly in the difference variable r = t - s:
// the inner integral is elementary and the outer one carries the
// r^{k-1} ln r endpoint singularity on a geometrically graded mesh.
//
// W_k and X_k recurse while prod (n/2)^2 / ((k+2)(k+3)) stays below
// kMaxRecursionGain and the propagated rounding of the large seed stays
// small; they are integrated directly otherwise.

#include <vector>

#include "cavity/model.hpp"

namespace cavity {

inline constexpr double kMaxRecursionGain = 10.0;
inline constexpr int kMaxRecursionFrequency = 4;
inline constexpr int kMaxPolyOrder = 40;

double poly_trig_integral(int p, int n, TrigKind kind);
long double poly_trig_integral_ld(int p, int n, TrigKind kind);

/// Throws ErrorKind::order_too_high for k > kMaxPolyOrder.
double double_poly_trig(int k, int m, int n, TrigKind kind_s, TrigKind kind_t);
long double double_poly_trig_ld(int k, int m, int n, TrigKind kind_s, TrigKind kind_t);

/// W_k (sine) or X_k (cosine): graded quadrature at k >= lift_threshold,
/// downward recursion below it while the recursion gain stays bounded.
double log_power_moment(int k, int n, TrigKind kind, int lift_threshold = 11);
long double log_power_moment_ld(int k, int n, TrigKind kind, int lift_threshold = 11);
long double log_power_moment_direct(int k, int n, TrigKind kind);
/// W_k from W_{k+2} (or X_k from X_{k+2}).
long double log_power_moment_step(int k, int n, TrigKind kind, long double upper);

/// S_k(n, m) or P_k(n, m) for odd k >= 1; 0 when m + n is odd.
double log_double_moment(int k, int m, int n, TrigKind kind, const QuadratureConfig& cfg);
inline double log_double_moment_sin(int k, int m, int n, const QuadratureConfig& cfg) {
  return log_double_moment(k, m, n, TrigKind::sine, cfg);
}
inline double log_double_moment_cos(int k, int m, int n, const QuadratureConfig& cfg) {
  return log_double_moment(k, m, n, TrigKind::cosine, cfg);
}

/// Difference-variable evaluation (no recursion), any k >= 1.
long double log_double_moment_direct(int k, int m, int n, TrigKind kind);

/// S_1, S_3, ..., S_{2 jmax + 1} from one difference-variable pass.
std::vector<long double> log_double_moments_direct(int jmax, int m, int n, TrigKind kind);

/// Plain tensor-product composite Gauss of the same integral.
double log_double_moment_tensor(int k, int m, int n, TrigKind kind, int panels, int q);

/// One downward step: S_k(n, m) from S_{k+2}(n, m) and W_k(n) (or P_k
/// from P_{k+2} and X_k). The recursion frequency is m.
long double log_double_moment_step(int k, int m, int n, TrigKind kind, long double upper,
                                   long double log_moment);

/// Largest amplification of an error in the value at k_top over the
/// downward steps to k_bottom, at recursion frequency freq.
double recursion_gain(int freq, int k_bottom, int k_top, int shift);

/// int int J0(c |t - s|) ln|t - s| trig(n s/2) trig(m t/2), evaluated in the
/// difference variable without splitting J0.
long double bessel_log_moment(double c, int m, int n, TrigKind kind);

/// Values S_1, S_3, ..., S_{2 jmax + 1} (or P) for one (m, n) pair.
std::vector<long double> log_double_moments(int jmax, int m, int n, TrigKind kind,
                                            int lift_threshold);

/// Whether log_double_moments uses the recursion for this pair.
bool uses_recursion(int m, int n, TrigKind kind, int lift_threshold);

}  // namespace cavity
