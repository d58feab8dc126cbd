#include "cavity/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace cavity {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::modal_resonance: return "modal resonance";
    case ErrorKind::connection_resonance: return "connection resonance";
    case ErrorKind::system_singular: return "system singular";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::order_too_high: return "order too high";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

namespace special {
namespace {

constexpr double kTwoOverPi = 2.0 / kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Pair {
  double j;
  double y;
};

// ---- ascending series -----------------------------------------------------

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (double(k) * k);
    sum += term;
    if (std::abs(term) < kEps * 1e-3 * std::abs(sum)) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (double(k) * (k + 1));
    sum += term;
    if (std::abs(term) < kEps * 1e-3 * std::abs(sum)) break;
  }
  return sum;
}

double y0_series(double x, double j0) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (double(k) * k);
    harmonic += 1.0 / k;
    const double add = -term * harmonic;
    sum += add;
    if (std::abs(add) < kEps * 1e-3 * std::abs(sum)) break;
  }
  return kTwoOverPi * ((std::log(0.5 * x) + kEulerGamma) * j0 + sum);
}

double y1_series(double x, double j1) {
  // DLMF 10.8.1 with n = 1; psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma.
  const double q = 0.25 * x * x;
  double term = 1.0;  // (-q)^k / (k! (k+1)!)
  double harmonic = 0.0;
  double sum = 1.0 - 2.0 * kEulerGamma;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (double(k) * (k + 1));
    harmonic += 1.0 / k;
    const double add = term * (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma);
    sum += add;
    if (std::abs(add) < kEps * 1e-3 * std::abs(sum)) break;
  }
  return -kTwoOverPi / x + kTwoOverPi * std::log(0.5 * x) * j1 - 0.5 * x / kPi * sum;
}

// ---- Miller backward recurrence -------------------------------------------

struct MillerResult {
  double j0, j1, y0, y1;
};

MillerResult miller(double x) {
  const int start = 2 * (static_cast<int>(0.5 * x) + 24);
  double jp1 = 0.0;   // J_{k+1}
  double jk = 1e-30;  // J_k
  double norm = 0.0;
  double sum_y0 = 0.0;  // sum_{k>=1} (-1)^k J_{2k} / k
  double sum_y1 = 0.0;  // sum_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1}) / k
  double j1 = 0.0;
  for (int k = start; k > 0; --k) {
    const double jm1 = (2.0 * k / x) * jk - jp1;  // J_{k-1}
    jp1 = jk;
    jk = jm1;
    const int idx = k - 1;
    if (idx % 2 == 0) {
      if (idx > 0) {
        const int half = idx / 2;
        const double sign = (half % 2 == 0) ? 1.0 : -1.0;
        norm += 2.0 * jk;
        sum_y0 += sign * jk / half;
      }
    } else {
      // idx odd: idx = 2k-1 contributes +J_{2k-1}/k, and -J_{2k+1}/k' for
      // k' = (idx-1)/2.
      const int k_up = (idx + 1) / 2;  // term with J_{2k-1}, k = k_up
      const double sign_up = (k_up % 2 == 0) ? 1.0 : -1.0;
      sum_y1 += sign_up * jk / k_up;
      const int k_down = (idx - 1) / 2;  // term with -J_{2k+1}, k = k_down
      if (k_down >= 1) {
        const double sign_down = (k_down % 2 == 0) ? 1.0 : -1.0;
        sum_y1 -= sign_down * jk / k_down;
      }
      if (idx == 1) j1 = jk;
    }
    if (std::abs(jk) > 1e200) {
      constexpr double s = 1e-200;
      jk *= s;
      jp1 *= s;
      norm *= s;
      sum_y0 *= s;
      sum_y1 *= s;
      j1 *= s;
    }
  }
  norm += jk;
  const double scale = 1.0 / norm;
  MillerResult r{};
  r.j0 = jk * scale;
  r.j1 = j1 * scale;
  const double lg = std::log(0.5 * x) + kEulerGamma;
  r.y0 = kTwoOverPi * lg * r.j0 - 2.0 * kTwoOverPi * sum_y0 * scale;
  r.y1 = kTwoOverPi * (lg * r.j1 - r.j0 / x) + kTwoOverPi * sum_y1 * scale;
  return r;
}

// ---- Hankel asymptotic expansion ------------------------------------------

Pair asymptotic(double x, int order) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  const double inv8x = 1.0 / (8.0 * x);
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) * inv8x / k;
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // a_k / x^k with alternating signs: P gets k even, Q gets k odd.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (last < 1e-18) break;
  }
  const double chi = x - (0.5 * order + 0.25) * kPi;
  const double amp = std::sqrt(kTwoOverPi / x);
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= kSeriesLimit) return j0_series(x);
  if (x <= kAsymptoticLimit) return miller(x).j0;
  return asymptotic(x, 0).j;
}

double bessel_j1(double x) {
  const double sign = x < 0.0 ? -1.0 : 1.0;
  x = std::abs(x);
  if (x <= kSeriesLimit) return sign * j1_series(x);
  if (x <= kAsymptoticLimit) return sign * miller(x).j1;
  return sign * asymptotic(x, 1).j;
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "bessel_y0 requires x > 0");
  if (x <= kSeriesLimit) return y0_series(x, j0_series(x));
  if (x <= kAsymptoticLimit) return miller(x).y0;
  return asymptotic(x, 0).y;
}

double bessel_y1(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "bessel_y1 requires x > 0");
  if (x <= kSeriesLimit) return y1_series(x, j1_series(x));
  if (x <= kAsymptoticLimit) return miller(x).y1;
  return asymptotic(x, 1).y;
}

Complex hankel1_0(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "hankel1_0 requires x > 0");
  if (x <= kSeriesLimit) {
    const double j = j0_series(x);
    return {j, y0_series(x, j)};
  }
  if (x <= kAsymptoticLimit) {
    const auto m = miller(x);
    return {m.j0, m.y0};
  }
  const auto a = asymptotic(x, 0);
  return {a.j, a.y};
}

Complex hankel1_1(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::domain, "hankel1_1 requires x > 0");
  if (x <= kSeriesLimit) {
    const double j = j1_series(x);
    return {j, y1_series(x, j)};
  }
  if (x <= kAsymptoticLimit) {
    const auto m = miller(x);
    return {m.j1, m.y1};
  }
  const auto a = asymptotic(x, 1);
  return {a.j, a.y};
}

Complex regularized_kernel(double r, KernelScale scale) {
  const double c = scale.value();
  const double z = c * r;
  if (z <= kSeriesLimit) {
    // H0(z) = J0(z) + (2i/pi)(ln(z/2) + gamma) J0(z)
    //         + (2i/pi) sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2
    // and ln(z/2) = ln(c/2) + ln r, so the ln r part cancels exactly.
    const double q = 0.25 * z * z;
    double term = 1.0;
    double harmonic = 0.0;
    double j0 = 1.0;
    double tail = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= -q / (double(k) * k);
      harmonic += 1.0 / k;
      j0 += term;
      tail -= term * harmonic;
      if (std::abs(term) * (1.0 + harmonic) < kEps * 1e-3) break;
    }
    const double im = kTwoOverPi * ((std::log(0.5 * c) + kEulerGamma) * j0 + tail);
    return {j0, im};
  }
  const Complex h = hankel1_0(z);
  return {h.real(), h.imag() - kTwoOverPi * bessel_j0(z) * std::log(r)};
}

double j0_series_partial(double z, int K) {
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= K; ++k) {
    term *= -q / (double(k) * k);
    sum += term;
  }
  return sum;
}

double j0_series_remainder(double z, int K) {
  if (K < 0) throw Error(ErrorKind::domain, "series truncation must be non-negative");
  const double q = 0.25 * z * z;
  if (q == 0.0) return 0.0;
  double term = 1.0;
  for (int k = 1; k <= K; ++k) term *= -q / (double(k) * k);
  double sum = 0.0;
  double largest = 0.0;
  for (int k = K + 1; k < K + 400; ++k) {
    term *= -q / (double(k) * k);
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (k > q && std::abs(term) <= kEps * 1e-3 * largest) break;
  }
  return sum;
}

}  // namespace special
}  // namespace cavity
