#include "cavity/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>

#include "cavity/gauss.hpp"
#include "cavity/special_functions.hpp"

namespace cavity {
namespace {

using ld = long double;
using cld = std::complex<ld>;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;
constexpr ld kTwoPiL = 2 * kPiL;
constexpr ld kHalfPiL = kPiL / 2;
constexpr ld kGradeRatio = 0.3L;
constexpr ld kGradeFloor = 1e-24L;
constexpr int kGradedPoints = 16;
constexpr ld kRecursionTolerance = 1e-15L;

int odd_ceil(int k) { return k % 2 == 0 ? k + 1 : k; }

ld sign_pow(int n) { return n % 2 == 0 ? 1.0L : -1.0L; }

ld phase_of(TrigKind kind) { return kind == TrigKind::sine ? -kHalfPiL : 0.0L; }

// int_0^{2 pi} s^p e^{i n s / 2} ds for p = 0..pmax.
std::vector<cld> poly_exp_moments(int pmax, int n) {
  std::vector<cld> out(pmax + 1);
  const ld a = n * kPiL;  // nu L
  const cld ea = sign_pow(n);
  std::vector<ld> lpow(pmax + 2, 1.0L);
  for (int p = 1; p <= pmax + 1; ++p) lpow[p] = lpow[p - 1] * kTwoPiL;
  if (n == 0) {
    for (int p = 0; p <= pmax; ++p) out[p] = lpow[p + 1] / (p + 1);
    return out;
  }
  // Upward integration by parts is contracting while p < a; beyond that the
  // scaled series e^{ia} sum_j (-ia)^j p! / (p + j + 1)! has terms bounded by
  // 1 / (p + 1) and no cancellation.
  const cld ia(0.0L, a);
  cld unit = (ea - 1.0L) / ia;  // int_0^1 e^{iau} du
  for (int p = 0; p <= pmax; ++p) {
    if (p > 0) {
      if (p <= a) {
        unit = ea / ia - (ld(p) / ia) * unit;
      } else {
        cld term = 1.0L / ld(p + 1);
        cld sum = term;
        for (int j = 1; j < 2000; ++j) {
          term *= -ia / ld(p + j + 1);
          sum += term;
          if (std::abs(term) <= 1e-22L * std::abs(sum)) break;
        }
        unit = ea * sum;
      }
    }
    out[p] = lpow[p + 1] * unit;
  }
  return out;
}

// Graded composite rule on [0, 2 pi]: the first uniform panel is split
// geometrically toward 0.
struct GradedRule {
  std::vector<ld> x;
  std::vector<ld> w;
};

GradedRule graded_rule(ld omega) {
  const GaussRuleLd g = gauss_rule_ld(kGradedPoints);
  const int panels = std::max(2, static_cast<int>(std::ceil(omega * kTwoPiL / 3.0L)));
  const ld h = kTwoPiL / panels;
  GradedRule r;
  auto add = [&](ld a, ld b) {
    const ld half = (b - a) / 2, mid = (a + b) / 2;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      r.x.push_back(mid + half * g.nodes[i]);
      r.w.push_back(half * g.weights[i]);
    }
  };
  ld hi = h;
  while (hi > kGradeFloor) {
    add(hi * kGradeRatio, hi);
    hi *= kGradeRatio;
  }
  for (int p = 1; p < panels; ++p) add(p * h, p + 1 == panels ? kTwoPiL : (p + 1) * h);
  return r;
}

// 2 cos(phi + w L / 2) sin(w L / 2) / w = int_0^L cos(w s + phi) ds
ld cos_segment(ld w, ld phi, ld L) {
  if (w == 0) return L * std::cos(phi);
  return 2 * std::cos(phi + w * L / 2) * std::sin(w * L / 2) / w;
}

// Inner integrals in the difference variable for r = +rho and r = -rho:
//   plus(rho)  = int_0^{L} f(s) g(s + rho) ds
//   minus(rho) = int_0^{L} f(t + rho) g(t) dt,   L = 2 pi - rho,
// with f = trig_s(nu s), g = trig_t(mu t).
struct Overlap {
  ld plus;
  ld minus;
};

Overlap overlap(ld rho, ld nu, ld da, ld mu, ld db) {
  const ld L = kTwoPiL - rho;
  const ld plus = 0.5L * (cos_segment(nu - mu, da - db - mu * rho, L) +
                          cos_segment(nu + mu, da + db + mu * rho, L));
  const ld minus = 0.5L * (cos_segment(nu - mu, nu * rho + da - db, L) +
                           cos_segment(nu + mu, nu * rho + da + db, L));
  return {plus, minus};
}

// int_0^{2 pi} rho^p ln(rho) e^{i j rho / 2} d rho for p = 0..kMaxPolyOrder + 1;
// negative j by conjugation.
cld log_exp_moment(int p, int j) {
  static std::mutex mutex;
  static std::map<int, std::vector<cld>> cache;
  const int aj = std::abs(j);
  const std::vector<cld>* row = nullptr;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(aj);
    if (it == cache.end()) {
      const GradedRule r = graded_rule(aj / 2.0L);
      std::vector<cld> v(kMaxPolyOrder + 2, 0.0L);
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        const ld x = r.x[i];
        const cld e = std::polar(r.w[i] * std::log(x), aj / 2.0L * x);
        cld term = e;
        for (auto& slot : v) {
          slot += term;
          term *= x;
        }
      }
      it = cache.emplace(aj, std::move(v)).first;
    }
    row = &it->second;
  }
  const cld v = (*row)[p];
  return j < 0 ? std::conj(v) : v;
}

// int_0^{2 pi} rho^p ln(rho) cos_segment(w, phi0 + f rho, 2 pi - rho) d rho with
// w = w2 / 2 and f = f2 / 2.
ld segment_moment(int p, int w2, ld phi0, int f2) {
  const cld e0 = std::polar(1.0L, phi0);
  if (w2 == 0)
    return kTwoPiL * (e0 * log_exp_moment(p, f2)).real() - (e0 * log_exp_moment(p + 1, f2)).real();
  const ld w = w2 / 2.0L;
  const cld e1 = std::polar(1.0L, phi0 + kTwoPiL * w);
  return ((e1 * log_exp_moment(p, f2 - w2)).imag() - (e0 * log_exp_moment(p, f2)).imag()) / w;
}

// int int (t - s)^{k-1} ln|t - s| trig(n s / 2) trig(m t / 2) with the inner
// overlaps of overlap() integrated against the cached moments.
ld log_double_exact(int k, int m, int n, TrigKind kind) {
  const ld ph = phase_of(kind);
  const int p = k - 1;
  const ld plus = 0.5L * (segment_moment(p, n - m, 0.0L, -m) + segment_moment(p, n + m, 2 * ph, m));
  const ld minus = 0.5L * (segment_moment(p, n - m, 0.0L, n) + segment_moment(p, n + m, 2 * ph, n));
  return plus + minus;
}

// S/P recursion factor for the step k -> k + 2 at frequency f.
ld step_factor(int f, int k, int shift) {
  const ld h = f / 2.0L;
  return h * h / (ld(k + shift) * ld(k + shift + 1));
}

}  // namespace

long double poly_trig_integral_ld(int p, int n, TrigKind kind) {
  if (p < 0 || n < 0) throw Error(ErrorKind::domain, "poly_trig_integral needs p, n >= 0");
  const cld v = poly_exp_moments(p, n)[p];
  return kind == TrigKind::cosine ? v.real() : v.imag();
}

double poly_trig_integral(int p, int n, TrigKind kind) {
  return static_cast<double>(poly_trig_integral_ld(p, n, kind));
}

long double double_poly_trig_ld(int k, int m, int n, TrigKind kind_s, TrigKind kind_t) {
  if (k < 0) throw Error(ErrorKind::domain, "double_poly_trig needs k >= 0");
  if (k > kMaxPolyOrder)
    throw Error(ErrorKind::order_too_high, "double_poly_trig order " + std::to_string(k));
  const auto es = poly_exp_moments(k, n);
  const auto et = poly_exp_moments(k, m);
  auto part = [](const cld& z, TrigKind kind) { return kind == TrigKind::cosine ? z.real() : z.imag(); };
  // (t - s)^k = sum_j C(k, j) t^j (-s)^{k - j}
  ld sum = 0;
  ld binom = 1;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom = binom * (k - j + 1) / j;
    sum += binom * sign_pow(k - j) * part(et[j], kind_t) * part(es[k - j], kind_s);
  }
  return sum;
}

double double_poly_trig(int k, int m, int n, TrigKind kind_s, TrigKind kind_t) {
  return static_cast<double>(double_poly_trig_ld(k, m, n, kind_s, kind_t));
}

long double log_power_moment_direct(int k, int n, TrigKind kind) {
  if (k < 0 || n < 0) throw Error(ErrorKind::domain, "log_power_moment needs k, n >= 0");
  if (kind == TrigKind::sine && n == 0) return 0.0L;
  const ld nu = n / 2.0L;
  const int power = kind == TrigKind::sine ? k + 1 : k;
  const GradedRule r = graded_rule(nu);
  ld sum = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const ld s = r.x[i];
    const ld trig = kind == TrigKind::sine ? std::sin(nu * s) : std::cos(nu * s);
    sum += r.w[i] * std::pow(s, ld(power)) * std::log(s) * trig;
  }
  return sum;
}

long double log_power_moment_step(int k, int n, TrigKind kind, long double upper) {
  const ld nu = n / 2.0L;
  const ld l2p = std::log(kTwoPiL);
  if (kind == TrigKind::sine) {
    if (n == 0) return 0.0L;
    // A_k(n)
    const ld a = nu / (k + 2) * (1.0L / (k + 2) + 1.0L / (k + 3)) *
                     poly_trig_integral_ld(k + 2, n, TrigKind::cosine) -
                 sign_pow(n) * n / (2.0L * (k + 2) * (k + 3)) * std::pow(kTwoPiL, ld(k + 3)) * l2p;
    return a - nu * nu / ((k + 2.0L) * (k + 3)) * upper;
  }
  // Y_k(n)
  const ld y = -nu / (k + 1) * (1.0L / (k + 1) + 1.0L / (k + 2)) *
                   poly_trig_integral_ld(k + 1, n, TrigKind::sine) +
               sign_pow(n) * std::pow(kTwoPiL, ld(k + 1)) / ((k + 1.0L) * (k + 1)) *
                   ((k + 1) * l2p - 1);
  return y - nu * nu / ((k + 1.0L) * (k + 2)) * upper;
}

double recursion_gain(int freq, int k_bottom, int k_top, int shift) {
  ld prod = 1;
  ld worst = 1;
  for (int k = k_top - 2; k >= k_bottom; k -= 2) {
    prod *= step_factor(freq, k, shift);
    worst = std::max(worst, prod);
  }
  return static_cast<double>(worst);
}

long double log_power_moment_ld(int k, int n, TrigKind kind, int lift_threshold) {
  if (k >= lift_threshold) return log_power_moment_direct(k, n, kind);
  const int shift = kind == TrigKind::sine ? 2 : 1;
  int top = lift_threshold;
  if ((top - k) % 2 != 0) ++top;
  if (recursion_gain(n, k, top, shift) > kMaxRecursionGain)
    return log_power_moment_direct(k, n, kind);
  // the seed grows like (2 pi)^top, so its rounding is tracked through the steps
  const ld eps = 64 * std::numeric_limits<ld>::epsilon();
  const int p_top = top + shift - 1;
  ld v = log_power_moment_direct(top, n, kind);
  ld err = eps * std::pow(kTwoPiL, ld(p_top + 1)) * std::log(kTwoPiL) / (p_top + 1);
  for (int j = top - 2; j >= k; j -= 2) {
    const ld f = step_factor(n, j, shift);
    const ld next = log_power_moment_step(j, n, kind, v);
    err = f * err + eps * (std::abs(next) + 2 * f * std::abs(v));
    v = next;
  }
  if (err > kRecursionTolerance * std::max(std::abs(v), 1.0L))
    return log_power_moment_direct(k, n, kind);
  return v;
}

double log_power_moment(int k, int n, TrigKind kind, int lift_threshold) {
  return static_cast<double>(log_power_moment_ld(k, n, kind, lift_threshold));
}

// int int g(t - s) trig(n s/2) trig(m t/2) for even g, through the difference
// variable; g may carry a logarithmic singularity at 0.
template <class G>
ld difference_integral(G&& g, int m, int n, TrigKind kind) {
  const ld mu = m / 2.0L, nu = n / 2.0L;
  const ld ph = phase_of(kind);
  const GradedRule r = graded_rule(mu + nu);
  ld sum = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const Overlap o = overlap(r.x[i], nu, ph, mu, ph);
    sum += r.w[i] * g(r.x[i]) * (o.plus + o.minus);
  }
  return sum;
}

long double log_double_moment_direct(int k, int m, int n, TrigKind kind) {
  if (k < 1 || k % 2 == 0) throw Error(ErrorKind::domain, "log_double_moment needs odd k >= 1");
  if ((m + n) % 2 != 0) return 0.0L;
  if (k - 1 > kMaxPolyOrder)
    throw Error(ErrorKind::order_too_high, "log_double_moment order " + std::to_string(k));
  return log_double_exact(k, m, n, kind);
}

std::vector<long double> log_double_moments_direct(int jmax, int m, int n, TrigKind kind) {
  std::vector<long double> out(jmax + 1, 0.0L);
  if ((m + n) % 2 != 0) return out;
  for (int j = 0; j <= jmax; ++j) out[j] = log_double_moment_direct(2 * j + 1, m, n, kind);
  return out;
}

long double bessel_log_moment(double c, int m, int n, TrigKind kind) {
  if ((m + n) % 2 != 0) return 0.0L;
  return difference_integral(
      [c](ld rho) { return ld(special::bessel_j0(c * static_cast<double>(rho))) * std::log(rho); },
      m, n, kind);
}

double log_double_moment_tensor(int k, int m, int n, TrigKind kind, int panels, int q) {
  const GaussRule rule = gauss_rule(q);
  auto trig = [kind](double x) { return kind == TrigKind::sine ? std::sin(x) : std::cos(x); };
  const QuadPoints p = composite_points(0.0, 2.0 * kPi, panels, rule);
  ld sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = p.x[i];
    ld row = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double t = p.x[j];
      const double r = t - s;
      if (r == 0.0) continue;
      row += p.w[j] * std::pow(r, k - 1) * std::log(std::abs(r)) * trig(0.5 * m * t);
    }
    sum += p.w[i] * row * trig(0.5 * n * s);
  }
  return static_cast<double>(sum);
}

long double log_double_moment_step(int k, int m, int n, TrigKind kind, long double upper,
                                   long double log_moment) {
  const ld mu = m / 2.0L;
  const ld parity = sign_pow(m + n) - sign_pow(k);
  const ld kk = k;
  if (kind == TrigKind::sine) {
    const ld t1 = double_poly_trig_ld(k + 1, m, n, TrigKind::sine, TrigKind::sine);
    const ld t2 = double_poly_trig_ld(k, m, n, TrigKind::sine, TrigKind::cosine);
    const ld t3 = poly_trig_integral_ld(k + 1, n, TrigKind::sine);
    return -mu * mu / (kk * (kk + 1)) * upper + mu * mu / (kk * (kk + 1) * (kk + 1)) * t1 +
           mu / (kk * kk) * t2 - mu / (kk * (kk + 1) * (kk + 1)) * parity * t3 +
           mu / (kk * (kk + 1)) * parity * log_moment;
  }
  const ld u1 = double_poly_trig_ld(k + 1, m, n, TrigKind::cosine, TrigKind::cosine);
  const ld u2 = double_poly_trig_ld(k, m, n, TrigKind::cosine, TrigKind::sine);
  const ld u3 = poly_trig_integral_ld(k, n, TrigKind::cosine);
  return -mu * mu / (kk * (kk + 1)) * upper + mu * mu / (kk * (kk + 1) * (kk + 1)) * u1 -
         mu / (kk * kk) * u2 - parity / (kk * kk) * u3 + parity / kk * log_moment;
}

bool uses_recursion(int m, int n, TrigKind kind, int lift_threshold) {
  (void)kind;
  (void)lift_threshold;
  return std::min(m, n) <= kMaxRecursionFrequency;
}

std::vector<long double> log_double_moments(int jmax, int m, int n, TrigKind kind,
                                            int lift_threshold) {
  std::vector<long double> out(jmax + 1, 0.0L);
  if ((m + n) % 2 != 0) return out;
  if (kind == TrigKind::sine && (m == 0 || n == 0)) return out;
  const int lo = std::min(m, n), hi = std::max(m, n);
  const int top = odd_ceil(lift_threshold);
  if (2 * jmax + 1 >= top || !uses_recursion(lo, hi, kind, lift_threshold))
    return log_double_moments_direct(jmax, lo, hi, kind);
  // recursion frequency lo, one-sided moments at hi
  ld v = log_double_moment_direct(top, lo, hi, kind);
  for (int k = top - 2; k >= 1; k -= 2) {
    const ld lm = log_power_moment_ld(k, hi, kind, lift_threshold);
    v = log_double_moment_step(k, lo, hi, kind, v, lm);
    if ((k - 1) / 2 <= jmax) out[(k - 1) / 2] = v;
  }
  return out;
}

double log_double_moment(int k, int m, int n, TrigKind kind, const QuadratureConfig& cfg) {
  if (k < 1 || k % 2 == 0) throw Error(ErrorKind::domain, "log_double_moment needs odd k >= 1");
  if ((m + n) % 2 != 0) return 0.0;
  if (k >= cfg.lift_threshold)
    return log_double_moment_tensor(k, m, n, kind, cfg.panels, cfg.points_per_panel);
  return static_cast<double>(
      log_double_moments((k - 1) / 2, m, n, kind, cfg.lift_threshold)[(k - 1) / 2]);
}

}  // namespace cavity
