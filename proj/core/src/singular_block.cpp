#include "cavity/singular_block.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "cavity/gauss.hpp"
#include "cavity/moments.hpp"
#include "cavity/special_functions.hpp"

namespace cavity {
namespace {

double round_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

// sum_{k<=K} (-1)^k (c/2)^{2k} / (k!)^2
std::vector<double> bessel_coefficients(double c, int K) {
  std::vector<double> out(K + 1);
  double v = 1.0;
  const double q = 0.25 * c * c;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) v *= -q / (double(k) * k);
    out[k] = v;
  }
  return out;
}

}  // namespace

int effective_bessel_K(double c, int requested) {
  int K = std::max(requested, 0);
  for (;; ++K) {
    // (c pi)^{2K+2} / ((K+1)!)^2 in log form
    const double lg = (2.0 * K + 2) * std::log(c * kPi) - 2.0 * std::lgamma(K + 2.0);
    if (lg < std::log(1e-16) || K > 200) return K;
  }
}

int recursion_terms(int lift_threshold) { return (lift_threshold - 2) / 2; }

bool split_is_stable(double c, int k_used) {
  double term = 1.0, sum = 1.0;
  const double q = c * kPi;
  for (int k = 1; k <= k_used; ++k) {
    term *= q * q / (double(k) * k);
    sum += term;
  }
  return sum <= kMaxSplitGrowth;
}

SingularBlockTable singular_block_table(int N, KernelScale scale, TrigKind kind,
                                        const QuadratureConfig& cfg) {
  if (N < 0) throw Error(ErrorKind::domain, "mode count must be non-negative");
  const double c = scale.value();
  SingularBlockTable table;
  table.kind = kind;
  table.c = c;
  table.N = N;
  table.bessel_K = effective_bessel_K(c, cfg.bessel_K);
  table.split = split_is_stable(c, std::min(table.bessel_K, recursion_terms(cfg.lift_threshold)));
  const int k_used =
      table.split ? std::min(table.bessel_K, recursion_terms(cfg.lift_threshold)) : -1;

  // Smooth part: H0 minus the first k_used log terms, on the tensor grid.
  // The kernel depends on |x_i - x_j| only through (panel offset, a, b).
  const GaussRule rule = gauss_rule(cfg.points_per_panel);
  const int P = cfg.panels;
  const int q = cfg.points_per_panel;
  const double h = 2.0 * kPi / P;
  const QuadPoints pts = composite_points(0.0, 2.0 * kPi, P, rule);
  const int Q = static_cast<int>(pts.size());
  auto kernel = [&](double r) -> Complex {
    const Complex reg = special::regularized_kernel(r, scale);
    if (r == 0.0 || k_used < 0) return reg;
    return reg + (2.0 / kPi) * kI * std::log(r) * special::j0_series_remainder(c * r, k_used);
  };
  std::vector<Complex> toeplitz(static_cast<std::size_t>(P) * q * q);
  for (int d = 0; d < P; ++d)
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const double r = std::abs(d * h + 0.5 * h * (rule.nodes[b] - rule.nodes[a]));
        toeplitz[(static_cast<std::size_t>(d) * q + a) * q + b] = kernel(r);
      }
  Eigen::MatrixXcd G(Q, Q);
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) {
      const int pi = i / q, pj = j / q;
      const int a = i % q, b = j % q;
      const Complex v = pj >= pi ? toeplitz[(static_cast<std::size_t>(pj - pi) * q + a) * q + b]
                                 : toeplitz[(static_cast<std::size_t>(pi - pj) * q + b) * q + a];
      G(i, j) = pts.w[i] * pts.w[j] * v;
    }
  Eigen::MatrixXd phi(Q, N + 1);
  for (int i = 0; i < Q; ++i)
    for (int n = 0; n <= N; ++n)
      phi(i, n) = kind == TrigKind::sine ? std::sin(0.5 * n * pts.x[i]) : std::cos(0.5 * n * pts.x[i]);
  const Eigen::MatrixXcd pc = phi.cast<Complex>();
  table.values = pc.transpose() * G * pc;

  // Log part: (2i/pi) sum_k coef_k S_{2k+1} (or P_{2k+1}), or the whole
  // J0 ln r term in the difference variable when the split cancels badly.
  const auto coef = bessel_coefficients(c, std::max(k_used, 0));
  for (int m = 0; m <= N; ++m)
    for (int n = m; n <= N; ++n) {
      if ((m + n) % 2 != 0) {
        table.values(m, n) = table.values(n, m) = 0.0;
        continue;
      }
      long double log_part = 0.0L;
      if (k_used < 0) {
        log_part = bessel_log_moment(c, m, n, kind);
      } else {
        const auto mom = log_double_moments(k_used, m, n, kind, cfg.lift_threshold);
        for (int k = 0; k <= k_used; ++k) log_part += coef[k] * mom[k];
      }
      const Complex smooth = 0.5 * (table.values(m, n) + table.values(n, m));
      table.values(m, n) = table.values(n, m) = smooth + (2.0 / kPi) * kI * static_cast<double>(log_part);
    }
  return table;
}

Complex singular_block(int m, int n, KernelScale c, TrigKind kind, const QuadratureConfig& cfg) {
  if (m < 0 || n < 0) throw Error(ErrorKind::domain, "mode indices must be non-negative");
  if ((m + n) % 2 != 0) return 0.0;
  return singular_block_table(std::max(m, n), c, kind, cfg)(m, n);
}

const SingularBlockTable& SingularBlockCache::get(int N, KernelScale c, TrigKind kind,
                                                  const QuadratureConfig& cfg) {
  const Key key{static_cast<int>(kind), round_sig(c.value(), 15), cfg.panels,
                cfg.points_per_panel, cfg.bessel_K, cfg.lift_threshold};
  std::lock_guard lock(mutex_);
  auto& list = tables_[key];
  for (const auto& t : list)
    if (t->N >= N) return *t;
  list.push_back(std::make_unique<SingularBlockTable>(singular_block_table(N, c, kind, cfg)));
  return *list.back();
}

std::size_t SingularBlockCache::size() const {
  std::lock_guard lock(mutex_);
  return tables_.size();
}

}  // namespace cavity
