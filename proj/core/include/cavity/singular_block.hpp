#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "cavity/model.hpp"

namespace cavity {

/// Smallest K >= requested with (c pi)^{2K+2} / ((K+1)!)^2 < 1e-16.
int effective_bessel_K(double c, int requested);

/// Largest k with 2k + 1 < lift_threshold: the Bessel terms handled by
/// the log moments; higher terms stay in the tensor-Gauss integrand.
int recursion_terms(int lift_threshold);

/// Bound on sum_k (c pi)^{2k} / (k!)^2 above which the polynomial split of J0
/// loses too many digits; such blocks integrate J0 ln r directly.
inline constexpr double kMaxSplitGrowth = 1e3;
bool split_is_stable(double c, int k_used);

/// int_0^{2pi} int_0^{2pi} trig(n s/2) H0(c |s - t|) trig(m t/2) ds dt for
/// modes 0..N, exactly 0 for m + n odd.
struct SingularBlockTable {
  TrigKind kind = TrigKind::sine;
  double c = 1.0;
  int N = 0;
  int bessel_K = 0;
  bool split = true;
  Eigen::MatrixXcd values;

  Complex operator()(int m, int n) const { return values(m, n); }
};

SingularBlockTable singular_block_table(int N, KernelScale c, TrigKind kind,
                                        const QuadratureConfig& cfg);

Complex singular_block(int m, int n, KernelScale c, TrigKind kind, const QuadratureConfig& cfg);

/// Tables keyed by (kind, c to 15 significant digits, quadrature settings);
/// a table for a larger N serves smaller requests. Population is guarded
/// by a mutex; returned references stay valid for the cache lifetime.
class SingularBlockCache {
 public:
  const SingularBlockTable& get(int N, KernelScale c, TrigKind kind, const QuadratureConfig& cfg);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, double, int, int, int, int>;
  mutable std::mutex mutex_;
  std::map<Key, std::vector<std::unique_ptr<SingularBlockTable>>> tables_;
};

}  // namespace cavity
